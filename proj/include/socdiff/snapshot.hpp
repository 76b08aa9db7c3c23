// Copyright 2026 The socdiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOCDIFF_SNAPSHOT_HPP_
#define SOCDIFF_SNAPSHOT_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socdiff/config.hpp"
#include "socdiff/trainer.hpp"

namespace socdiff {

// Build/version string recorded in run manifests.
std::string_view version_string();

// 64-bit FNV-1a. Any single-byte change alters the digest.
std::uint64_t fnv1a64(std::span<const char> bytes);
std::uint64_t file_checksum(const std::filesystem::path& path);

// A trained population plus the configuration that produced it.
struct Snapshot {
  ExperimentConfig config;
  Population population;
};

// Directory layout:
//   config.txt           configuration echo
//   graph.txt            edge list ("topology n [ba_m] [seed]" header)
//   params/manifest.txt  "agent_id input_dim hidden_dim layers file" rows
//   params/agent_NNN.bin little-endian float64, ParamLayout order
//   train_log.csv        episode,agent_id,mean_loss,probe_A1,probe_AT
//   manifest.json        version, seed, timestamps, file checksums
// Every file except manifest.json is a pure function of its inputs.
// manifest.json is written last, through a temporary file and a rename.
void save_snapshot(const std::filesystem::path& dir, const Snapshot& snap,
                   std::span<const TrainLogRow> log, double wall_clock_seconds);

// Verifies every checksum in manifest.json before parsing anything; throws
// SnapshotError on a mismatch or a missing file.
Snapshot load_snapshot(const std::filesystem::path& dir);

// Lists the files recorded in manifest.json whose checksum no longer
// matches (empty when the snapshot is intact).
std::vector<std::string> verify_snapshot(const std::filesystem::path& dir);

}  // namespace socdiff

#endif  // SOCDIFF_SNAPSHOT_HPP_
