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

#ifndef SOCDIFF_CONFIG_HPP_
#define SOCDIFF_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socdiff/graph.hpp"
#include "socdiff/trainer.hpp"

namespace socdiff {

// Everything needed to reproduce a run. Parsed from a flat "key = value"
// text file; '#' starts a comment. Unset keys keep their defaults.
struct ExperimentConfig {
  TrainerConfig trainer;
  Topology topology = Topology::kBarabasiAlbert;
  int ba_m = 3;
  std::uint64_t graph_seed = 7;
  long long eval_episodes = 10000;
  std::string output_dir;

  // Assigns one key. Throws ConfigError naming the key on failure.
  void set(std::string_view key, std::string_view value);
  // Ordered (key, value) pairs covering every field; values are printed
  // with round-trip precision so parsing the echo reproduces the config.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string echo() const;

  void validate() const;
  SocialGraph make_graph() const;
};

// Parses config text. Errors carry "<origin>:<line>: <message>".
ExperimentConfig parse_config(std::string_view text,
                              std::string_view origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Names accepted by ExperimentConfig::set.
const std::vector<std::string>& config_keys();

}  // namespace socdiff

#endif  // SOCDIFF_CONFIG_HPP_
