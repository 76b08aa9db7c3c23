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

#ifndef SOCDIFF_EXPERIMENT_HPP_
#define SOCDIFF_EXPERIMENT_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>

#include "socdiff/adversary.hpp"
#include "socdiff/config.hpp"
#include "socdiff/snapshot.hpp"
#include "socdiff/trainer.hpp"

namespace socdiff {

// Trains per `config` (aware mode when config.trainer.aware_training) and
// writes the snapshot to `out_dir`. A non-finite loss leaves its batch dump
// in `out_dir` and rethrows.
Snapshot run_training(const ExperimentConfig& config,
                      const std::filesystem::path& out_dir,
                      std::function<void(const TrainLogRow&)> progress = {});

// Default evaluation seed of a snapshot: derived from its training seed.
std::uint64_t default_eval_seed(const ExperimentConfig& config);

// "# A1,<v>" and "# AN,<v>" header rows, then
// t,mean_accuracy,stderr,n_episodes.
void write_accuracy_csv(std::ostream& os, const AccuracyCurve& curve);
// node_id,beta,delta_accuracy,stderr,n_episodes
void write_node_sweep_csv(std::ostream& os, std::span<const NodeEfficacy> rows);
// bin_lo,bin_hi,beta,delta_accuracy,stddev_over_runs,n_episodes; empty bins
// leave the two statistics blank.
void write_bin_sweep_csv(std::ostream& os, std::span<const BinEfficacy> rows);
// sigma2,n_agents,A1,AN
void write_bench_csv(std::ostream& os, double sigma2, int n_agents);

}  // namespace socdiff

#endif  // SOCDIFF_EXPERIMENT_HPP_
