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

#include "socdiff/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "socdiff/benchmarks.hpp"
#include "socdiff/error.hpp"

namespace socdiff {
namespace {

void print_row(std::ostream& os, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  os << buf;
}

}  // namespace

Snapshot run_training(const ExperimentConfig& config,
                      const std::filesystem::path& out_dir,
                      std::function<void(const TrainLogRow&)> progress) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Trainer trainer(config.trainer, config.make_graph());
  trainer.set_dump_dir(out_dir);
  if (progress) trainer.set_progress(std::move(progress));
  TrainResult result = trainer.run();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Snapshot snap{config, std::move(result.population)};
  save_snapshot(out_dir, snap, result.log, seconds);
  return snap;
}

std::uint64_t default_eval_seed(const ExperimentConfig& config) {
  return seed_split(config.trainer.seed, "eval");
}

void write_accuracy_csv(std::ostream& os, const AccuracyCurve& curve) {
  print_row(os, "# A1,%.10g\n", curve.a_private);
  print_row(os, "# AN,%.10g\n", curve.a_full);
  os << "t,mean_accuracy,stderr,n_episodes\n";
  for (std::size_t t = 0; t < curve.mean.size(); ++t) {
    print_row(os, "%zu,%.10g,%.10g,%lld\n", t + 1, curve.mean[t],
              curve.std_error[t], curve.episodes);
  }
}

void write_node_sweep_csv(std::ostream& os, std::span<const NodeEfficacy> rows) {
  os << "node_id,beta,delta_accuracy,stderr,n_episodes\n";
  for (const NodeEfficacy& r : rows) {
    print_row(os, "%d,%.10g,%.10g,%.10g,%lld\n", r.node, r.beta,
              r.delta_accuracy, r.std_error, r.episodes);
  }
}

void write_bin_sweep_csv(std::ostream& os, std::span<const BinEfficacy> rows) {
  os << "bin_lo,bin_hi,beta,delta_accuracy,stddev_over_runs,n_episodes\n";
  for (const BinEfficacy& r : rows) {
    print_row(os, "%.10g,%.10g,%.10g,", r.bin_lo, r.bin_hi, r.beta);
    if (r.delta_accuracy) {
      print_row(os, "%.10g,%.10g,", *r.delta_accuracy, *r.stddev_over_runs);
    } else {
      os << ",,";
    }
    print_row(os, "%lld\n", r.episodes);
  }
}

void write_bench_csv(std::ostream& os, double sigma2, int n_agents) {
  os << "sigma2,n_agents,A1,AN\n";
  print_row(os, "%.10g,%d,%.10g,%.10g\n", sigma2, n_agents,
            benchmark_private(sigma2), benchmark_full_info(sigma2, n_agents));
}

}  // namespace socdiff
