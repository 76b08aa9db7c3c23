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

#ifndef SOCDIFF_ADVERSARY_HPP_
#define SOCDIFF_ADVERSARY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "socdiff/attack.hpp"
#include "socdiff/trainer.hpp"

namespace socdiff {

// Log of the N(mean, sigma2) density at x.
double normal_log_pdf(double x, double mean, double sigma2);

// |log f(s | 0, sigma2) - log f(s | 1, sigma2)|, evaluated through the two
// log-densities. Equals |1 - 2s| / (2 sigma2).
double signal_strength(double s, double sigma2);

// Index of the half-open bin [edges[k], edges[k+1]) holding z. Values at or
// above the last edge go to the top bin; values below the first edge have
// no bin.
std::optional<int> bin_index(double z, std::span<const double> edges);

struct SweepOptions {
  long long episodes = 10000;  // per node, or per run for binned sweeps
  double sigma2 = 1.0;
  int horizon = 20;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
  int runs = 10;  // independent evaluation seeds (binned sweeps only)
};

struct NodeEfficacy {
  int node = 0;
  double beta = 0.0;
  double delta_accuracy = 0.0;  // mean over episodes of (1/T) sum_t (A_t - A_t(i))
  double std_error = 0.0;
  long long episodes = 0;
};

// Attacks every node in turn. Episode e is the same draw of theta and
// signals for the baseline and for every attacked node, and the action
// draws are replayed identically, so beta = 0 gives exactly zero.
std::vector<NodeEfficacy> node_sweep(const Population& pop, double beta,
                                     const SweepOptions& opts);

enum class BinBy { kTargetSignal, kNeighborSignal };

struct BinEfficacy {
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double beta = 0.0;
  // Mean over runs of the per-run efficacy; empty when no run saw the bin.
  std::optional<double> delta_accuracy;
  std::optional<double> stddev_over_runs;
  long long episodes = 0;  // total over runs
};

// One uniformly chosen target per episode. The episode is classified by the
// target's pre-bias signal strength (kTargetSignal) or by the mean strength
// over the target's neighborhood (kNeighborSignal), and the paired
// no-attack/attack accuracy gap is averaged within each bin. Rows are
// ordered by bin, then by beta in the given order.
std::vector<BinEfficacy> signal_bin_sweep(const Population& pop,
                                          std::span<const double> betas,
                                          std::span<const double> bin_edges,
                                          BinBy by, const SweepOptions& opts);

}  // namespace socdiff

#endif  // SOCDIFF_ADVERSARY_HPP_
