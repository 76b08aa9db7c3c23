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

#ifndef SOCDIFF_BENCHMARKS_HPP_
#define SOCDIFF_BENCHMARKS_HPP_

#include <span>

#include "socdiff/rng.hpp"

namespace socdiff {

// Fraction of agents whose action equals theta.
double accuracy(std::span<const int> joint_actions, int theta);

// 1 if s > 0.5, 0 if s < 0.5, a fair coin at exactly 0.5.
int private_optimal_action(double s, Rng& rng);

// Standard normal CDF, computed through erfc (W. J. Cody's rational
// Chebyshev approximations, as shipped by the C library).
double normal_cdf(double x);

// Accuracy of the threshold rule on one's own signal: Phi(0.5 / sigma).
double benchmark_private(double sigma2);

// Accuracy of the threshold rule on the population-mean signal:
// Phi(0.5 sqrt(N) / sigma).
double benchmark_full_info(double sigma2, int n_agents);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Simulates the two threshold policies under theta = `theta`.
MonteCarloEstimate monte_carlo_private(double sigma2, long long samples,
                                       int theta, Rng& rng);
MonteCarloEstimate monte_carlo_full_info(double sigma2, int n_agents,
                                         long long samples, int theta,
                                         Rng& rng);

}  // namespace socdiff

#endif  // SOCDIFF_BENCHMARKS_HPP_
