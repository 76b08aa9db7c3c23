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

#include "socdiff/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "socdiff/error.hpp"

namespace socdiff {

double accuracy(std::span<const int> joint_actions, int theta) {
  if (joint_actions.empty()) return 0.0;
  int correct = 0;
  for (int a : joint_actions) correct += (a == theta);
  return static_cast<double>(correct) / static_cast<double>(joint_actions.size());
}

int private_optimal_action(double s, Rng& rng) {
  if (s > 0.5) return 1;
  if (s < 0.5) return 0;
  return rng.bernoulli(0.5) ? 1 : 0;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double benchmark_private(double sigma2) {
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  return normal_cdf(0.5 / std::sqrt(sigma2));
}

double benchmark_full_info(double sigma2, int n_agents) {
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  if (n_agents < 1) throw ConfigError("n_agents must be at least 1");
  return normal_cdf(0.5 * std::sqrt(static_cast<double>(n_agents) / sigma2));
}

namespace {

MonteCarloEstimate bernoulli_estimate(long long hits, long long samples) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace

MonteCarloEstimate monte_carlo_private(double sigma2, long long samples,
                                       int theta, Rng& rng) {
  const double sd = std::sqrt(sigma2);
  long long hits = 0;
  for (long long k = 0; k < samples; ++k) {
    hits += private_optimal_action(rng.normal(theta, sd), rng) == theta;
  }
  return bernoulli_estimate(hits, samples);
}

MonteCarloEstimate monte_carlo_full_info(double sigma2, int n_agents,
                                         long long samples, int theta,
                                         Rng& rng) {
  const double sd = std::sqrt(sigma2);
  long long hits = 0;
  for (long long k = 0; k < samples; ++k) {
    double sum = 0.0;
    for (int j = 0; j < n_agents; ++j) sum += rng.normal(theta, sd);
    hits += private_optimal_action(sum / n_agents, rng) == theta;
  }
  return bernoulli_estimate(hits, samples);
}

}  // namespace socdiff
