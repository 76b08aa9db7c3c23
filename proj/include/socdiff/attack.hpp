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

#ifndef SOCDIFF_ATTACK_HPP_
#define SOCDIFF_ATTACK_HPP_

#include <optional>
#include <string>
#include <vector>

#include "socdiff/env.hpp"
#include "socdiff/rng.hpp"

namespace socdiff {

enum class Targeting {
  kNone,
  kUniformRandom,
  kFixedNode,
  kTargetSignalBins,
  kNeighborSignalBins,
};

inline const std::vector<double> kDefaultSignalBinEdges{0.0, 0.5, 1.0, 2.0,
                                                        4.0};

// What the adversary does in each episode. The binned targetings pick the
// target uniformly, like kUniformRandom; the bins only classify episodes.
struct AttackSpec {
  double budget = 0.0;
  Targeting targeting = Targeting::kNone;
  int node = 0;                    // kFixedNode only
  std::vector<double> bin_edges;   // binned targetings only

  static AttackSpec none() { return {}; }
  static AttackSpec uniform(double beta) {
    return {beta, Targeting::kUniformRandom, 0, {}};
  }
  static AttackSpec fixed(int node, double beta) {
    return {beta, Targeting::kFixedNode, node, {}};
  }

  // Throws ConfigError if the budget is negative, the node is out of range
  // or the bin edges are not strictly increasing.
  void validate(int n_agents) const;
};

// Resolves the episode's attack. Consumes exactly one draw from `rng`
// regardless of the targeting so paired runs stay aligned.
std::optional<Attack> choose_attack(const AttackSpec& spec, int n_agents,
                                    Rng& rng);

}  // namespace socdiff

#endif  // SOCDIFF_ATTACK_HPP_
