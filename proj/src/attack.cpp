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

#include "socdiff/attack.hpp"

#include <string>

#include "socdiff/error.hpp"

namespace socdiff {

void AttackSpec::validate(int n_agents) const {
  if (!(budget >= 0.0)) throw ConfigError("attack budget must be >= 0");
  if (targeting == Targeting::kFixedNode && (node < 0 || node >= n_agents)) {
    throw ConfigError("attack node " + std::to_string(node) + " out of range");
  }
  if (targeting == Targeting::kTargetSignalBins ||
      targeting == Targeting::kNeighborSignalBins) {
    if (bin_edges.size() < 2) throw ConfigError("need at least two bin edges");
    for (std::size_t k = 1; k < bin_edges.size(); ++k) {
      if (!(bin_edges[k] > bin_edges[k - 1])) {
        throw ConfigError("bin edges must be strictly increasing");
      }
    }
  }
}

std::optional<Attack> choose_attack(const AttackSpec& spec, int n_agents,
                                    Rng& rng) {
  const int drawn = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_agents)));
  switch (spec.targeting) {
    case Targeting::kNone:
      return std::nullopt;
    case Targeting::kFixedNode:
      return Attack{spec.node, spec.budget};
    case Targeting::kUniformRandom:
    case Targeting::kTargetSignalBins:
    case Targeting::kNeighborSignalBins:
      return Attack{drawn, spec.budget};
  }
  return std::nullopt;
}

}  // namespace socdiff
