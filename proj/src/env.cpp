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

#include "socdiff/env.hpp"

#include <cmath>
#include <string>

#include "socdiff/error.hpp"

namespace socdiff {

EpisodeWorld EpisodeWorld::sample(const SocialGraph& graph, double sigma2,
                                  int horizon, Rng& rng) {
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  const int theta = rng.bernoulli(0.5) ? 1 : 0;
  const double sd = std::sqrt(sigma2);
  std::vector<double> s(graph.n_agents());
  for (double& v : s) v = rng.normal(theta, sd);
  return EpisodeWorld(theta, std::move(s), sigma2, horizon);
}

EpisodeWorld::EpisodeWorld(int theta, std::vector<double> pre_attack_signals,
                           double sigma2, int horizon,
                           std::optional<Attack> attack)
    : theta_(theta),
      sigma2_(sigma2),
      horizon_(horizon),
      pre_signals_(std::move(pre_attack_signals)),
      attack_(attack) {
  if (theta != 0 && theta != 1) throw UsageError("theta must be 0 or 1");
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  signals_ = pre_signals_;
  last_actions_.assign(pre_signals_.size(), kNoActionSentinel);
  if (attack_) {
    if (attack_->target < 0 || attack_->target >= n_agents()) {
      throw UsageError("attack target " + std::to_string(attack_->target) +
                       " out of range");
    }
    if (attack_->budget < 0.0) throw ConfigError("attack budget must be >= 0");
    signals_[attack_->target] =
        biased_signal(pre_signals_[attack_->target], theta_, attack_->budget);
  }
}

EpisodeWorld EpisodeWorld::with_attack(std::optional<Attack> attack) const {
  return EpisodeWorld(theta_, pre_signals_, sigma2_, horizon_, attack);
}

void EpisodeWorld::observe(const SocialGraph& graph, int agent,
                           std::span<double> out) const {
  if (agent < 0 || agent >= n_agents()) {
    throw UsageError("agent index " + std::to_string(agent) + " out of range");
  }
  const auto nb = graph.neighborhood(agent);
  if (out.size() != nb.size() + 2) {
    throw DimensionError("observation buffer has wrong length");
  }
  out[0] = signals_[agent];
  out[1] = last_actions_[agent];
  for (std::size_t k = 0; k < nb.size(); ++k) out[k + 2] = last_actions_[nb[k]];
}

std::vector<double> EpisodeWorld::observe(const SocialGraph& graph,
                                          int agent) const {
  std::vector<double> out(graph.neighborhood(agent).size() + 2);
  observe(graph, agent, out);
  return out;
}

std::vector<double> EpisodeWorld::step(std::span<const int> actions) {
  if (finished()) throw UsageError("episode already finished");
  if (static_cast<int>(actions.size()) != n_agents()) {
    throw DimensionError("one action per agent required");
  }
  std::vector<double> u(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] != 0 && actions[i] != 1) {
      throw UsageError("actions must be 0 or 1");
    }
    u[i] = actions[i] == theta_ ? 1.0 : 0.0;
    last_actions_[i] = actions[i];
  }
  ++t_;
  return u;
}

double discounted_return(std::span<const double> stage_utilities, double gamma) {
  double total = 0.0;
  double w = gamma;
  for (double u : stage_utilities) {
    total += w * u;
    w *= gamma;
  }
  return total;
}

}  // namespace socdiff
