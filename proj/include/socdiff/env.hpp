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

#ifndef SOCDIFF_ENV_HPP_
#define SOCDIFF_ENV_HPP_

#include <optional>
#include <span>
#include <vector>

#include "socdiff/graph.hpp"
#include "socdiff/rng.hpp"

namespace socdiff {

// Value placed in every action slot of the first observation, when no
// previous actions exist. Symmetric between the two actions.
inline constexpr double kNoActionSentinel = 0.5;

// One biased agent for the whole episode.
struct Attack {
  int target = 0;
  double budget = 0.0;
};

// Adds beta * (1 - 2 theta) to a signal: pushes it away from the truth.
constexpr double biased_signal(double signal, int theta, double budget) {
  return signal + budget * (1 - 2 * theta);
}

// State of one episode of the social-learning game.
class EpisodeWorld {
 public:
  // Draws theta ~ Bernoulli(1/2) and s^i ~ N(theta, sigma2) independently.
  // Draw order: theta first, then the N signals in agent order.
  static EpisodeWorld sample(const SocialGraph& graph, double sigma2,
                             int horizon, Rng& rng);

  // Explicit construction for replay and tests. `pre_attack_signals` has one
  // entry per agent.
  EpisodeWorld(int theta, std::vector<double> pre_attack_signals,
               double sigma2, int horizon,
               std::optional<Attack> attack = std::nullopt);

  // Same theta and pre-attack signals, fresh clock, different attack.
  EpisodeWorld with_attack(std::optional<Attack> attack) const;

  int theta() const { return theta_; }
  double sigma2() const { return sigma2_; }
  int horizon() const { return horizon_; }
  // 1-based index of the step about to be played; horizon + 1 once finished.
  int t() const { return t_; }
  bool finished() const { return t_ > horizon_; }
  int n_agents() const { return static_cast<int>(signals_.size()); }
  const std::optional<Attack>& attack() const { return attack_; }

  // Signals as seen by the agents (the target's entry carries the bias).
  std::span<const double> signals() const { return signals_; }
  std::span<const double> pre_attack_signals() const { return pre_signals_; }
  // Previous actions; kNoActionSentinel before the first step.
  std::span<const double> last_actions() const { return last_actions_; }

  // Fills `out` (length |B^i| + 2) with [s^i, a^i_{t-1}, a^j_{t-1} for j in
  // B^i ascending].
  void observe(const SocialGraph& graph, int agent, std::span<double> out) const;
  std::vector<double> observe(const SocialGraph& graph, int agent) const;

  // Plays one step and returns u^i = 1{a^i = theta} for every agent.
  std::vector<double> step(std::span<const int> actions);

 private:
  int theta_;
  double sigma2_;
  int horizon_;
  int t_ = 1;
  std::vector<double> pre_signals_;
  std::vector<double> signals_;
  std::vector<double> last_actions_;
  std::optional<Attack> attack_;
};

// U = sum_{t=1..T} gamma^t u_t (the first step is weighted by gamma).
double discounted_return(std::span<const double> stage_utilities, double gamma);

}  // namespace socdiff

#endif  // SOCDIFF_ENV_HPP_
