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

#ifndef SOCDIFF_TRAINER_HPP_
#define SOCDIFF_TRAINER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "socdiff/attack.hpp"
#include "socdiff/env.hpp"
#include "socdiff/graph.hpp"
#include "socdiff/gru_net.hpp"
#include "socdiff/rng.hpp"

namespace socdiff {

struct TrainerConfig {
  double gamma = 0.95;
  int horizon = 20;
  int n_agents = 10;
  int hidden_dim = 12;
  int rnn_layers = 2;
  double sigma2 = 1.0;
  double epsilon = 0.05;
  double learning_rate = 5e-4;
  long long training_episodes = 50000;
  int episodes_per_update = 1;
  int target_sync_interval = 1000;
  bool aware_training = false;
  double aware_beta = 3.0;
  double aware_attack_prob = 1.0;
  std::uint64_t seed = 1;
  int log_interval = 1000;
  int probe_episodes = 100;

  void validate() const;  // throws ConfigError
};

// A trained (or freshly initialized) set of agents on a network.
struct Population {
  SocialGraph graph;
  std::vector<AgentNet> nets;
};

// Independently initialized networks, one per agent, shaped by |B^i| + 2.
Population init_population(const SocialGraph& graph, const TrainerConfig& cfg);

struct AgentTrajectory {
  std::vector<double> inputs;     // steps x (|B^i| + 2)
  std::vector<int> actions;       // steps
  std::vector<double> utilities;  // steps
};

struct EpisodeTrajectory {
  int theta = 0;
  std::vector<AgentTrajectory> agents;  // empty unless recorded
  std::vector<double> accuracy;         // A_t, one entry per step
  std::vector<std::vector<int>> joint_actions;  // steps x N
};

// Greedy with probability 1 - epsilon, uniform otherwise; ties in the greedy
// branch are broken uniformly. Always consumes exactly two uniforms.
int epsilon_greedy(const std::array<double, kNumActions>& q, double epsilon,
                   Rng& rng);

// Plays `world` to the horizon with every agent acting epsilon-greedily on
// its own recurrent network (hidden states start at zero).
EpisodeTrajectory run_episode(const SocialGraph& graph,
                              std::span<const AgentNet> nets, double epsilon,
                              EpisodeWorld world, Rng& action_rng,
                              bool record = true);

// y_t = u_t + gamma * max_a Q(h'_{t+1}, a; target) for t < T, y_T = u_T.
std::vector<double> dqn_targets(const AgentTrajectory& trajectory,
                                const AgentNet& target_net, double gamma);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

// Sum over every step of every episode of (y - Q(x, a_taken))^2, with its
// gradient. Targets are constants here.
LossAndGrad dqn_loss(const AgentNet& live_net,
                     std::span<const AgentTrajectory* const> trajectories,
                     std::span<const std::vector<double>> targets);

struct TrainLogRow {
  long long episode = 0;
  int agent_id = 0;
  double mean_loss = 0.0;  // per step, averaged over updates in the window
  double probe_a1 = 0.0;
  double probe_at = 0.0;
};

struct TrainResult {
  Population population;
  std::vector<TrainLogRow> log;
};

// Independent deep recurrent Q-learning. Each update collects
// `episodes_per_update` episodes with the live networks, then takes one Adam
// step per agent on that agent's summed DQN loss; target networks are hard
// copies refreshed every `target_sync_interval` updates.
class Trainer {
 public:
  Trainer(const TrainerConfig& cfg, SocialGraph graph);

  const TrainerConfig& config() const { return cfg_; }
  const SocialGraph& graph() const { return graph_; }
  std::span<const AgentNet> live() const { return live_; }
  std::span<const AgentNet> target() const { return target_; }
  long long episodes_done() const { return episodes_; }
  long long updates_done() const { return updates_; }

  // Collects up to one batch (never past training_episodes) and updates.
  // Returns the mean per-step loss of each agent for this batch. Throws
  // NumericalError on a non-finite loss; if `dump_dir` is set the batch is
  // written there first.
  std::vector<double> train_batch();

  // Runs to training_episodes, probing every log_interval episodes.
  TrainResult run();

  void set_dump_dir(std::filesystem::path dir) { dump_dir_ = std::move(dir); }
  // Called after every logged probe (progress reporting).
  void set_progress(std::function<void(const TrainLogRow&)> fn) {
    progress_ = std::move(fn);
  }

 private:
  EpisodeTrajectory collect(long long episode_index) const;
  [[noreturn]] void fail_non_finite(int agent,
                                    std::span<const EpisodeTrajectory> batch);

  TrainerConfig cfg_;
  SocialGraph graph_;
  std::vector<AgentNet> live_;
  std::vector<AgentNet> target_;
  std::vector<AdamState> adam_;
  long long episodes_ = 0;
  long long updates_ = 0;
  std::filesystem::path dump_dir_;
  std::function<void(const TrainLogRow&)> progress_;
};

TrainResult train(const TrainerConfig& cfg, const SocialGraph& graph);
// Same as train() with the adversary present during training: each episode,
// with probability aware_attack_prob, one uniformly chosen agent's signal is
// biased by `beta`.
TrainResult train_aware(TrainerConfig cfg, const SocialGraph& graph,
                        double beta);

// A_t averaged over greedy evaluation episodes.
struct AccuracyCurve {
  std::vector<double> mean;    // per step
  std::vector<double> std_error;  // per step
  long long episodes = 0;
  double a_private = 0.0;      // A^1
  double a_full = 0.0;         // A^N
};

struct EvalOptions {
  long long episodes = 10000;
  double sigma2 = 1.0;
  int horizon = 20;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
};

// Per-episode stream: Rng(seed_split(seed, episode)) draws theta, the
// signals, the attack target, then the action draws.
AccuracyCurve evaluate_accuracy(const Population& pop, const AttackSpec& attack,
                                const EvalOptions& opts);

}  // namespace socdiff

#endif  // SOCDIFF_TRAINER_HPP_
