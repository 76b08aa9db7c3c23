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

#include "socdiff/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "socdiff/benchmarks.hpp"
#include "socdiff/error.hpp"
#include "socdiff/parallel.hpp"

namespace socdiff {

void TrainerConfig::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
  require(horizon >= 1, "horizon must be at least 1");
  require(n_agents >= 2, "n_agents must be at least 2");
  require(hidden_dim >= 1, "hidden_dim must be positive");
  require(rnn_layers >= 1, "rnn_layers must be positive");
  require(sigma2 > 0.0, "sigma2 must be positive");
  require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must lie in [0, 1]");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(training_episodes >= 0, "training_episodes must be >= 0");
  require(episodes_per_update >= 1, "episodes_per_update must be >= 1");
  require(target_sync_interval >= 1, "target_sync_interval must be >= 1");
  require(aware_beta >= 0.0, "aware_beta must be >= 0");
  require(aware_attack_prob >= 0.0 && aware_attack_prob <= 1.0,
          "aware_attack_prob must lie in [0, 1]");
  require(log_interval >= 1, "log_interval must be >= 1");
  require(probe_episodes >= 1, "probe_episodes must be >= 1");
}

Population init_population(const SocialGraph& graph, const TrainerConfig& cfg) {
  if (graph.n_agents() != cfg.n_agents) {
    throw ConfigError("graph has " + std::to_string(graph.n_agents()) +
                      " agents but config asks for " +
                      std::to_string(cfg.n_agents));
  }
  Population pop{graph, {}};
  const std::uint64_t init_seed = seed_split(cfg.seed, "init");
  for (int i = 0; i < graph.n_agents(); ++i) {
    Rng rng(seed_split(init_seed, static_cast<std::uint64_t>(i)));
    pop.nets.push_back(init_params(
        NetShape{graph.input_dim(i), cfg.hidden_dim, cfg.rnn_layers}, rng));
  }
  return pop;
}

int epsilon_greedy(const std::array<double, kNumActions>& q, double epsilon,
                   Rng& rng) {
  const double explore = rng.uniform();
  const double coin = rng.uniform();
  const int random_action = coin < 0.5 ? 0 : 1;
  if (explore < epsilon) return random_action;
  if (q[0] == q[1]) return random_action;
  return q[1] > q[0] ? 1 : 0;
}

EpisodeTrajectory run_episode(const SocialGraph& graph,
                              std::span<const AgentNet> nets, double epsilon,
                              EpisodeWorld world, Rng& action_rng,
                              bool record) {
  const int n = graph.n_agents();
  if (static_cast<int>(nets.size()) != n || world.n_agents() != n) {
    throw DimensionError("run_episode: agent count mismatch");
  }
  const int steps = world.horizon() - world.t() + 1;
  EpisodeTrajectory out;
  out.theta = world.theta();
  out.accuracy.reserve(steps);
  out.joint_actions.reserve(steps);
  if (record) {
    out.agents.resize(n);
    for (int i = 0; i < n; ++i) {
      out.agents[i].inputs.reserve(static_cast<std::size_t>(steps) *
                                   graph.input_dim(i));
      out.agents[i].actions.reserve(steps);
      out.agents[i].utilities.reserve(steps);
    }
  }
  std::vector<HiddenState> hidden;
  hidden.reserve(n);
  for (const AgentNet& net : nets) hidden.push_back(net.zero_state());
  std::vector<double> obs;
  std::vector<int> actions(n);
  while (!world.finished()) {
    for (int i = 0; i < n; ++i) {
      obs.resize(graph.input_dim(i));
      world.observe(graph, i, obs);
      const auto q = nets[i].forward(hidden[i], obs);
      actions[i] = epsilon_greedy(q, epsilon, action_rng);
      if (record) {
        auto& in = out.agents[i].inputs;
        in.insert(in.end(), obs.begin(), obs.end());
        out.agents[i].actions.push_back(actions[i]);
      }
    }
    const std::vector<double> u = world.step(actions);
    if (record) {
      for (int i = 0; i < n; ++i) out.agents[i].utilities.push_back(u[i]);
    }
    out.accuracy.push_back(accuracy(actions, out.theta));
    out.joint_actions.push_back(actions);
  }
  return out;
}

std::vector<double> dqn_targets(const AgentTrajectory& trajectory,
                                const AgentNet& target_net, double gamma) {
  const ForwardTape tape = unroll(target_net, trajectory.inputs);
  const int steps = tape.steps;
  if (static_cast<int>(trajectory.utilities.size()) != steps) {
    throw DimensionError("dqn_targets: utilities and inputs disagree");
  }
  std::vector<double> y(steps);
  for (int t = 0; t < steps; ++t) {
    y[t] = trajectory.utilities[t];
    if (t + 1 < steps) {
      const double* q_next = tape.q.data() + (t + 1) * kNumActions;
      y[t] += gamma * std::max(q_next[0], q_next[1]);
    }
  }
  return y;
}

LossAndGrad dqn_loss(const AgentNet& live_net,
                     std::span<const AgentTrajectory* const> trajectories,
                     std::span<const std::vector<double>> targets) {
  if (trajectories.size() != targets.size()) {
    throw DimensionError("dqn_loss: one target vector per trajectory");
  }
  LossAndGrad out;
  out.grad.assign(live_net.layout().size(), 0.0);
  std::vector<double> dq;
  for (std::size_t e = 0; e < trajectories.size(); ++e) {
    const AgentTrajectory& tr = *trajectories[e];
    const std::vector<double>& y = targets[e];
    const ForwardTape tape = unroll(live_net, tr.inputs);
    if (y.size() != static_cast<std::size_t>(tape.steps) ||
        tr.actions.size() != y.size()) {
      throw DimensionError("dqn_loss: targets, actions and steps disagree");
    }
    dq.assign(static_cast<std::size_t>(tape.steps) * kNumActions, 0.0);
    for (int t = 0; t < tape.steps; ++t) {
      const int a = tr.actions[t];
      const double err = y[t] - tape.q[t * kNumActions + a];
      out.loss += err * err;
      dq[t * kNumActions + a] = -2.0 * err;
    }
    bptt_gradients(live_net, tr.inputs, tape, dq, out.grad);
  }
  return out;
}

Trainer::Trainer(const TrainerConfig& cfg, SocialGraph graph)
    : cfg_(cfg), graph_(std::move(graph)) {
  cfg_.validate();
  Population pop = init_population(graph_, cfg_);
  live_ = std::move(pop.nets);
  target_ = live_;
  for (const AgentNet& net : live_) adam_.emplace_back(net.layout().size());
}

EpisodeTrajectory Trainer::collect(long long episode_index) const {
  Rng rng(seed_split(seed_split(cfg_.seed, "train"),
                     static_cast<std::uint64_t>(episode_index)));
  EpisodeWorld world =
      EpisodeWorld::sample(graph_, cfg_.sigma2, cfg_.horizon, rng);
  // Drawn in both modes so naive and aware runs share their streams.
  const bool attacked = rng.bernoulli(cfg_.aware_attack_prob);
  const auto attack =
      choose_attack(AttackSpec::uniform(cfg_.aware_beta), cfg_.n_agents, rng);
  if (cfg_.aware_training && attacked) world = world.with_attack(attack);
  return run_episode(graph_, live_, cfg_.epsilon, std::move(world), rng, true);
}

void Trainer::fail_non_finite(int agent,
                              std::span<const EpisodeTrajectory> batch) {
  std::string dump;
  if (!dump_dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dump_dir_, ec);
    const auto path = dump_dir_ / "nonfinite_batch.csv";
    std::ofstream os(path);
    if (os) {
      os.precision(17);
      os << "episode_in_batch,agent_id,t,action,utility,observation\n";
      for (std::size_t e = 0; e < batch.size(); ++e) {
        const AgentTrajectory& tr = batch[e].agents[agent];
        const std::size_t d = graph_.input_dim(agent);
        for (std::size_t t = 0; t < tr.actions.size(); ++t) {
          os << e << ',' << agent << ',' << t + 1 << ',' << tr.actions[t] << ','
             << tr.utilities[t] << ',';
          for (std::size_t k = 0; k < d; ++k) {
            os << (k ? " " : "") << tr.inputs[t * d + k];
          }
          os << '\n';
        }
      }
      dump = path.string();
    }
  }
  throw NumericalError("non-finite loss for agent " + std::to_string(agent) +
                           " after " + std::to_string(episodes_) + " episodes",
                       dump);
}

std::vector<double> Trainer::train_batch() {
  const long long remaining = cfg_.training_episodes - episodes_;
  const int batch_size = static_cast<int>(
      std::min<long long>(cfg_.episodes_per_update, remaining));
  if (batch_size <= 0) return {};

  std::vector<EpisodeTrajectory> batch(batch_size);
  parallel_for(batch.size(), [&](std::size_t e) {
    batch[e] = collect(episodes_ + static_cast<long long>(e));
  });
  episodes_ += batch_size;

  const int n = cfg_.n_agents;
  std::vector<LossAndGrad> results(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    std::vector<const AgentTrajectory*> trs;
    std::vector<std::vector<double>> ys;
    for (const EpisodeTrajectory& ep : batch) {
      trs.push_back(&ep.agents[i]);
      ys.push_back(dqn_targets(ep.agents[i], target_[i], cfg_.gamma));
    }
    results[i] = dqn_loss(live_[i], trs, ys);
  });

  std::vector<double> mean_loss(n);
  const AdamConfig adam{cfg_.learning_rate, 0.9, 0.999, 1e-8};
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(results[i].loss)) fail_non_finite(i, batch);
    adam_update(live_[i].params(), results[i].grad, adam_[i], adam);
    if (!live_[i].all_finite()) fail_non_finite(i, batch);
    mean_loss[i] = results[i].loss / (static_cast<double>(batch_size) * cfg_.horizon);
  }
  ++updates_;
  if (updates_ % cfg_.target_sync_interval == 0) target_ = live_;
  return mean_loss;
}

TrainResult Trainer::run() {
  std::vector<TrainLogRow> log;
  const int n = cfg_.n_agents;
  std::vector<double> loss_sum(n, 0.0);
  long long updates_in_window = 0;
  long long next_log = cfg_.log_interval;
  EvalOptions probe{cfg_.probe_episodes, cfg_.sigma2, cfg_.horizon, 0.0,
                    seed_split(cfg_.seed, "probe")};
  while (episodes_ < cfg_.training_episodes) {
    const std::vector<double> losses = train_batch();
    for (int i = 0; i < n; ++i) loss_sum[i] += losses[i];
    ++updates_in_window;
    if (episodes_ >= next_log || episodes_ == cfg_.training_episodes) {
      const AccuracyCurve curve = evaluate_accuracy(
          Population{graph_, live_}, AttackSpec::none(), probe);
      for (int i = 0; i < n; ++i) {
        TrainLogRow row{episodes_, i, loss_sum[i] / updates_in_window,
                        curve.mean.front(), curve.mean.back()};
        log.push_back(row);
        if (progress_ && i == 0) progress_(row);
      }
      std::fill(loss_sum.begin(), loss_sum.end(), 0.0);
      updates_in_window = 0;
      while (next_log <= episodes_) next_log += cfg_.log_interval;
    }
  }
  return TrainResult{Population{graph_, live_}, std::move(log)};
}

TrainResult train(const TrainerConfig& cfg, const SocialGraph& graph) {
  Trainer trainer(cfg, graph);
  return trainer.run();
}

TrainResult train_aware(TrainerConfig cfg, const SocialGraph& graph,
                        double beta) {
  cfg.aware_training = true;
  cfg.aware_beta = beta;
  return train(cfg, graph);
}

AccuracyCurve evaluate_accuracy(const Population& pop, const AttackSpec& attack,
                                const EvalOptions& opts) {
  if (opts.episodes < 1) throw ConfigError("need at least one episode");
  attack.validate(pop.graph.n_agents());
  const int n = pop.graph.n_agents();
  std::vector<std::vector<double>> per_episode(opts.episodes);
  parallel_for(per_episode.size(), [&](std::size_t e) {
    Rng rng(seed_split(opts.seed, static_cast<std::uint64_t>(e)));
    EpisodeWorld world =
        EpisodeWorld::sample(pop.graph, opts.sigma2, opts.horizon, rng);
    const auto chosen = choose_attack(attack, n, rng);
    if (chosen) world = world.with_attack(chosen);
    per_episode[e] =
        run_episode(pop.graph, pop.nets, opts.epsilon, std::move(world), rng,
                    false)
            .accuracy;
  });
  AccuracyCurve curve;
  curve.episodes = opts.episodes;
  curve.mean.assign(opts.horizon, 0.0);
  curve.std_error.assign(opts.horizon, 0.0);
  std::vector<double> sq(opts.horizon, 0.0);
  for (const auto& acc : per_episode) {
    for (int t = 0; t < opts.horizon; ++t) {
      curve.mean[t] += acc[t];
      sq[t] += acc[t] * acc[t];
    }
  }
  const double count = static_cast<double>(opts.episodes);
  for (int t = 0; t < opts.horizon; ++t) {
    curve.mean[t] /= count;
    const double var =
        opts.episodes > 1
            ? std::max(0.0, (sq[t] - count * curve.mean[t] * curve.mean[t]) /
                                (count - 1.0))
            : 0.0;
    curve.std_error[t] = std::sqrt(var / count);
  }
  curve.a_private = benchmark_private(opts.sigma2);
  curve.a_full = benchmark_full_info(opts.sigma2, n);
  return curve;
}

}  // namespace socdiff
