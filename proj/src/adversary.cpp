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

#include "socdiff/adversary.hpp"

#include <cmath>
#include <numbers>

#include "socdiff/error.hpp"
#include "socdiff/parallel.hpp"

namespace socdiff {

double normal_log_pdf(double x, double mean, double sigma2) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * sigma2) - d * d / (2.0 * sigma2);
}

double signal_strength(double s, double sigma2) {
  if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
  return std::abs(normal_log_pdf(s, 0.0, sigma2) - normal_log_pdf(s, 1.0, sigma2));
}

std::optional<int> bin_index(double z, std::span<const double> edges) {
  if (edges.size() < 2 || z < edges.front()) return std::nullopt;
  const int bins = static_cast<int>(edges.size()) - 1;
  for (int k = 0; k < bins; ++k) {
    if (z < edges[k + 1]) return k;
  }
  return bins - 1;
}

namespace {

struct PairedSetup {
  EpisodeWorld world;
  int drawn_target;
  Rng action_rng;
};

// Same draw order as evaluate_accuracy: theta, signals, target, actions.
PairedSetup paired_setup(const Population& pop, const SweepOptions& opts,
                         std::uint64_t episode_seed) {
  Rng rng(episode_seed);
  EpisodeWorld world =
      EpisodeWorld::sample(pop.graph, opts.sigma2, opts.horizon, rng);
  const auto chosen = choose_attack(AttackSpec::uniform(0.0),
                                    pop.graph.n_agents(), rng);
  return {std::move(world), chosen->target, rng};
}

std::vector<double> play(const Population& pop, const SweepOptions& opts,
                         const PairedSetup& setup,
                         std::optional<Attack> attack) {
  Rng rng = setup.action_rng;
  return run_episode(pop.graph, pop.nets, opts.epsilon,
                     setup.world.with_attack(attack), rng, false)
      .accuracy;
}

double mean_gap(std::span<const double> base, std::span<const double> hit) {
  double sum = 0.0;
  for (std::size_t t = 0; t < base.size(); ++t) sum += base[t] - hit[t];
  return sum / static_cast<double>(base.size());
}

}  // namespace

std::vector<NodeEfficacy> node_sweep(const Population& pop, double beta,
                                     const SweepOptions& opts) {
  if (!(beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (opts.episodes < 1) throw ConfigError("need at least one episode");
  const int n = pop.graph.n_agents();
  // gaps[e][i]: efficacy of attacking node i in episode e.
  std::vector<std::vector<double>> gaps(opts.episodes);
  parallel_for(gaps.size(), [&](std::size_t e) {
    const PairedSetup setup =
        paired_setup(pop, opts, seed_split(opts.seed, static_cast<std::uint64_t>(e)));
    const std::vector<double> base = play(pop, opts, setup, std::nullopt);
    gaps[e].resize(n);
    for (int i = 0; i < n; ++i) {
      gaps[e][i] = mean_gap(base, play(pop, opts, setup, Attack{i, beta}));
    }
  });
  std::vector<NodeEfficacy> rows;
  const double count = static_cast<double>(opts.episodes);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0, sq = 0.0;
    for (const auto& g : gaps) {
      sum += g[i];
      sq += g[i] * g[i];
    }
    const double mean = sum / count;
    const double var =
        opts.episodes > 1 ? std::max(0.0, (sq - count * mean * mean) / (count - 1.0))
                          : 0.0;
    rows.push_back({i, beta, mean, std::sqrt(var / count), opts.episodes});
  }
  return rows;
}

std::vector<BinEfficacy> signal_bin_sweep(const Population& pop,
                                          std::span<const double> betas,
                                          std::span<const double> bin_edges,
                                          BinBy by, const SweepOptions& opts) {
  AttackSpec check{0.0, Targeting::kTargetSignalBins, 0,
                   std::vector<double>(bin_edges.begin(), bin_edges.end())};
  check.validate(pop.graph.n_agents());
  for (double b : betas) {
    if (!(b >= 0.0)) throw ConfigError("beta must be >= 0");
  }
  if (opts.episodes < 1 || opts.runs < 1) {
    throw ConfigError("need at least one episode and one run");
  }
  const int bins = static_cast<int>(bin_edges.size()) - 1;
  const int nb = static_cast<int>(betas.size());

  struct EpisodeResult {
    int bin = -1;
    std::vector<double> gap;  // per beta
  };
  // sums[run][bin * nb + b], counts[run][bin]
  std::vector<std::vector<double>> sums(opts.runs,
                                        std::vector<double>(bins * nb, 0.0));
  std::vector<std::vector<long long>> counts(opts.runs,
                                             std::vector<long long>(bins, 0));
  for (int run = 0; run < opts.runs; ++run) {
    const std::uint64_t run_seed =
        seed_split(seed_split(opts.seed, "bin-sweep-run"), static_cast<std::uint64_t>(run));
    std::vector<EpisodeResult> results(opts.episodes);
    parallel_for(results.size(), [&](std::size_t e) {
      const PairedSetup setup = paired_setup(
          pop, opts, seed_split(run_seed, static_cast<std::uint64_t>(e)));
      const int target = setup.drawn_target;
      double z = 0.0;
      if (by == BinBy::kTargetSignal) {
        z = signal_strength(setup.world.pre_attack_signals()[target], opts.sigma2);
      } else {
        const auto nbh = pop.graph.neighborhood(target);
        if (nbh.empty()) return;
        for (int j : nbh) {
          z += signal_strength(setup.world.pre_attack_signals()[j], opts.sigma2);
        }
        z /= static_cast<double>(nbh.size());
      }
      const auto bin = bin_index(z, bin_edges);
      if (!bin) return;
      EpisodeResult& r = results[e];
      r.bin = *bin;
      const std::vector<double> base = play(pop, opts, setup, std::nullopt);
      r.gap.resize(nb);
      for (int b = 0; b < nb; ++b) {
        r.gap[b] = mean_gap(base, play(pop, opts, setup, Attack{target, betas[b]}));
      }
    });
    for (const EpisodeResult& r : results) {
      if (r.bin < 0) continue;
      ++counts[run][r.bin];
      for (int b = 0; b < nb; ++b) sums[run][r.bin * nb + b] += r.gap[b];
    }
  }

  std::vector<BinEfficacy> rows;
  for (int k = 0; k < bins; ++k) {
    for (int b = 0; b < nb; ++b) {
      BinEfficacy row;
      row.bin_lo = bin_edges[k];
      row.bin_hi = bin_edges[k + 1];
      row.beta = betas[b];
      std::vector<double> per_run;
      for (int run = 0; run < opts.runs; ++run) {
        row.episodes += counts[run][k];
        if (counts[run][k] > 0) {
          per_run.push_back(sums[run][k * nb + b] /
                            static_cast<double>(counts[run][k]));
        }
      }
      if (!per_run.empty()) {
        double mean = 0.0;
        for (double v : per_run) mean += v;
        mean /= static_cast<double>(per_run.size());
        double var = 0.0;
        for (double v : per_run) var += (v - mean) * (v - mean);
        var = per_run.size() > 1 ? var / static_cast<double>(per_run.size() - 1) : 0.0;
        row.delta_accuracy = mean;
        row.stddev_over_runs = std::sqrt(var);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace socdiff
