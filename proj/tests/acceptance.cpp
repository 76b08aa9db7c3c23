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

// Acceptance suite: trains the reference populations (cached under --work),
// evaluates them and prints one PASS/FAIL line per criterion. Exit status is
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "socdiff/adversary.hpp"
#include "socdiff/benchmarks.hpp"
#include "socdiff/error.hpp"
#include "socdiff/experiment.hpp"
#include "socdiff/gru_net.hpp"

namespace fs = std::filesystem;
using namespace socdiff;

namespace {

constexpr double kSigma2 = 1.0;
constexpr int kAgents = 10;
constexpr long long kEvalEpisodes = 10000;
constexpr long long kSweepEpisodes = 10000;
constexpr long long kBinEpisodesPerRun = 5000;
constexpr int kBinRuns = 10;

struct Outcome {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Outcome> outcomes;

void record(int id, bool pass, const std::string& detail) {
  outcomes.push_back({id, pass, detail});
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void log(const std::string& msg) {
  std::fprintf(stderr, "[acceptance] %s\n", msg.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

ExperimentConfig reference_config(Topology topo, bool aware) {
  ExperimentConfig cfg;
  cfg.topology = topo;
  cfg.trainer.n_agents = kAgents;
  cfg.trainer.sigma2 = kSigma2;
  cfg.trainer.aware_training = aware;
  cfg.trainer.aware_beta = 3.0;
  cfg.validate();
  return cfg;
}

// Loads the cached snapshot when it is intact and was produced by the same
// configuration; trains otherwise.
Population snapshot(const fs::path& work, const std::string& name,
                    const ExperimentConfig& cfg) {
  const fs::path dir = work / name;
  if (fs::exists(dir / "manifest.json")) {
    try {
      Snapshot snap = load_snapshot(dir);
      if (snap.config.echo() == cfg.echo()) {
        log("reusing " + dir.string());
        return std::move(snap.population);
      }
    } catch (const SnapshotError& e) {
      log(std::string("cache rejected: ") + e.what());
    }
  }
  fs::remove_all(dir);
  log("training " + name);
  const auto start = std::chrono::steady_clock::now();
  Snapshot snap = run_training(cfg, dir, [&](const TrainLogRow& row) {
    if (row.episode % 10000 == 0) {
      log(fmt("  %s episode %lld probe A1 %.3f AT %.3f", name.c_str(), row.episode,
              row.probe_a1, row.probe_at));
    }
  });
  log(fmt("  %s trained in %.0f s", name.c_str(),
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()));
  return std::move(snap.population);
}

AccuracyCurve evaluate(const Population& pop, const AttackSpec& attack,
                       const ExperimentConfig& cfg) {
  EvalOptions opts;
  opts.episodes = kEvalEpisodes;
  opts.sigma2 = cfg.trainer.sigma2;
  opts.horizon = cfg.trainer.horizon;
  opts.seed = default_eval_seed(cfg);
  return evaluate_accuracy(pop, attack, opts);
}

SweepOptions sweep_options(const ExperimentConfig& cfg, long long episodes) {
  SweepOptions opts;
  opts.episodes = episodes;
  opts.sigma2 = cfg.trainer.sigma2;
  opts.horizon = cfg.trainer.horizon;
  opts.seed = default_eval_seed(cfg);
  opts.runs = kBinRuns;
  return opts;
}

std::string curve_text(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += fmt("%.3f ", x);
  return s;
}

std::string sweep_text(const std::vector<NodeEfficacy>& rows) {
  std::string s;
  for (const auto& r : rows) s += fmt("%d:%.3f ", r.node, r.delta_accuracy);
  return s;
}

// ---------------------------------------------------------------------------

void benchmark_oracles() {
  const double a1 = benchmark_private(kSigma2);
  const double an = benchmark_full_info(kSigma2, kAgents);
  Rng rng(seed_split(2026, "acceptance-benchmarks"));
  bool ok = std::abs(a1 - 0.69146) < 5e-6 && std::abs(an - 0.94307) < 1e-5;
  std::string detail = fmt("A1=%.6f AN=%.6f;", a1, an);
  for (int theta : {0, 1}) {
    const auto p = monte_carlo_private(kSigma2, 1000000, theta, rng);
    const auto f = monte_carlo_full_info(kSigma2, kAgents, 1000000, theta, rng);
    const double zp = (p.mean - a1) / p.std_error, zf = (f.mean - an) / f.std_error;
    ok = ok && std::abs(zp) <= 3.0 && std::abs(zf) <= 3.0;
    detail += fmt(" theta=%d MC A1=%.5f (%.2f se) AN=%.5f (%.2f se);", theta, p.mean, zp,
                  f.mean, zf);
  }
  record(1, ok, detail);
}

void gradient_check() {
  Rng rng(seed_split(2026, "acceptance-gradients"));
  double worst = 0.0;
  std::size_t checked = 0;
  for (int input_dim : {3, 11}) {
    for (int steps : {1, 3, 5, 20}) {
      const NetShape shape{input_dim, 12, 2};
      const AgentNet net = init_params(shape, rng);
      // Loss sum_t c_t . Q_t with random weights c, so dL/dQ = c. Keeping
      // |L| = O(1) holds the finite-difference roundoff well below 1e-4.
      std::vector<double> inputs;
      std::vector<double> dq;
      for (int t = 0; t < steps; ++t) {
        inputs.push_back(rng.normal(rng.below(2), 1.0));
        for (int k = 1; k < input_dim; ++k) {
          inputs.push_back(t == 0 ? kNoActionSentinel : rng.below(2));
        }
        dq.push_back(rng.normal());
        dq.push_back(rng.normal());
      }
      auto loss = [&](const AgentNet& n) {
        const ForwardTape tape = unroll(n, inputs);
        return std::inner_product(dq.begin(), dq.end(), tape.q.begin(), 0.0);
      };
      const auto g = bptt_gradients(net, inputs, dq);
      const auto fd = finite_diff_grad(net, loss, 1e-5);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double denom = std::max(1e-6, std::abs(g[k]) + std::abs(fd[k]));
        worst = std::max(worst, std::abs(g[k] - fd[k]) / denom);
        ++checked;
      }
    }
  }
  record(2, worst <= 1e-4,
         fmt("worst relative error %.2e over %zu parameters (T in {1,3,5,20}, "
             "input dims 3 and 11)", worst, checked));
}

// First step t (1-based) with A_t >= level, or 0 if none.
int first_reach(const std::vector<double>& curve, double level) {
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (curve[t] >= level) return static_cast<int>(t + 1);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"socdiff acceptance suite"};
  std::string work = "acceptance_work";
  app.add_option("--work", work, "Directory for cached snapshots and reports");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const double a1 = benchmark_private(kSigma2);
  const double an = benchmark_full_info(kSigma2, kAgents);

  benchmark_oracles();
  gradient_check();

  struct Named {
    std::string name;
    ExperimentConfig cfg;
    Population pop;
  };
  std::vector<Named> naive;
  for (Topology t : {Topology::kComplete, Topology::kDirectedRing, Topology::kStar,
                     Topology::kBarabasiAlbert}) {
    const auto cfg = reference_config(t, false);
    const std::string name = "naive_" + std::string(topology_name(t));
    naive.push_back({name, cfg, snapshot(work, name, cfg)});
  }
  std::vector<Named> aware;
  for (Topology t : {Topology::kStar, Topology::kBarabasiAlbert}) {
    const auto cfg = reference_config(t, true);
    const std::string name = "aware_" + std::string(topology_name(t));
    aware.push_back({name, cfg, snapshot(work, name, cfg)});
  }
  const Named& complete = naive[0];
  const Named& ring = naive[1];
  const Named& star = naive[2];
  const Named& ba = naive[3];

  std::vector<AccuracyCurve> curves;
  for (const Named& n : naive) {
    curves.push_back(evaluate(n.pop, AttackSpec::none(), n.cfg));
    log(n.name + " A_t: " + curve_text(curves.back().mean));
  }

  // 3. First-step accuracy near the private benchmark on every topology.
  {
    bool ok = true;
    std::string detail = fmt("A1=%.4f;", a1);
    for (std::size_t k = 0; k < naive.size(); ++k) {
      const double v = curves[k].mean.front();
      ok = ok && std::abs(v - a1) <= 0.05;
      detail += fmt(" %s A_1=%.4f", naive[k].name.c_str(), v);
    }
    record(3, ok, detail);
  }

  // 4. Complete network: within 10% of full information after one step.
  {
    const double v = curves[0].mean[1];
    record(4, v >= 0.9 * an,
           fmt("complete A_2=%.4f, threshold 0.9*AN=%.4f", v, 0.9 * an));
  }

  // 5. Directed ring: slow diffusion, plateau near full information.
  {
    const auto& c = curves[1].mean;
    const int reach = first_reach(c, 0.9 * an);
    const double terminal = c.back();
    const bool ok = reach >= 9 && reach <= 15 && std::abs(terminal - an) <= 0.05;
    record(5, ok,
           fmt("ring first t with A_t>=%.4f: %d (want 9..15); A_T=%.4f, |A_T-AN|=%.4f "
               "(want <=0.05)", 0.9 * an, reach, terminal, std::abs(terminal - an)));
  }

  // 6. Uninformed attack on the ring.
  {
    const auto hit = evaluate(ring.pop, AttackSpec::uniform(3.0), ring.cfg);
    log("ring beta=3 A_t: " + curve_text(hit.mean));
    const double drop = curves[1].mean.back() - hit.mean.back();
    record(6, drop >= 0.25,
           fmt("ring A_T no attack %.4f, beta=3 random target %.4f, drop %.4f (want >=0.25)",
               curves[1].mean.back(), hit.mean.back(), drop));
  }

  // 7. Node sweeps on the naive star and Barabasi-Albert populations.
  std::vector<NodeEfficacy> star_rows, ba_rows;
  {
    star_rows = node_sweep(star.pop, 3.0, sweep_options(star.cfg, kSweepEpisodes));
    ba_rows = node_sweep(ba.pop, 3.0, sweep_options(ba.cfg, kSweepEpisodes));
    auto within = [](const std::vector<NodeEfficacy>& rows, double lo, double hi) {
      return std::all_of(rows.begin(), rows.end(), [&](const NodeEfficacy& r) {
        return r.delta_accuracy >= lo && r.delta_accuracy <= hi;
      });
    };
    const auto argmax = std::max_element(
        star_rows.begin(), star_rows.end(),
        [](const auto& a, const auto& b) { return a.delta_accuracy < b.delta_accuracy; });
    const bool star_ok = within(star_rows, 0.05, 0.45) && argmax->node == 0;
    const bool ba_ok = within(ba_rows, 0.02, 0.25);
    record(7, star_ok && ba_ok,
           fmt("star (want [0.05,0.45], argmax 0; argmax %d): ", argmax->node) +
               sweep_text(star_rows) + "| BA (want [0.02,0.25]): " + sweep_text(ba_rows));
  }

  // 8. Aware populations resist every single-node attack.
  {
    bool ok = true;
    std::string detail = "want all <=0.15;";
    for (const Named& n : aware) {
      const auto rows = node_sweep(n.pop, 3.0, sweep_options(n.cfg, kSweepEpisodes));
      for (const auto& r : rows) ok = ok && r.delta_accuracy <= 0.15;
      detail += " " + n.name + ": " + sweep_text(rows);
      const auto c = evaluate(n.pop, AttackSpec::none(), n.cfg);
      log(n.name + " A_t: " + curve_text(c.mean));
    }
    record(8, ok, detail);
  }

  // 9. Signal-strength sweeps on the naive Barabasi-Albert population.
  {
    const std::vector<double> betas = {1.0, 2.0, 3.0};
    const auto& edges = kDefaultSignalBinEdges;
    const auto opts = sweep_options(ba.cfg, kBinEpisodesPerRun);
    const auto own = signal_bin_sweep(ba.pop, betas, edges, BinBy::kTargetSignal, opts);
    const auto nbr = signal_bin_sweep(ba.pop, betas, edges, BinBy::kNeighborSignal, opts);
    const int bins = static_cast<int>(edges.size()) - 1;
    const int nb = static_cast<int>(betas.size());
    auto cell = [&](const std::vector<BinEfficacy>& rows, int bin, int b) {
      return rows[bin * nb + b];
    };
    bool ok = true;
    std::string detail;
    for (int b = 0; b < 2; ++b) {
      detail += fmt("own beta=%g:", betas[b]);
      for (int k = 0; k < bins; ++k) {
        const auto c = cell(own, k, b);
        if (!c.delta_accuracy) {
          ok = false;
          detail += " empty";
          continue;
        }
        detail += fmt(" %.4f", *c.delta_accuracy);
        if (k > 0) {
          const auto prev = cell(own, k - 1, b);
          if (prev.delta_accuracy && *c.delta_accuracy > *prev.delta_accuracy) ok = false;
        }
      }
      detail += "; ";
    }
    {
      const auto lo0 = cell(own, 0, 2), lo1 = cell(own, 1, 2);
      const bool have = lo0.delta_accuracy && lo1.delta_accuracy;
      const double pooled =
          have ? std::sqrt(0.5 * (*lo0.stddev_over_runs * *lo0.stddev_over_runs +
                                  *lo1.stddev_over_runs * *lo1.stddev_over_runs))
               : 0.0;
      const double gap = have ? std::abs(*lo0.delta_accuracy - *lo1.delta_accuracy) : 0.0;
      ok = ok && have && gap <= pooled;
      detail += fmt("own beta=3 lowest bins gap %.4f vs pooled sd %.4f; ", gap, pooled);
    }
    detail += "neighbor beta=3:";
    for (int k = 0; k < bins; ++k) {
      const auto c = cell(nbr, k, 2);
      if (!c.delta_accuracy) {
        ok = false;
        detail += fmt(" empty(n=%lld)", c.episodes);
        continue;
      }
      detail += fmt(" %.4f(n=%lld)", *c.delta_accuracy, c.episodes);
      if (k > 0) {
        const auto prev = cell(nbr, k - 1, 2);
        if (prev.delta_accuracy && !(*c.delta_accuracy < *prev.delta_accuracy)) ok = false;
      }
    }
    record(9, ok, detail);
    std::ofstream own_csv(fs::path(work) / "ba_signal_sweep.csv");
    write_bin_sweep_csv(own_csv, own);
    std::ofstream nbr_csv(fs::path(work) / "ba_neighbor_signal_sweep.csv");
    write_bin_sweep_csv(nbr_csv, nbr);
  }

  // 10. Exactness properties.
  {
    bool ok = true;
    std::string detail;
    // beta = 0 efficacy is identically zero on a trained population.
    auto opts = sweep_options(ba.cfg, 2000);
    opts.epsilon = 0.05;
    double max_abs = 0.0;
    for (const auto& r : node_sweep(ba.pop, 0.0, opts)) {
      max_abs = std::max(max_abs, std::abs(r.delta_accuracy));
    }
    const std::vector<double> zero = {0.0};
    opts.runs = 2;
    for (BinBy by : {BinBy::kTargetSignal, BinBy::kNeighborSignal}) {
      for (const auto& r : signal_bin_sweep(ba.pop, zero, kDefaultSignalBinEdges, by, opts)) {
        if (r.delta_accuracy) max_abs = std::max(max_abs, std::abs(*r.delta_accuracy));
      }
    }
    ok = ok && max_abs == 0.0;
    detail += fmt("beta=0 max |dA| %.1e; ", max_abs);

    // Signal strength: two log-densities against the closed form.
    double z_err = 0.0;
    for (double sigma2 : {0.5, 1.0, 2.0}) {
      for (int k = 0; k <= 10000; ++k) {
        const double s = -5.0 + 1e-3 * k;
        z_err = std::max(z_err, std::abs(signal_strength(s, sigma2) -
                                         std::abs(1.0 - 2.0 * s) / (2.0 * sigma2)));
      }
    }
    ok = ok && z_err <= 1e-12;
    detail += fmt("z(s) max err %.1e; ", z_err);

    // Snapshot round trip: reload and re-save, every data file identical.
    const fs::path src = fs::path(work) / "naive_barabasi_albert";
    const fs::path copy = fs::path(work) / "roundtrip";
    fs::remove_all(copy);
    const Snapshot loaded = load_snapshot(src);
    bool same_params = loaded.population.nets == ba.pop.nets;
    std::vector<TrainLogRow> no_log;
    save_snapshot(copy, loaded, no_log, 0.0);
    for (const char* f : {"config.txt", "graph.txt", "params/manifest.txt"}) {
      same_params = same_params && slurp(src / f) == slurp(copy / f);
    }
    for (int i = 0; i < kAgents; ++i) {
      const std::string f = fmt("params/agent_%03d.bin", i);
      same_params = same_params && slurp(src / f) == slurp(copy / f);
    }
    ok = ok && same_params;
    detail += std::string("snapshot round trip ") + (same_params ? "bit-exact" : "DIFFERS") + "; ";

    // Reproducibility: the same config and seed twice.
    ExperimentConfig small = reference_config(Topology::kBarabasiAlbert, true);
    small.trainer.training_episodes = 300;
    small.trainer.log_interval = 100;
    const fs::path r1 = fs::path(work) / "repro_1", r2 = fs::path(work) / "repro_2";
    fs::remove_all(r1);
    fs::remove_all(r2);
    const Snapshot s1 = run_training(small, r1);
    const Snapshot s2 = run_training(small, r2);
    bool repro = s1.population.nets == s2.population.nets;
    for (const auto& entry : fs::recursive_directory_iterator(r1)) {
      if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
      repro = repro && slurp(entry.path()) == slurp(r2 / fs::relative(entry.path(), r1));
    }
    std::ostringstream e1, e2;
    write_accuracy_csv(e1, evaluate(s1.population, AttackSpec::uniform(2.0), small));
    write_accuracy_csv(e2, evaluate(s2.population, AttackSpec::uniform(2.0), small));
    repro = repro && e1.str() == e2.str();
    ok = ok && repro;
    detail += std::string("repeat run ") + (repro ? "bit-identical" : "DIFFERS");
    record(10, ok, detail);
  }

  int failed = 0;
  for (const auto& o : outcomes) failed += !o.pass;
  std::printf("acceptance: %zu criteria, %d passed, %d failed\n", outcomes.size(),
              static_cast<int>(outcomes.size()) - failed, failed);
  return failed == 0 ? 0 : 1;
}
