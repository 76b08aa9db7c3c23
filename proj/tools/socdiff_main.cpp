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

// socdiff command-line front end. Talks to the engine only through the C
// interface in socdiff/socdiff.h.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "socdiff/socdiff.h"

namespace {

int report(socdiff_status status) {
  if (status != SOCDIFF_OK) {
    std::fprintf(stderr, "socdiff: error: %s\n", socdiff_last_error());
  }
  return static_cast<int>(status);
}

void print_progress(long long episode, double a1, double at, void*) {
  std::fprintf(stderr, "episode %lld  probe A_1=%.3f  A_T=%.3f\n", episode, a1,
               at);
}

struct SnapshotHandle {
  socdiff_snapshot* ptr = nullptr;
  ~SnapshotHandle() { socdiff_snapshot_free(ptr); }
};

struct ConfigHandle {
  socdiff_config* ptr = nullptr;
  ~ConfigHandle() { socdiff_config_free(ptr); }
};

const char* out_or_stdout(const std::string& out) {
  return out.empty() ? nullptr : out.c_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social learning on networks with recurrent Q-learners"};
  app.set_version_flag("--version", socdiff_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string snapshot_dir;
  std::optional<std::uint64_t> seed;
  std::optional<long long> episodes;
  std::vector<double> betas;
  std::optional<int> attack_node;
  std::vector<std::string> overrides;
  std::vector<double> bins;
  int runs = 10;
  double sigma2 = 1.0;
  int agents = 10;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Master seed (U64)");
  };
  auto add_episodes = [&](CLI::App* cmd) {
    cmd->add_option("--episodes", episodes, "Evaluation episodes")
        ->check(CLI::PositiveNumber);
  };
  auto add_beta = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--beta", betas, help)->delimiter(',');
  };

  auto* train = app.add_subcommand("train", "Train a population and write a snapshot");
  train->add_option("--config", config_path, "Config file (key = value)")
      ->check(CLI::ExistingFile);
  train->add_option("--out", out, "Snapshot directory");
  train->add_option("--set", overrides, "Override a config key (key=value)");
  add_seed(train);

  auto* eval = app.add_subcommand("eval", "Greedy accuracy curve of a snapshot");
  eval->add_option("snapshot", snapshot_dir, "Snapshot directory")->required();
  eval->add_option("--out", out, "CSV output file (default: stdout)");
  add_seed(eval);
  add_episodes(eval);
  add_beta(eval, "Attack budget (random target unless --attack-node)");
  eval->add_option("--attack-node", attack_node, "Attack this agent");

  auto* sweep_nodes = app.add_subcommand("sweep-nodes", "Efficacy per attacked node");
  sweep_nodes->add_option("snapshot", snapshot_dir, "Snapshot directory")->required();
  sweep_nodes->add_option("--out", out, "CSV output file (default: stdout)");
  add_seed(sweep_nodes);
  add_episodes(sweep_nodes);
  add_beta(sweep_nodes, "Attack budgets (default 3)");

  std::vector<CLI::App*> bin_cmds;
  for (const char* name : {"sweep-signal", "sweep-neighbor-signal"}) {
    auto* cmd = app.add_subcommand(
        name, std::string(name) == "sweep-signal"
                  ? "Efficacy binned by the target's signal strength"
                  : "Efficacy binned by the neighbors' mean signal strength");
    cmd->add_option("snapshot", snapshot_dir, "Snapshot directory")->required();
    cmd->add_option("--out", out, "CSV output file (default: stdout)");
    add_seed(cmd);
    cmd->add_option("--episodes", episodes, "Episodes per run")
        ->check(CLI::PositiveNumber);
    add_beta(cmd, "Attack budgets (default 0.5,1,2,3)");
    cmd->add_option("--bins", bins, "Bin edges (default 0,0.5,1,2,4)")
        ->delimiter(',');
    cmd->add_option("--runs", runs, "Independent evaluation seeds")
        ->check(CLI::PositiveNumber);
    bin_cmds.push_back(cmd);
  }

  auto* bench = app.add_subcommand("bench", "Closed-form benchmarks A1 and AN");
  bench->add_option("--sigma2", sigma2, "Signal variance")->check(CLI::PositiveNumber);
  bench->add_option("--agents", agents, "Number of agents")->check(CLI::PositiveNumber);
  bench->add_option("--config", config_path, "Read sigma2 and N from a config")
      ->check(CLI::ExistingFile);
  bench->add_option("--out", out, "CSV output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) {
    ConfigHandle cfg;
    socdiff_status st = config_path.empty()
                            ? socdiff_config_default(&cfg.ptr)
                            : socdiff_config_load(config_path.c_str(), &cfg.ptr);
    if (st != SOCDIFF_OK) return report(st);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "socdiff: error: --set expects key=value, got '%s'\n",
                     kv.c_str());
        return SOCDIFF_ERR_USAGE;
      }
      st = socdiff_config_set(cfg.ptr, kv.substr(0, eq).c_str(),
                              kv.substr(eq + 1).c_str());
      if (st != SOCDIFF_OK) return report(st);
    }
    if (seed) {
      st = socdiff_config_set(cfg.ptr, "seed", std::to_string(*seed).c_str());
      if (st != SOCDIFF_OK) return report(st);
    }
    if (out.empty()) {
      char buf[4096];
      if (socdiff_config_get(cfg.ptr, "output_dir", buf, sizeof buf) == SOCDIFF_OK) {
        out = buf;
      }
    }
    if (out.empty()) {
      std::fprintf(stderr, "socdiff: error: no output directory (--out)\n");
      return SOCDIFF_ERR_USAGE;
    }
    return report(socdiff_train(cfg.ptr, out.c_str(), print_progress, nullptr,
                                nullptr));
  }

  if (bench->parsed()) {
    if (!config_path.empty()) {
      ConfigHandle cfg;
      if (auto st = socdiff_config_load(config_path.c_str(), &cfg.ptr); st != SOCDIFF_OK) {
        return report(st);
      }
      char buf[64];
      socdiff_config_get(cfg.ptr, "signal_variance", buf, sizeof buf);
      sigma2 = std::stod(buf);
      socdiff_config_get(cfg.ptr, "number_of_agents", buf, sizeof buf);
      agents = std::stoi(buf);
    }
    return report(socdiff_bench(sigma2, agents, out_or_stdout(out)));
  }

  SnapshotHandle snap;
  if (auto st = socdiff_snapshot_load(snapshot_dir.c_str(), &snap.ptr); st != SOCDIFF_OK) {
    return report(st);
  }
  const std::uint64_t eval_seed =
      seed ? *seed : socdiff_seed_split(socdiff_snapshot_seed(snap.ptr), "eval");

  if (eval->parsed()) {
    socdiff_attack attack{SOCDIFF_TARGET_NONE, 0.0, 0};
    if (betas.size() > 1) {
      std::fprintf(stderr, "socdiff: error: eval takes a single --beta\n");
      return SOCDIFF_ERR_USAGE;
    }
    if (!betas.empty()) {
      attack.beta = betas.front();
      attack.targeting = attack_node ? SOCDIFF_TARGET_NODE : SOCDIFF_TARGET_UNIFORM;
      attack.node = attack_node.value_or(0);
    } else if (attack_node) {
      std::fprintf(stderr, "socdiff: error: --attack-node needs --beta\n");
      return SOCDIFF_ERR_USAGE;
    }
    const char* path = out.empty() ? "-" : out.c_str();
    return report(socdiff_eval(snap.ptr, episodes.value_or(10000), eval_seed,
                               &attack, path, nullptr, nullptr, 0, nullptr));
  }

  if (sweep_nodes->parsed()) {
    if (betas.empty()) betas = {3.0};
    return report(socdiff_sweep_nodes(snap.ptr, betas.data(), betas.size(),
                                      episodes.value_or(10000), eval_seed,
                                      out_or_stdout(out)));
  }

  for (CLI::App* cmd : bin_cmds) {
    if (!cmd->parsed()) continue;
    if (betas.empty()) betas = {0.5, 1.0, 2.0, 3.0};
    const socdiff_bin_by by = cmd->get_name() == "sweep-signal"
                                  ? SOCDIFF_BIN_TARGET_SIGNAL
                                  : SOCDIFF_BIN_NEIGHBOR_SIGNAL;
    return report(socdiff_sweep_signal(
        snap.ptr, by, betas.data(), betas.size(),
        bins.empty() ? nullptr : bins.data(), bins.size(),
        episodes.value_or(2000), runs, eval_seed, out_or_stdout(out)));
  }
  return 0;
}
