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

#include "socdiff/socdiff.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "socdiff/adversary.hpp"
#include "socdiff/error.hpp"
#include "socdiff/experiment.hpp"

struct socdiff_config {
  socdiff::ExperimentConfig value;
};

struct socdiff_snapshot {
  socdiff::Snapshot value;
};

namespace {

thread_local std::string g_last_error;

socdiff_status fail(socdiff_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <typename Fn>
socdiff_status guarded(Fn&& fn) {
  try {
    fn();
    return SOCDIFF_OK;
  } catch (const socdiff::ConfigError& e) {
    return fail(SOCDIFF_ERR_CONFIG, e.what());
  } catch (const socdiff::SnapshotError& e) {
    return fail(SOCDIFF_ERR_SNAPSHOT, e.what());
  } catch (const socdiff::NumericalError& e) {
    std::string msg = e.what();
    if (!e.dump_path().empty()) msg += " (batch dumped to " + e.dump_path() + ")";
    return fail(SOCDIFF_ERR_NUMERICAL, msg);
  } catch (const socdiff::UsageError& e) {
    return fail(SOCDIFF_ERR_USAGE, e.what());
  } catch (const socdiff::DimensionError& e) {
    return fail(SOCDIFF_ERR_USAGE, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(SOCDIFF_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SOCDIFF_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SOCDIFF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SOCDIFF_ERR_INTERNAL, "unknown error");
  }
}

// Runs `write` against the requested CSV destination.
template <typename Fn>
void with_csv(const char* csv_path, Fn&& write) {
  if (csv_path == nullptr || std::strcmp(csv_path, "-") == 0) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(csv_path, std::ios::trunc);
  if (!os) {
    throw std::ios_base::failure(std::string("cannot open ") + csv_path);
  }
  write(os);
  if (!os.flush()) {
    throw std::ios_base::failure(std::string("cannot write ") + csv_path);
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw socdiff::UsageError(msg);
}

}  // namespace

extern "C" {

const char* socdiff_version(void) { return socdiff::version_string().data(); }

const char* socdiff_last_error(void) { return g_last_error.c_str(); }

socdiff_status socdiff_config_default(socdiff_config** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new socdiff_config{};
  });
}

socdiff_status socdiff_config_load(const char* path, socdiff_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be NULL");
    auto cfg = std::make_unique<socdiff_config>(
        socdiff_config{socdiff::load_config(path)});
    *out = cfg.release();
  });
}

socdiff_status socdiff_config_set(socdiff_config* cfg, const char* key,
                                  const char* value) {
  return guarded([&] {
    require(cfg && key && value, "arguments must not be NULL");
    socdiff::ExperimentConfig next = cfg->value;
    next.set(key, value);
    cfg->value = std::move(next);
  });
}

socdiff_status socdiff_config_get(const socdiff_config* cfg, const char* key,
                                  char* buf, size_t buf_len) {
  return guarded([&] {
    require(cfg && key && buf, "arguments must not be NULL");
    for (const auto& [k, v] : cfg->value.entries()) {
      if (k == key) {
        require(v.size() < buf_len, "buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
        return;
      }
    }
    throw socdiff::ConfigError(std::string("unknown key '") + key + "'");
  });
}

void socdiff_config_free(socdiff_config* cfg) { delete cfg; }

socdiff_status socdiff_train(const socdiff_config* cfg, const char* out_dir,
                             socdiff_progress_fn progress, void* user,
                             socdiff_snapshot** snapshot_out) {
  return guarded([&] {
    require(cfg && out_dir, "cfg and out_dir must not be NULL");
    std::function<void(const socdiff::TrainLogRow&)> cb;
    if (progress) {
      cb = [progress, user](const socdiff::TrainLogRow& row) {
        progress(row.episode, row.probe_a1, row.probe_at, user);
      };
    }
    socdiff::Snapshot snap = socdiff::run_training(cfg->value, out_dir, cb);
    if (snapshot_out) *snapshot_out = new socdiff_snapshot{std::move(snap)};
  });
}

socdiff_status socdiff_snapshot_load(const char* dir, socdiff_snapshot** out) {
  return guarded([&] {
    require(dir && out, "dir and out must not be NULL");
    *out = new socdiff_snapshot{socdiff::load_snapshot(dir)};
  });
}

void socdiff_snapshot_free(socdiff_snapshot* snap) { delete snap; }

int socdiff_snapshot_n_agents(const socdiff_snapshot* snap) {
  return snap ? snap->value.population.graph.n_agents() : -1;
}

int socdiff_snapshot_input_dim(const socdiff_snapshot* snap, int agent) {
  if (!snap || agent < 0 || agent >= snap->value.population.graph.n_agents()) {
    return -1;
  }
  return snap->value.population.graph.input_dim(agent);
}

uint64_t socdiff_snapshot_seed(const socdiff_snapshot* snap) {
  return snap ? snap->value.config.trainer.seed : 0;
}

socdiff_status socdiff_eval(const socdiff_snapshot* snap, long long episodes,
                            uint64_t seed, const socdiff_attack* attack,
                            const char* csv_path, double* mean_out,
                            double* stderr_out, size_t capacity,
                            int* steps_out) {
  return guarded([&] {
    require(snap != nullptr, "snapshot must not be NULL");
    const socdiff::TrainerConfig& t = snap->value.config.trainer;
    socdiff::AttackSpec spec;
    if (attack) {
      switch (attack->targeting) {
        case SOCDIFF_TARGET_NONE:
          break;
        case SOCDIFF_TARGET_UNIFORM:
          spec = socdiff::AttackSpec::uniform(attack->beta);
          break;
        case SOCDIFF_TARGET_NODE:
          spec = socdiff::AttackSpec::fixed(attack->node, attack->beta);
          break;
        default:
          throw socdiff::UsageError("unknown targeting mode");
      }
    }
    const socdiff::AccuracyCurve curve = socdiff::evaluate_accuracy(
        snap->value.population, spec,
        socdiff::EvalOptions{episodes, t.sigma2, t.horizon, 0.0, seed});
    if (steps_out) *steps_out = static_cast<int>(curve.mean.size());
    for (size_t k = 0; k < capacity && k < curve.mean.size(); ++k) {
      if (mean_out) mean_out[k] = curve.mean[k];
      if (stderr_out) stderr_out[k] = curve.std_error[k];
    }
    if (csv_path != nullptr || mean_out == nullptr) {
      with_csv(csv_path, [&](std::ostream& os) {
        socdiff::write_accuracy_csv(os, curve);
      });
    }
  });
}

socdiff_status socdiff_sweep_nodes(const socdiff_snapshot* snap,
                                   const double* betas, size_t n_betas,
                                   long long episodes, uint64_t seed,
                                   const char* csv_path) {
  return guarded([&] {
    require(snap && betas && n_betas > 0, "need a snapshot and betas");
    const socdiff::TrainerConfig& t = snap->value.config.trainer;
    socdiff::SweepOptions opts{episodes, t.sigma2, t.horizon, 0.0, seed, 1};
    std::vector<socdiff::NodeEfficacy> rows;
    for (size_t b = 0; b < n_betas; ++b) {
      auto part = socdiff::node_sweep(snap->value.population, betas[b], opts);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    with_csv(csv_path, [&](std::ostream& os) {
      socdiff::write_node_sweep_csv(os, rows);
    });
  });
}

socdiff_status socdiff_sweep_signal(const socdiff_snapshot* snap,
                                    socdiff_bin_by by, const double* betas,
                                    size_t n_betas, const double* bin_edges,
                                    size_t n_edges, long long episodes,
                                    int runs, uint64_t seed,
                                    const char* csv_path) {
  return guarded([&] {
    require(snap && betas && n_betas > 0, "need a snapshot and betas");
    std::vector<double> edges = bin_edges && n_edges > 0
                                    ? std::vector<double>(bin_edges, bin_edges + n_edges)
                                    : socdiff::kDefaultSignalBinEdges;
    const socdiff::TrainerConfig& t = snap->value.config.trainer;
    socdiff::SweepOptions opts{episodes, t.sigma2, t.horizon, 0.0, seed, runs};
    const auto rows = socdiff::signal_bin_sweep(
        snap->value.population, std::vector<double>(betas, betas + n_betas),
        edges,
        by == SOCDIFF_BIN_NEIGHBOR_SIGNAL ? socdiff::BinBy::kNeighborSignal
                                          : socdiff::BinBy::kTargetSignal,
        opts);
    with_csv(csv_path, [&](std::ostream& os) {
      socdiff::write_bin_sweep_csv(os, rows);
    });
  });
}

socdiff_status socdiff_bench(double sigma2, int n_agents, const char* csv_path) {
  return guarded([&] {
    with_csv(csv_path, [&](std::ostream& os) {
      socdiff::write_bench_csv(os, sigma2, n_agents);
    });
  });
}

uint64_t socdiff_seed_split(uint64_t master_seed, const char* label) {
  return socdiff::seed_split(master_seed, label ? label : "");
}

}  // extern "C"
