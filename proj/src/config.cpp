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

#include "socdiff/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "socdiff/error.hpp"

namespace socdiff {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " +
                      std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(value) + "' for " +
                    std::string(key));
}

std::string format_double(double v) {
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, value] : ExperimentConfig{}.entries()) k.push_back(key);
    return k;
  }();
  return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  TrainerConfig& t = trainer;
  if (key == "discount_rate") {
    t.gamma = parse_number<double>(key, value);
  } else if (key == "time_steps") {
    t.horizon = parse_number<int>(key, value);
  } else if (key == "number_of_agents") {
    t.n_agents = parse_number<int>(key, value);
  } else if (key == "size_hidden_state") {
    t.hidden_dim = parse_number<int>(key, value);
  } else if (key == "rnn_layers") {
    t.rnn_layers = parse_number<int>(key, value);
  } else if (key == "rnn_unit") {
    if (value != "gru") throw ConfigError("rnn_unit must be 'gru'");
  } else if (key == "signal_variance") {
    t.sigma2 = parse_number<double>(key, value);
  } else if (key == "exploration_rate") {
    t.epsilon = parse_number<double>(key, value);
  } else if (key == "learning_rate") {
    t.learning_rate = parse_number<double>(key, value);
  } else if (key == "training_episodes") {
    t.training_episodes = parse_number<long long>(key, value);
  } else if (key == "episodes_per_update") {
    t.episodes_per_update = parse_number<int>(key, value);
  } else if (key == "target_sync_interval") {
    t.target_sync_interval = parse_number<int>(key, value);
  } else if (key == "aware_training") {
    t.aware_training = parse_bool(key, value);
  } else if (key == "aware_beta") {
    t.aware_beta = parse_number<double>(key, value);
  } else if (key == "aware_attack_prob") {
    t.aware_attack_prob = parse_number<double>(key, value);
  } else if (key == "seed") {
    t.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "log_interval") {
    t.log_interval = parse_number<int>(key, value);
  } else if (key == "probe_episodes") {
    t.probe_episodes = parse_number<int>(key, value);
  } else if (key == "topology") {
    topology = parse_topology(value);
  } else if (key == "ba_m") {
    ba_m = parse_number<int>(key, value);
  } else if (key == "graph_seed") {
    graph_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "eval_episodes") {
    eval_episodes = parse_number<long long>(key, value);
  } else if (key == "output_dir") {
    output_dir = std::string(value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries()
    const {
  const TrainerConfig& t = trainer;
  return {
      {"discount_rate", format_double(t.gamma)},
      {"time_steps", std::to_string(t.horizon)},
      {"number_of_agents", std::to_string(t.n_agents)},
      {"size_hidden_state", std::to_string(t.hidden_dim)},
      {"rnn_unit", "gru"},
      {"rnn_layers", std::to_string(t.rnn_layers)},
      {"signal_variance", format_double(t.sigma2)},
      {"exploration_rate", format_double(t.epsilon)},
      {"learning_rate", format_double(t.learning_rate)},
      {"training_episodes", std::to_string(t.training_episodes)},
      {"episodes_per_update", std::to_string(t.episodes_per_update)},
      {"target_sync_interval", std::to_string(t.target_sync_interval)},
      {"aware_training", t.aware_training ? "true" : "false"},
      {"aware_beta", format_double(t.aware_beta)},
      {"aware_attack_prob", format_double(t.aware_attack_prob)},
      {"seed", std::to_string(t.seed)},
      {"log_interval", std::to_string(t.log_interval)},
      {"probe_episodes", std::to_string(t.probe_episodes)},
      {"topology", std::string(topology_name(topology))},
      {"ba_m", std::to_string(ba_m)},
      {"graph_seed", std::to_string(graph_seed)},
      {"eval_episodes", std::to_string(eval_episodes)},
      {"output_dir", output_dir},
  };
}

std::string ExperimentConfig::echo() const {
  std::string out;
  for (const auto& [key, value] : entries()) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void ExperimentConfig::validate() const {
  trainer.validate();
  if (topology == Topology::kBarabasiAlbert &&
      (ba_m < 1 || ba_m >= trainer.n_agents)) {
    throw ConfigError("ba_m must satisfy 1 <= ba_m < number_of_agents");
  }
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
}

SocialGraph ExperimentConfig::make_graph() const {
  return SocialGraph::make(topology, trainer.n_agents, ba_m, graph_seed);
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": " + msg);
  };
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    try {
      cfg.set(key, value);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace socdiff
