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

#include "socdiff/snapshot.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "socdiff/error.hpp"

namespace socdiff {
namespace fs = std::filesystem;
using nlohmann::json;

std::string_view version_string() {
#ifdef SOCDIFF_VERSION
  return SOCDIFF_VERSION;
#else
  return "0.0.0-dev";
#endif
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(is), {});
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os || !os.write(contents.data(), static_cast<std::streamsize>(contents.size()))) {
    throw SnapshotError("cannot write " + path.string());
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string agent_file(int agent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "agent_%03d.bin", agent);
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_log(std::span<const TrainLogRow> log) {
  std::string out = "episode,agent_id,mean_loss,probe_A1,probe_AT\n";
  char buf[160];
  for (const TrainLogRow& r : log) {
    std::snprintf(buf, sizeof buf, "%lld,%d,%.10g,%.10g,%.10g\n", r.episode,
                  r.agent_id, r.mean_loss, r.probe_a1, r.probe_at);
    out += buf;
  }
  return out;
}

}  // namespace

std::uint64_t file_checksum(const fs::path& path) {
  const std::string bytes = read_file(path);
  return fnv1a64(bytes);
}

void save_snapshot(const fs::path& dir, const Snapshot& snap,
                   std::span<const TrainLogRow> log, double wall_clock_seconds) {
  std::error_code ec;
  fs::create_directories(dir / "params", ec);
  if (ec) throw SnapshotError("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::string> files;
  write_file(dir / "config.txt", snap.config.echo());
  files.push_back("config.txt");

  std::ostringstream graph;
  snap.population.graph.write(graph);
  write_file(dir / "graph.txt", graph.str());
  files.push_back("graph.txt");

  std::ostringstream manifest;
  for (std::size_t i = 0; i < snap.population.nets.size(); ++i) {
    const AgentNet& net = snap.population.nets[i];
    const std::string name = agent_file(static_cast<int>(i));
    manifest << i << ' ' << net.shape().input_dim << ' ' << net.shape().hidden_dim
             << ' ' << net.shape().layers << ' ' << name << '\n';
    std::ostringstream bytes;
    write_params(bytes, net);
    write_file(dir / "params" / name, bytes.str());
    files.push_back("params/" + name);
  }
  write_file(dir / "params" / "manifest.txt", manifest.str());
  files.push_back("params/manifest.txt");

  write_file(dir / "train_log.csv", format_log(log));
  files.push_back("train_log.csv");

  json m;
  m["version"] = version_string();
  m["created_utc"] = utc_now();
  m["wall_clock_seconds"] = wall_clock_seconds;
  m["seed"] = snap.config.trainer.seed;
  json cfg = json::object();
  for (const auto& [key, value] : snap.config.entries()) cfg[key] = value;
  m["config"] = cfg;
  json inventory = json::array();
  for (const std::string& f : files) {
    const fs::path p = dir / f;
    inventory.push_back({{"path", f},
                         {"bytes", fs::file_size(p)},
                         {"fnv1a64", hex64(file_checksum(p))}});
  }
  m["files"] = inventory;
  const fs::path tmp = dir / "manifest.json.tmp";
  write_file(tmp, m.dump(2) + "\n");
  fs::rename(tmp, dir / "manifest.json", ec);
  if (ec) throw SnapshotError("cannot finalize manifest: " + ec.message());
}

std::vector<std::string> verify_snapshot(const fs::path& dir) {
  json m;
  try {
    m = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("manifest.json: ") + e.what());
  }
  std::vector<std::string> bad;
  try {
    for (const auto& entry : m.at("files")) {
      const std::string path = entry.at("path").get<std::string>();
      const fs::path p = dir / path;
      if (!fs::exists(p) ||
          hex64(file_checksum(p)) != entry.at("fnv1a64").get<std::string>()) {
        bad.push_back(path);
      }
    }
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("manifest.json: ") + e.what());
  }
  return bad;
}

Snapshot load_snapshot(const fs::path& dir) {
  const std::vector<std::string> bad = verify_snapshot(dir);
  if (!bad.empty()) {
    std::string msg = "checksum mismatch in " + dir.string() + ":";
    for (const auto& b : bad) msg += " " + b;
    throw SnapshotError(msg);
  }
  ExperimentConfig config;
  try {
    config = parse_config(read_file(dir / "config.txt"),
                          (dir / "config.txt").string());
  } catch (const ConfigError& e) {
    throw SnapshotError(e.what());
  }
  std::istringstream graph_text(read_file(dir / "graph.txt"));
  SocialGraph graph = SocialGraph::read(graph_text);

  std::istringstream manifest(read_file(dir / "params" / "manifest.txt"));
  std::vector<AgentNet> nets;
  int agent = 0, input_dim = 0, hidden = 0, layers = 0;
  std::string file;
  while (manifest >> agent >> input_dim >> hidden >> layers >> file) {
    if (agent != static_cast<int>(nets.size())) {
      throw SnapshotError("params/manifest.txt: agents out of order");
    }
    if (agent >= graph.n_agents() || graph.input_dim(agent) != input_dim) {
      throw SnapshotError("params/manifest.txt: agent " + std::to_string(agent) +
                          " does not match the graph");
    }
    std::istringstream bytes(read_file(dir / "params" / file));
    nets.push_back(read_params(bytes, NetShape{input_dim, hidden, layers}));
  }
  if (static_cast<int>(nets.size()) != graph.n_agents()) {
    throw SnapshotError("params/manifest.txt: expected " +
                        std::to_string(graph.n_agents()) + " agents");
  }
  return Snapshot{std::move(config), Population{std::move(graph), std::move(nets)}};
}

}  // namespace socdiff
