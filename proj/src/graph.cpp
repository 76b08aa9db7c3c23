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

#include "socdiff/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "socdiff/error.hpp"
#include "socdiff/rng.hpp"

namespace socdiff {

std::string_view topology_name(Topology t) {
  switch (t) {
    case Topology::kComplete:
      return "complete";
    case Topology::kStar:
      return "star";
    case Topology::kDirectedRing:
      return "directed_ring";
    case Topology::kBarabasiAlbert:
      return "barabasi_albert";
  }
  return "unknown";
}

Topology parse_topology(std::string_view name) {
  for (Topology t : {Topology::kComplete, Topology::kStar,
                     Topology::kDirectedRing, Topology::kBarabasiAlbert}) {
    if (topology_name(t) == name) return t;
  }
  throw ConfigError("unknown topology '" + std::string(name) + "'");
}

namespace {

void add_both(std::vector<Edge>& edges, int a, int b) {
  edges.push_back({a, b});
  edges.push_back({b, a});
}

std::vector<Edge> barabasi_albert(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  // A node of degree d appears d times, so a uniform pick from this list is a
  // degree-proportional pick.
  std::vector<int> endpoints;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      add_both(edges, a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  for (int node = m; node < n; ++node) {
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < m) {
      int pick;
      if (endpoints.empty()) {
        // Seed clique of one node has no degree mass yet.
        pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(node)));
      } else {
        pick = endpoints[rng.below(endpoints.size())];
      }
      if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) {
        chosen.push_back(pick);
      } else if (endpoints.empty()) {
        continue;
      } else {
        // Redraw among the nodes not yet chosen; if every node with positive
        // degree is taken, fall back to uniform over the remaining ones.
        bool any_left = false;
        for (int e : endpoints) {
          if (std::find(chosen.begin(), chosen.end(), e) == chosen.end()) {
            any_left = true;
            break;
          }
        }
        if (!any_left) {
          std::vector<int> rest;
          for (int v = 0; v < node; ++v) {
            if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) {
              rest.push_back(v);
            }
          }
          chosen.push_back(rest[rng.below(rest.size())]);
        }
      }
    }
    for (int target : chosen) {
      add_both(edges, node, target);
      endpoints.push_back(node);
      endpoints.push_back(target);
    }
  }
  return edges;
}

}  // namespace

SocialGraph SocialGraph::make(Topology topology, int n_agents, int ba_m,
                              std::uint64_t seed) {
  if (n_agents < 2) {
    throw ConfigError("n_agents must be at least 2, got " +
                      std::to_string(n_agents));
  }
  std::vector<Edge> edges;
  std::optional<int> m;
  std::optional<std::uint64_t> s;
  switch (topology) {
    case Topology::kComplete:
      for (int j = 0; j < n_agents; ++j) {
        for (int i = 0; i < n_agents; ++i) {
          if (i != j) edges.push_back({j, i});
        }
      }
      break;
    case Topology::kStar:
      for (int i = 1; i < n_agents; ++i) add_both(edges, 0, i);
      break;
    case Topology::kDirectedRing:
      for (int i = 0; i < n_agents; ++i) {
        edges.push_back({(i + n_agents - 1) % n_agents, i});
      }
      break;
    case Topology::kBarabasiAlbert:
      if (ba_m < 1 || ba_m >= n_agents) {
        throw ConfigError("ba_m must satisfy 1 <= ba_m < n_agents, got " +
                          std::to_string(ba_m));
      }
      edges = barabasi_albert(n_agents, ba_m, seed);
      m = ba_m;
      s = seed;
      break;
  }
  return from_edges(topology, n_agents, std::move(edges), m, s);
}

SocialGraph SocialGraph::from_edges(Topology tag, int n_agents,
                                    std::vector<Edge> edges,
                                    std::optional<int> ba_m,
                                    std::optional<std::uint64_t> seed) {
  if (n_agents < 2) {
    throw ConfigError("n_agents must be at least 2, got " +
                      std::to_string(n_agents));
  }
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n_agents || e.to < 0 || e.to >= n_agents) {
      throw ConfigError("edge " + std::to_string(e.from) + " -> " +
                        std::to_string(e.to) + " out of range");
    }
    if (e.from == e.to) {
      throw ConfigError("self-loop on agent " + std::to_string(e.from));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  SocialGraph g;
  g.n_agents_ = n_agents;
  g.topology_ = tag;
  g.ba_m_ = ba_m;
  g.seed_ = seed;
  g.edges_ = std::move(edges);
  g.index();
  return g;
}

void SocialGraph::index() {
  neighborhoods_.assign(n_agents_, {});
  for (const Edge& e : edges_) neighborhoods_[e.to].push_back(e.from);
  for (auto& nb : neighborhoods_) std::sort(nb.begin(), nb.end());
}

std::span<const int> SocialGraph::neighborhood(int agent) const {
  if (agent < 0 || agent >= n_agents_) {
    throw UsageError("agent index " + std::to_string(agent) + " out of range");
  }
  return neighborhoods_[agent];
}

bool SocialGraph::weakly_connected() const {
  std::vector<std::vector<int>> adj(n_agents_);
  for (const Edge& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(n_agents_, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_agents_;
}

int SocialGraph::undirected_degree(int agent) const {
  std::vector<int> others;
  for (const Edge& e : edges_) {
    if (e.to == agent) others.push_back(e.from);
    if (e.from == agent) others.push_back(e.to);
  }
  std::sort(others.begin(), others.end());
  return static_cast<int>(std::unique(others.begin(), others.end()) -
                          others.begin());
}

void SocialGraph::write(std::ostream& os) const {
  os << topology_name(topology_) << ' ' << n_agents_;
  if (ba_m_) os << ' ' << *ba_m_;
  if (seed_) os << ' ' << *seed_;
  os << '\n';
  for (const Edge& e : edges_) os << e.from << ' ' << e.to << '\n';
}

SocialGraph SocialGraph::read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw SnapshotError("graph: missing header");
  std::istringstream header(line);
  std::string tag;
  int n = 0;
  if (!(header >> tag >> n)) throw SnapshotError("graph: malformed header");
  std::optional<int> ba_m;
  std::optional<std::uint64_t> seed;
  int m_value;
  if (header >> m_value) {
    ba_m = m_value;
    std::uint64_t s_value;
    if (header >> s_value) seed = s_value;
  }
  std::vector<Edge> edges;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Edge e{};
    if (!(ls >> e.from >> e.to)) {
      throw SnapshotError("graph: malformed edge on line " +
                          std::to_string(line_no));
    }
    edges.push_back(e);
  }
  try {
    return from_edges(parse_topology(tag), n, std::move(edges), ba_m, seed);
  } catch (const ConfigError& e) {
    throw SnapshotError(std::string("graph: ") + e.what());
  }
}

}  // namespace socdiff
