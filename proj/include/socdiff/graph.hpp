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

#ifndef SOCDIFF_GRAPH_HPP_
#define SOCDIFF_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace socdiff {

enum class Topology { kComplete, kStar, kDirectedRing, kBarabasiAlbert };

std::string_view topology_name(Topology t);
// Throws ConfigError for unknown names.
Topology parse_topology(std::string_view name);

// A directed edge j -> i: agent i observes agent j's previous action.
struct Edge {
  int from;
  int to;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable directed social network. neighborhood(i) lists every j with an
// edge j -> i in ascending order; that order fixes the observation layout.
class SocialGraph {
 public:
  // Builds one of the four generated topologies. The star center is agent 0.
  // Barabasi-Albert starts from a clique on `ba_m` nodes and attaches every
  // later node to `ba_m` distinct earlier nodes chosen with probability
  // proportional to degree; all edges are bidirectional.
  static SocialGraph make(Topology topology, int n_agents, int ba_m = 0,
                          std::uint64_t seed = 0);

  // Builds a graph from an explicit edge list (used by the loader).
  static SocialGraph from_edges(Topology tag, int n_agents,
                                std::vector<Edge> edges,
                                std::optional<int> ba_m = std::nullopt,
                                std::optional<std::uint64_t> seed = std::nullopt);

  int n_agents() const { return n_agents_; }
  Topology topology() const { return topology_; }
  std::optional<int> ba_m() const { return ba_m_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  // Sorted by (from, to).
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const int> neighborhood(int agent) const;
  int in_degree(int agent) const {
    return static_cast<int>(neighborhood(agent).size());
  }
  // Observation length |B^i| + 2.
  int input_dim(int agent) const { return in_degree(agent) + 2; }

  // Treats edges as undirected and checks reachability from agent 0.
  bool weakly_connected() const;
  // Undirected degree, counting a bidirectional pair once.
  int undirected_degree(int agent) const;

  // Text format: header "topology n_agents [ba_m] [seed]" followed by one
  // "j i" line per edge j -> i.
  void write(std::ostream& os) const;
  static SocialGraph read(std::istream& is);

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) {
    return a.n_agents_ == b.n_agents_ && a.topology_ == b.topology_ &&
           a.edges_ == b.edges_ && a.ba_m_ == b.ba_m_ && a.seed_ == b.seed_;
  }

 private:
  SocialGraph() = default;
  void index();

  int n_agents_ = 0;
  Topology topology_ = Topology::kComplete;
  std::optional<int> ba_m_;
  std::optional<std::uint64_t> seed_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighborhoods_;
};

}  // namespace socdiff

#endif  // SOCDIFF_GRAPH_HPP_
