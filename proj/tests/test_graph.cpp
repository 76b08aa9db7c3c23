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

#include <algorithm>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "socdiff/error.hpp"
#include "socdiff/graph.hpp"

namespace socdiff {
namespace {

// Frozen output of the generator for (n=10, m=3, seed=7).
constexpr const char* kBaFixture = R"(barabasi_albert 10 3 7
0 1
0 2
0 3
0 4
0 5
0 8
0 9
1 0
1 2
1 3
1 4
1 5
1 6
1 8
2 0
2 1
2 3
2 6
2 7
2 9
3 0
3 1
3 2
3 4
3 5
3 6
3 7
3 8
4 0
4 1
4 3
5 0
5 1
5 3
5 7
6 1
6 2
6 3
7 2
7 3
7 5
7 9
8 0
8 1
8 3
9 0
9 2
9 7
)";

std::vector<int> nb(const SocialGraph& g, int i) {
  auto s = g.neighborhood(i);
  return {s.begin(), s.end()};
}

void check_common_invariants(const SocialGraph& g) {
  std::size_t total = 0;
  for (int i = 0; i < g.n_agents(); ++i) {
    for (int j : g.neighborhood(i)) CHECK(j != i);
    total += g.neighborhood(i).size();
    CHECK(g.input_dim(i) == g.in_degree(i) + 2);
  }
  CHECK(total == g.edges().size());
}

TEST_CASE("directed ring") {
  const auto g = SocialGraph::make(Topology::kDirectedRing, 10);
  CHECK(g.edges().size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(nb(g, i) == std::vector<int>{(i + 9) % 10});
  check_common_invariants(g);
}

TEST_CASE("complete graph") {
  const auto g = SocialGraph::make(Topology::kComplete, 10);
  CHECK(g.edges().size() == 90);
  for (int i = 0; i < 10; ++i) CHECK(g.in_degree(i) == 9);
  check_common_invariants(g);
}

TEST_CASE("star with center 0 is bidirectional") {
  const auto g = SocialGraph::make(Topology::kStar, 10);
  CHECK(nb(g, 0) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  for (int i = 1; i < 10; ++i) CHECK(nb(g, i) == std::vector<int>{0});
  CHECK(g.edges().size() == 18);
  check_common_invariants(g);
}

TEST_CASE("Barabasi-Albert m=3 on 10 nodes") {
  const auto g = SocialGraph::make(Topology::kBarabasiAlbert, 10, 3, 7);
  // Seed clique on 3 nodes (6 directed edges) plus 7 nodes x 3 attachments,
  // each realized in both directions.
  CHECK(g.edges().size() == 6 + 42);
  CHECK(g.weakly_connected());
  int degree_sum = 0;
  for (int i = 0; i < 10; ++i) {
    CHECK(g.undirected_degree(i) >= 3);
    CHECK(g.undirected_degree(i) == g.in_degree(i));  // bidirectional
    degree_sum += g.undirected_degree(i);
  }
  CHECK(degree_sum == 2 * 24);
  for (const Edge& e : g.edges()) {
    CHECK(std::binary_search(g.edges().begin(), g.edges().end(), Edge{e.to, e.from}));
  }
  // Every node added after the seed clique links to exactly 3 earlier nodes.
  for (int v = 3; v < 10; ++v) {
    int earlier = 0;
    for (int j : g.neighborhood(v)) earlier += j < v;
    CHECK(earlier == 3);
  }
  check_common_invariants(g);
}

TEST_CASE("Barabasi-Albert fixture for seed 7") {
  const auto g = SocialGraph::make(Topology::kBarabasiAlbert, 10, 3, 7);
  std::ostringstream os;
  g.write(os);
  CHECK(os.str() == kBaFixture);
}

TEST_CASE("Barabasi-Albert generator properties over many seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (int m : {1, 2, 3, 5}) {
      const auto g = SocialGraph::make(Topology::kBarabasiAlbert, 12, m, seed);
      REQUIRE(g.weakly_connected());
      for (int i = 0; i < 12; ++i) CHECK(g.undirected_degree(i) >= m);
      const std::size_t clique = static_cast<std::size_t>(m * (m - 1));
      CHECK(g.edges().size() == clique + 2u * (12 - m) * m);
      CHECK(g == SocialGraph::make(Topology::kBarabasiAlbert, 12, m, seed));
    }
  }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(SocialGraph::make(Topology::kComplete, 1), ConfigError);
  CHECK_THROWS_AS(SocialGraph::make(Topology::kBarabasiAlbert, 10, 0, 1), ConfigError);
  CHECK_THROWS_AS(SocialGraph::make(Topology::kBarabasiAlbert, 10, 10, 1), ConfigError);
  CHECK_THROWS_AS(parse_topology("lattice"), ConfigError);
  CHECK_THROWS_AS(SocialGraph::from_edges(Topology::kComplete, 3, {{1, 1}}), ConfigError);
  const auto g = SocialGraph::make(Topology::kStar, 4);
  CHECK_THROWS_AS(g.neighborhood(4), UsageError);
}

TEST_CASE("edge-list text round trip") {
  for (Topology t : {Topology::kComplete, Topology::kStar, Topology::kDirectedRing,
                     Topology::kBarabasiAlbert}) {
    const auto g = SocialGraph::make(t, 10, 3, 11);
    std::stringstream ss;
    g.write(ss);
    CHECK(SocialGraph::read(ss) == g);
  }
}

}  // namespace
}  // namespace socdiff
