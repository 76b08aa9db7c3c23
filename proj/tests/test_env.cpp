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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "socdiff/env.hpp"
#include "socdiff/error.hpp"

namespace socdiff {
namespace {

TEST_CASE("first observation carries the sentinel in every action slot") {
  const auto g = SocialGraph::make(Topology::kStar, 4);
  EpisodeWorld w(1, {0.3, -0.2, 1.4, 0.9}, 1.0, 3);
  CHECK(w.observe(g, 0) == std::vector<double>{0.3, 0.5, 0.5, 0.5, 0.5});
  CHECK(w.observe(g, 2) == std::vector<double>{1.4, 0.5, 0.5});
}

TEST_CASE("observations follow [own signal, own action, neighbors ascending]") {
  const auto g = SocialGraph::make(Topology::kComplete, 4);
  EpisodeWorld w(0, {0.1, 0.2, 0.3, 0.4}, 1.0, 3);
  const std::vector<int> a = {1, 0, 1, 1};
  const auto u = w.step(a);
  CHECK(u == std::vector<double>{0, 1, 0, 0});
  CHECK(w.t() == 2);
  CHECK(w.observe(g, 2) == std::vector<double>{0.3, 1, 1, 0, 1});
  CHECK(w.observe(g, 1) == std::vector<double>{0.2, 0, 1, 1, 1});
  const auto ring = SocialGraph::make(Topology::kDirectedRing, 4);
  CHECK(w.observe(ring, 0) == std::vector<double>{0.1, 1, 1});
}

TEST_CASE("the attacked agent sees a signal pushed away from theta") {
  for (int theta : {0, 1}) {
    EpisodeWorld w(theta, {0.5, 0.5, 0.5}, 1.0, 2, Attack{1, 2.0});
    const double expect = theta == 0 ? 2.5 : -1.5;
    CHECK(w.signals()[1] == doctest::Approx(expect));
    CHECK(w.signals()[0] == 0.5);
    CHECK(w.pre_attack_signals()[1] == 0.5);
    const auto clean = w.with_attack(std::nullopt);
    CHECK(clean.signals()[1] == 0.5);
    CHECK(clean.theta() == theta);
  }
  CHECK(biased_signal(0.0, 0, 0.0) == 0.0);
}

TEST_CASE("signals stay fixed for the whole episode; stepping past T fails") {
  const auto g = SocialGraph::make(Topology::kDirectedRing, 3);
  EpisodeWorld w(1, {0.7, 0.1, 1.9}, 1.0, 2);
  const std::vector<int> a = {1, 1, 0};
  w.step(a);
  CHECK(w.observe(g, 0)[0] == 0.7);
  w.step(a);
  CHECK(w.finished());
  CHECK(w.observe(g, 2)[0] == 1.9);
  CHECK_THROWS_AS(w.step(a), UsageError);
  const std::vector<int> short_a = {1};
  EpisodeWorld w2(1, {0.7, 0.1, 1.9}, 1.0, 2);
  CHECK_THROWS_AS(w2.step(short_a), DimensionError);
}

TEST_CASE("sample draws theta and signals with the requested law") {
  const auto g = SocialGraph::make(Topology::kComplete, 3);
  Rng rng(5);
  const int n = 40000;
  double theta_sum = 0, resid = 0, resid2 = 0;
  for (int k = 0; k < n; ++k) {
    const auto w = EpisodeWorld::sample(g, 2.0, 5, rng);
    theta_sum += w.theta();
    const double d = w.signals()[2] - w.theta();
    resid += d;
    resid2 += d * d;
  }
  CHECK(std::abs(theta_sum / n - 0.5) < 0.01);
  CHECK(std::abs(resid / n) < 0.03);
  CHECK(std::abs(resid2 / n - 2.0) < 0.06);
}

TEST_CASE("sample consumes theta first, then signals in agent order") {
  const auto g = SocialGraph::make(Topology::kComplete, 3);
  Rng a(9), b(9);
  const auto w = EpisodeWorld::sample(g, 1.0, 4, a);
  const int theta = b.bernoulli(0.5) ? 1 : 0;
  CHECK(w.theta() == theta);
  for (int i = 0; i < 3; ++i) CHECK(w.signals()[i] == b.normal(theta, 1.0));
}

TEST_CASE("discounted return weights the first step by gamma") {
  const std::vector<double> u = {1, 0, 1};
  CHECK(discounted_return(u, 0.5) == doctest::Approx(0.5 + 0.125));
  CHECK(discounted_return({}, 0.9) == 0.0);
}

}  // namespace
}  // namespace socdiff
