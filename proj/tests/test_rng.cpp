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
#include <set>
#include <string>

#include "doctest.h"
#include "socdiff/rng.hpp"

namespace socdiff {
namespace {

TEST_CASE("seed_split is a pure function of its inputs") {
  CHECK(seed_split(42, "train") == seed_split(42, "train"));
  CHECK(seed_split(42, 7u) == seed_split(42, 7u));
  CHECK(seed_split(42, "train") != seed_split(43, "train"));
  CHECK(seed_split(42, "train") != seed_split(42, "probe"));
}

TEST_CASE("seed_split has no collisions on one-bit label changes") {
  std::set<std::uint64_t> children;
  for (int k = 0; k < 10000; ++k) {
    std::string label = "stream-" + std::to_string(k);
    const std::uint64_t child = seed_split(2024, label);
    CHECK(children.insert(child).second);
    label.back() = static_cast<char>(label.back() ^ 0x01);
    CHECK(seed_split(2024, label) != child);
  }
  std::set<std::uint64_t> numeric;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    CHECK(numeric.insert(seed_split(2024, k)).second);
  }
}

TEST_CASE("child streams are uniform on [0, 1)") {
  Rng rng(seed_split(99, "uniformity"));
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) <= 0.005);
}

TEST_CASE("generators replay from the seed; below() stays in range") {
  Rng a(1), b(1);
  for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
  for (int k = 0; k < 1000; ++k) CHECK(a.below(7) < 7u);
}

TEST_CASE("normal sampler moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.02);
}

}  // namespace
}  // namespace socdiff
