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

#ifndef SOCDIFF_PARALLEL_HPP_
#define SOCDIFF_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace socdiff {

// Worker count: SOCDIFF_THREADS if set and positive, otherwise the hardware
// concurrency (at least 1).
int worker_count();

// Calls fn(i) for every i in [0, n) on up to worker_count() threads. Each
// index is handled exactly once; callers write results into per-index slots
// so the outcome does not depend on scheduling. The first exception thrown
// by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace socdiff

#endif  // SOCDIFF_PARALLEL_HPP_
