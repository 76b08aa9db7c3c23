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

#ifndef SOCDIFF_ERROR_HPP_
#define SOCDIFF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace socdiff {

// Invalid parameters or an unparseable configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An API was called in a state that does not allow it (for example stepping
// an episode that already ended, or an agent index out of range).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Vector or matrix shapes do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Snapshot files are missing, malformed or fail checksum validation.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss. `dump_path` names the diagnostic file
// written for the offending batch (empty if the dump could not be written).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::string dump_path)
      : std::runtime_error(what), dump_path_(std::move(dump_path)) {}
  const std::string& dump_path() const { return dump_path_; }

 private:
  std::string dump_path_;
};

}  // namespace socdiff

#endif  // SOCDIFF_ERROR_HPP_
