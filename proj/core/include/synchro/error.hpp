// Copyright 2026 The Synchro Authors.
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

#ifndef SYNCHRO_ERROR_HPP_
#define SYNCHRO_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace synchro {

// Base of all errors raised on bad input. Carries an optional 1-based line
// number into the offending file.
class Error : public std::runtime_error {
 public:
  Error(std::string detail, std::optional<std::size_t> line = std::nullopt);

  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string detail_;
  std::optional<std::size_t> line_;
};

// Malformed syntax, or a record that violates its own invariants.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed inputs that disagree with each other (unknown ids, count
// mismatches between files, missing inputs for a pipeline).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace synchro

#endif  // SYNCHRO_ERROR_HPP_
