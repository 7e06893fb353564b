// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_ERRORS_HPP
#define QGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgame {

/// Argument outside the mathematical domain of an operation (bad γ, player
/// count, out-of-box strategy coordinates, unknown names).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Input that is in-domain but fails a numerical validity check, e.g. a
/// move matrix that is not unitary.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by threshold bisection when the NE predicate agrees at both ends
/// of the requested range.
class NoThresholdError : public std::runtime_error {
 public:
  explicit NoThresholdError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qgame

#endif  // QGAME_ERRORS_HPP
