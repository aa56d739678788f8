// Copyright 2026 The fdual Authors
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

/**
 * @file errors.hpp
 * @brief Error taxonomy shared by all fdual modules.
 *
 * Two failure classes are kept apart on purpose:
 *  - DomainError: the caller violated a precondition (bad prime, zero input,
 *    mismatched rings, size refusal).  Recoverable; fix the call site.
 *  - InvariantError: an internal mathematical guarantee failed (a quotient
 *    that must be integral is not, a map that must be invertible is not).
 *    These are never expected to fire; one firing means either a bug in the
 *    library or a genuine counterexample to the mathematics it encodes.
 */
#ifndef FDUAL_ERRORS_HPP
#define FDUAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fdual {

/// Precondition violation by the caller.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A mathematical invariant the library promises failed to hold.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fdual

#endif  // FDUAL_ERRORS_HPP
