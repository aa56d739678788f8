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
 * @file json_io.hpp
 * @brief Canonical JSON renderings of the library's value types, and the
 *        inverse parser for graded sl₂ modules.
 *
 * Every emitter is deterministic down to the byte: object keys appear in
 * alphabetical order, arrays in a documented canonical order, output uses
 * two-space indentation with a trailing newline, and unbounded integers are
 * rendered as decimal strings so nothing is rounded.  Report timings are
 * deliberately omitted — they belong on a side channel, not in output that
 * must be byte-identical across runs.  The schemas are documented in
 * docs/formats.md; the JSON implementation is a private detail of the
 * library, so this header exposes plain strings.
 */
#ifndef FDUAL_JSON_IO_HPP
#define FDUAL_JSON_IO_HPP

#include <string>
#include <vector>

#include "fdual/correspondence.hpp"
#include "fdual/identity.hpp"
#include "fdual/polynomial.hpp"
#include "fdual/sl2.hpp"
#include "fdual/taut_model.hpp"

namespace fdual::io {

/// {"monomials": [{exponents, numerator, denominator}, …], "variables":
/// [{name, weight}, …]}.  Variables that occur in no monomial are stripped;
/// monomials are listed in lexicographic exponent order.
std::string toJson(const chern::GradedPolynomial& p);

/// {"identity", "parameters", "pass", "residual"}; elapsed time is omitted.
std::string toJson(const ident::IdentityReport& r);

/// JSON array of reports, in the order given (callers order by stable key).
std::string toJson(const std::vector<ident::IdentityReport>& reports);

/// {"coefficients": [fraction, …] for ℓ^0..ℓ^g, "g", "invertedPrimes",
/// "nu"}.
std::string toJson(const chow::TautClass& x);

/// Flat projector coefficient table: {"d", "g", "nilIndex", "rows":
/// [{i, n, numerator, denominator}, …]} with rows sorted by (i, n); row
/// (i, n) carries a_{i,n}, the coefficient of Γ[n] in π_i.
std::string projectorTableJson(
    unsigned g, unsigned d,
    const std::vector<chow::CorrespondenceElement>& projectors);

/// {"eMaps": [{matrix, weight}, …], "fMaps": …, "g", "invertedPrimes",
/// "pieces": [{freeRank, torsion: [[p, k, count], …], weight}, …]}.  Maps
/// are keyed by source weight and only stored (nonzero) ones appear; matrix
/// entries are JSON integers when they fit, decimal or "a/b" strings
/// otherwise.
std::string toJson(const sl2::Sl2Module& v);

/// Inverse of toJson(Sl2Module): accepts the schema above, materializes
/// missing/empty matrices with the dimensions dictated by the pieces, and
/// funnels everything through the Sl2Module constructor so a parsed module
/// is always a validated one.
/// @throws DomainError     on malformed JSON, schema violations, or module
///                         preconditions.
/// @throws InvariantError  if the data is well shaped but not an sl₂
///                         representation.
sl2::Sl2Module sl2ModuleFromJson(const std::string& text);

/// {"components": [{freeRank, n, torsion}, …] for n = 0..g, "phi":
/// [{matrix, weight}, …]} — the isotypic multiplicities plus the certified
/// change-of-basis witness per weight.
std::string toJson(const sl2::IsotypicDecomposition& d);

}  // namespace fdual::io

#endif  // FDUAL_JSON_IO_HPP
