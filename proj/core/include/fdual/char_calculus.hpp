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
 * @file char_calculus.hpp
 * @brief The integral Todd / Chern-character polynomial calculus.
 *
 * All constructors return universal polynomials in Chern variables with
 * exact rational coefficients:
 *
 *  - toddComponent(m, rank): degree-m Todd polynomial; its least common
 *    denominator is exactly T_m.
 *  - fTd(m, rank) = T_m·toddComponent(m, rank) — integral by construction,
 *    and verified so.
 *  - chernCharComponent(m) = m!·ch_m, the power sum p_m in disguise; the
 *    rank symbol r only appears at m = 0.
 *  - fTdInv(rank, n) = (n+rank)!·{∏ Q(α_i)^{−1}}_n — integral, verified.
 *  - fCT(m) = Σ_j (T_m/(j!·T_{m−j}))·fs_j·fTd_{m−j}; the structural
 *    constants are certified integral through divisibilityWitness.
 *
 * Internally the heavy lifting happens in the power-sum basis: the log of a
 * product of per-root series is a linear combination Σ q_k·p_k, and p_k is
 * rewritten in Chern variables by Newton's identities.  This keeps the
 * computation polynomial in the degree instead of exponential in the rank;
 * the root-level definition remains available through root_series.hpp as an
 * independent cross-check path.
 */
#ifndef FDUAL_CHAR_CALCULUS_HPP
#define FDUAL_CHAR_CALCULUS_HPP

#include <string>

#include "fdual/polynomial.hpp"

namespace fdual::chern {

/// Name of the formal rank symbol (weight 0).
inline constexpr const char* kRankVar = "r";

/// The power sum p_k expressed in elementary symmetric variables
/// <prefix>1..<prefix>min(k,rank) via Newton's identities, with e_i = 0 for
/// i > rank.  @pre k ≥ 1.
GradedPolynomial newtonPowerSum(unsigned k, unsigned rank,
                                const std::string& prefix = "c");

/// Degree-m Todd polynomial of a rank-`rank` bundle in c_1..c_min(m,rank).
/// For rank ≥ m this is the universal rank-independent polynomial.
GradedPolynomial toddComponent(unsigned m, unsigned rank);

/// T_m·toddComponent(m, rank).  @throws InvariantError if not integral.
GradedPolynomial fTd(unsigned m, unsigned rank);

/// fs_m = m!·ch_m in variables r, c'_1..c'_m (rank-generic).
GradedPolynomial chernCharComponent(unsigned m);

/// (n+rank)!·{∏_{i≤rank} Q(α_i)^{−1}}_n in c_1..c_min(n,rank).
/// @throws InvariantError if not integral.
GradedPolynomial fTdInv(unsigned rank, unsigned n);

/// Σ_{j=0}^m (T_m/(j!·T_{m−j}))·fs_j·fTd_{m−j} in r, c'_j (bundle) and c_i
/// (tangent).  @throws InvariantError if a structural constant fails to be
/// integral.
GradedPolynomial fCT(unsigned m);

}  // namespace fdual::chern

#endif  // FDUAL_CHAR_CALCULUS_HPP
