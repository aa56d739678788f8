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
 * @file identity.hpp
 * @brief Machine verification of the Todd/character identity ledger.
 *
 * Each verifier computes the residual of one polynomial identity along two
 * independent routes and demands they agree:
 *
 *  - route A works in Chern variables: the closed-form constructors from
 *    char_calculus.hpp are combined with explicit substitutions (Whitney sum,
 *    dualization c_i → (−1)^i c_i, determinant line c_1^k), and
 *  - route B works at the root level: truncated products of Q(α) = α/(1−e^{−α})
 *    and its reciprocal over formal Chern roots, reduced back to Chern
 *    variables by rootsToChern.
 *
 * A report passes iff the shared residual is the zero polynomial; a nonzero
 * residual is preserved verbatim for inspection.  Structural constants such as
 * T_i/(T_j·T_k) are obtained through divisibilityWitness, so their
 * integrality is certified as a side effect of evaluating the identity.
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include "fdual/polynomial.hpp"

namespace fdual::ident {

/// Outcome of one identity verification.
struct IdentityReport {
  std::string identityName;
  std::map<std::string, std::int64_t> parameters;
  bool pass = false;
  /// Zero exactly when the identity holds at the requested size.
  chern::GradedPolynomial residual;
  std::chrono::nanoseconds elapsed{0};
};

/// Largest degree/size cap any verifier accepts (desk scale with headroom).
inline constexpr unsigned kMaxDegreeCap = 16;

/// Additivity across a two-term filtration: for every i ≤ maxDeg,
/// fTd_i(H) = Σ_{j+k=i} (T_i/(T_j·T_k))·fTd_j(E₁)·fTd_k(E₂) where the Chern
/// roots of H are the concatenation of those of E₁ (rank r1) and E₂ (rank r2).
/// @throws DomainError if a rank is zero or maxDeg exceeds kMaxDegreeCap.
IdentityReport verifyExactSeqIdentity(unsigned r1, unsigned r2,
                                      unsigned maxDeg);

/// Dual-bundle expansion: for every i ≤ maxDeg,
/// fTd_i(E) = Σ_{j+k=i} (T_i/(T_j·k!))·fTd_j(E^∨)·fs_k(det E) with
/// c_i(E^∨) = (−1)^i c_i(E) and fs_k(det E) = c_1(E)^k.
IdentityReport verifyDualIdentity(unsigned r, unsigned maxDeg);

/// Todd–inverse-Todd convolution: for every m ≤ maxM,
/// Σ_{i=0}^m (T_{r+m}/(T_i·(r+m−i)!))·fTd_i(E)·fTdInv_{m−i}(E)
/// equals T_r for m = 0 and vanishes for m ≥ 1 (rank-r E).
IdentityReport verifyTdInvIdentity(unsigned r, unsigned maxM);

/// Formal binomial cancellation: Σ_{i=0}^m C(m,i)·δ^i·(−δ)^{m−i} = [m = 0]
/// for every m ≤ maxM, as an identity in the degree-1 variable δ.
IdentityReport verifyBinomIdentity(unsigned maxM);

/// The two-stage collapse behind the pushforward constant: with E of rank g
/// and δ a free degree-1 variable,
///  (i) the quadruple sum over k+ℓ+a+c = μ with coefficients
///      T_{2g+μ}/(T_k·ℓ!·a!·(g+c)!)·δ^ℓ·(−δ)^a·fTd_k(E^∨)·fTdInv_c(E^∨)
///      equals the k+c = μ double sum (the δ slices cancel formally), and
///  (ii) that double sum equals T_{2g} for μ = 0 and 0 for 1 ≤ μ ≤ muMax.
/// The relation δ = c_1(E) is deliberately NOT imposed: the cancellation is
/// formal in δ, which is the stronger statement.
/// @throws DomainError unless 1 ≤ g ≤ 3 and muMax ≤ 3.
IdentityReport verifyKeyCollapse(unsigned g, unsigned muMax);

/// Integrality shape of the degree-(g+n) pushforward constants: T_{g+n}/n!
/// and every T_{g+n}/(i!·T_j) with i+j = g+n must be integers.
/// @throws DomainError unless g ≥ 1 and g+n ≤ 12.
IdentityReport pappasShapeCheck(unsigned g, unsigned n);

}  // namespace fdual::ident
