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
 * @file tm.hpp
 * @brief The universal Todd denominator T_m and its divisibility calculus.
 *
 * T_m = ∏_p p^{⌊m/(p−1)⌋}, a finite product since p > m+1 contributes
 * exponent 0.  T_m is exactly the least common denominator of the degree-m
 * Todd polynomial, and a family of factorial products divides it; both facts
 * are exposed here as checked computations, not assumptions.
 */
#ifndef FDUAL_TM_HPP
#define FDUAL_TM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace fdual::arith {

/// T_m = ∏_{p ≤ m+1} p^{⌊m/(p−1)⌋}; bigT(0) = 1.
mpz_class bigT(unsigned m);

/// The quotient T_m / ((m_1+1)!⋯(m_r+1)! · T_{n_1}⋯T_{n_s}).
///
/// @pre  Σ ms + Σ ns ≤ m.
/// @post The quotient is an exact integer (this divisibility is a theorem;
///       a non-integral quotient throws InvariantError).
/// @throws DomainError on precondition violation.
mpz_class divisibilityWitness(const std::vector<unsigned>& ms,
                              const std::vector<unsigned>& ns, unsigned m);

/// Smallest-case multiplier N with T_h | N·h!², by case split:
/// N = 2 when h = 3; N = h+1 when h+1 is prime; N = 1 otherwise.
/// The divisibility T_h | N·h!² is verified before returning.
/// @pre h ≥ 1.
/// @throws InvariantError if the asserted divisibility fails.
std::int64_t lemmaN(unsigned h);

}  // namespace fdual::arith

#endif  // FDUAL_TM_HPP
