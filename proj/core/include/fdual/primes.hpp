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
 * @file primes.hpp
 * @brief Deterministic small-prime utilities and p-adic valuations.
 *
 * Everything here works at desk scale: primes are produced by a sieve or
 * trial division, never probabilistically.
 */
#ifndef FDUAL_PRIMES_HPP
#define FDUAL_PRIMES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace fdual::arith {

/// Deterministic primality by trial division; fine for the word-sized
/// arguments this library ever sees.
bool isPrime(std::int64_t n);

/// All primes p ≤ bound, ascending (sieve of Eratosthenes).
std::vector<std::int64_t> primesUpTo(std::int64_t bound);

/// Largest e with p^e dividing n.
/// @throws DomainError if n == 0 (valuation undefined) or p is not prime.
unsigned vp(const mpz_class& n, std::int64_t p);

/// n! as an exact integer.
mpz_class factorial(unsigned n);

/// Binomial coefficient C(n, k) as an exact integer (0 when k > n).
mpz_class binomial(unsigned n, unsigned k);

}  // namespace fdual::arith

#endif  // FDUAL_PRIMES_HPP
