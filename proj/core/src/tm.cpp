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

#include "fdual/tm.hpp"

#include <numeric>
#include <string>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::arith {

mpz_class bigT(unsigned m) {
  mpz_class t = 1;
  for (std::int64_t p : primesUpTo(static_cast<std::int64_t>(m) + 1)) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  m / static_cast<unsigned>(p - 1));
    t *= pk;
  }
  return t;
}

mpz_class divisibilityWitness(const std::vector<unsigned>& ms,
                              const std::vector<unsigned>& ns, unsigned m) {
  unsigned long total = 0;
  for (unsigned v : ms) total += v;
  for (unsigned v : ns) total += v;
  if (total > m) {
    throw DomainError(
        "divisibilityWitness: Σ ms + Σ ns = " + std::to_string(total) +
        " exceeds m = " + std::to_string(m));
  }
  mpz_class divisor = 1;
  for (unsigned v : ms) divisor *= factorial(v + 1);
  for (unsigned v : ns) divisor *= bigT(v);
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), bigT(m).get_mpz_t(),
              divisor.get_mpz_t());
  if (r != 0) {
    throw InvariantError(
        "divisibilityWitness: factorial/T product does not divide T_" +
        std::to_string(m));
  }
  return q;
}

std::int64_t lemmaN(unsigned h) {
  if (h < 1) throw DomainError("lemmaN: h must be ≥ 1");
  std::int64_t n = 1;
  if (h == 3) {
    n = 2;
  } else if (isPrime(static_cast<std::int64_t>(h) + 1)) {
    n = static_cast<std::int64_t>(h) + 1;
  }
  mpz_class hf = factorial(h);
  mpz_class bound = n * hf * hf;
  if (bound % bigT(h) != 0) {
    throw InvariantError("lemmaN: T_" + std::to_string(h) +
                         " does not divide N·h!² for N = " + std::to_string(n));
  }
  return n;
}

}  // namespace fdual::arith
