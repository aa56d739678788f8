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

#include "fdual/primes.hpp"

#include <string>

#include "fdual/errors.hpp"

namespace fdual::arith {

bool isPrime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primesUpTo(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (std::int64_t q = p * p; q <= bound; q += p) {
      composite[static_cast<std::size_t>(q)] = true;
    }
  }
  return out;
}

unsigned vp(const mpz_class& n, std::int64_t p) {
  if (n == 0) {
    throw DomainError("vp: valuation of 0 is undefined");
  }
  if (!isPrime(p)) {
    throw DomainError("vp: " + std::to_string(p) + " is not prime");
  }
  mpz_class rest;
  // mpz_remove strips every factor of p and reports how many it removed.
  mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(),
                             mpz_class(p).get_mpz_t());
  return static_cast<unsigned>(e);
}

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace fdual::arith
