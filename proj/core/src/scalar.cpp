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

#include "fdual/scalar.hpp"

#include <algorithm>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::arith {

InvertedPrimeSet::InvertedPrimeSet(std::vector<std::int64_t> primes)
    : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  for (std::int64_t p : primes_) {
    if (!isPrime(p)) {
      throw DomainError("InvertedPrimeSet: " + std::to_string(p) +
                        " is not prime");
    }
  }
}

InvertedPrimeSet InvertedPrimeSet::dividing(const mpz_class& n) {
  if (n == 0) throw DomainError("InvertedPrimeSet: cannot invert 0");
  mpz_class rest = abs(n);
  std::vector<std::int64_t> primes;
  // Trial division is exact and fast at the factorial-sized N used here.
  for (std::int64_t p = 2; mpz_class(p) * p <= rest; p == 2 ? p = 3 : p += 2) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
      primes.push_back(p);
      mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), mpz_class(p).get_mpz_t());
    }
  }
  if (rest > 1) {
    if (!rest.fits_slong_p()) {
      throw DomainError("InvertedPrimeSet: prime factor of " + n.get_str() +
                        " exceeds word size");
    }
    primes.push_back(rest.get_si());
  }
  InvertedPrimeSet s;
  s.primes_ = std::move(primes);
  std::sort(s.primes_.begin(), s.primes_.end());
  return s;
}

bool InvertedPrimeSet::contains(std::int64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool InvertedPrimeSet::isSubsetOf(const InvertedPrimeSet& other) const {
  return std::includes(other.primes_.begin(), other.primes_.end(),
                       primes_.begin(), primes_.end());
}

InvertedPrimeSet InvertedPrimeSet::unionWith(
    const InvertedPrimeSet& other) const {
  InvertedPrimeSet out;
  std::set_union(primes_.begin(), primes_.end(), other.primes_.begin(),
                 other.primes_.end(), std::back_inserter(out.primes_));
  return out;
}

bool InvertedPrimeSet::isUnit(const mpz_class& n) const {
  if (n == 0) throw DomainError("InvertedPrimeSet::isUnit: 0 is not a unit");
  mpz_class rest = abs(n);
  for (std::int64_t p : primes_) {
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), mpz_class(p).get_mpz_t());
  }
  return rest == 1;
}

std::string InvertedPrimeSet::toString() const {
  if (primes_.empty()) return "Z";
  std::string s = "Z[";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ",";
    s += "1/" + std::to_string(primes_[i]);
  }
  return s + "]";
}

LambdaScalar::LambdaScalar(mpz_class n, InvertedPrimeSet ring)
    : value_(std::move(n)), ring_(std::move(ring)) {}

LambdaScalar::LambdaScalar(mpq_class v, InvertedPrimeSet ring)
    : value_(std::move(v)), ring_(std::move(ring)) {
  value_.canonicalize();
  if (value_ != 0 && !ring_.isUnit(value_.get_den())) {
    throw DomainError("LambdaScalar: denominator " + value_.get_den().get_str() +
                      " is not a unit of " + ring_.toString());
  }
}

LambdaScalar LambdaScalar::fraction(const mpz_class& num, const mpz_class& den,
                                    InvertedPrimeSet ring) {
  if (den == 0) throw DomainError("LambdaScalar: zero denominator");
  return LambdaScalar(mpq_class(num) / mpq_class(den), std::move(ring));
}

bool LambdaScalar::isUnit() const {
  return value_ != 0 && ring_.isUnit(value_.get_num());
}

LambdaScalar LambdaScalar::inverse() const {
  if (!isUnit()) {
    throw DomainError("LambdaScalar: " + toString() + " is not a unit of " +
                      ring_.toString());
  }
  return LambdaScalar(1 / value_, ring_);
}

LambdaScalar LambdaScalar::operator-() const {
  LambdaScalar r = *this;
  r.value_ = -r.value_;
  return r;
}

InvertedPrimeSet LambdaScalar::joinRings(const InvertedPrimeSet& a,
                                         const InvertedPrimeSet& b) {
  if (a.isSubsetOf(b)) return b;
  if (b.isSubsetOf(a)) return a;
  throw DomainError("LambdaScalar: incomparable rings " + a.toString() +
                    " and " + b.toString());
}

LambdaScalar& LambdaScalar::operator+=(const LambdaScalar& o) {
  ring_ = joinRings(ring_, o.ring_);
  value_ += o.value_;
  return *this;
}

LambdaScalar& LambdaScalar::operator-=(const LambdaScalar& o) {
  ring_ = joinRings(ring_, o.ring_);
  value_ -= o.value_;
  return *this;
}

LambdaScalar& LambdaScalar::operator*=(const LambdaScalar& o) {
  ring_ = joinRings(ring_, o.ring_);
  value_ *= o.value_;
  return *this;
}

std::string LambdaScalar::toString() const {
  return value_.get_str();
}

}  // namespace fdual::arith
