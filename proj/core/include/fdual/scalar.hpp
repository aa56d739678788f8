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
 * @file scalar.hpp
 * @brief Exact scalars of the localized integer rings Λ = ℤ[1/N].
 *
 * An InvertedPrimeSet records which primes are invertible; a LambdaScalar is
 * a reduced fraction whose denominator's prime support must lie inside that
 * set.  Membership is validated eagerly at construction, so a LambdaScalar
 * is ring-correct by construction and arithmetic can never silently leave
 * the ring.
 */
#ifndef FDUAL_SCALAR_HPP
#define FDUAL_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace fdual::arith {

/// The finite set of primes inverted in Λ = ℤ[1/N] (the prime divisors of N).
class InvertedPrimeSet {
 public:
  /// Empty set: the ring is plain ℤ.
  InvertedPrimeSet() = default;

  /// From an explicit list; deduplicated and sorted.
  /// @throws DomainError if any member is not prime.
  explicit InvertedPrimeSet(std::vector<std::int64_t> primes);

  /// The prime divisors of |n| (the ring ℤ[1/n]).
  /// @throws DomainError if n == 0.
  static InvertedPrimeSet dividing(const mpz_class& n);

  bool contains(std::int64_t p) const;
  bool isSubsetOf(const InvertedPrimeSet& other) const;
  InvertedPrimeSet unionWith(const InvertedPrimeSet& other) const;

  /// True iff every prime factor of |n| is inverted (n a unit of Λ); n = ±1
  /// always qualifies.  @throws DomainError if n == 0.
  bool isUnit(const mpz_class& n) const;

  const std::vector<std::int64_t>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }

  /// Render as "Z" or "Z[1/2,1/3,...]".
  std::string toString() const;

  friend bool operator==(const InvertedPrimeSet&,
                         const InvertedPrimeSet&) = default;

 private:
  std::vector<std::int64_t> primes_;  // sorted, distinct, each prime
};

/// A reduced fraction in Λ: denominator's prime support ⊆ ring's primes.
class LambdaScalar {
 public:
  /// Zero over ℤ.
  LambdaScalar() : value_(0) {}

  /// Integers embed into any Λ.
  LambdaScalar(mpz_class n, InvertedPrimeSet ring);

  /// General element; canonicalized, then the denominator support is
  /// validated.  @throws DomainError if the denominator is not a Λ-unit.
  LambdaScalar(mpq_class v, InvertedPrimeSet ring);

  /// Convenience: num/den over the given ring.
  static LambdaScalar fraction(const mpz_class& num, const mpz_class& den,
                               InvertedPrimeSet ring);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const InvertedPrimeSet& ring() const { return ring_; }

  bool isZero() const { return value_ == 0; }
  bool isInteger() const { return value_.get_den() == 1; }
  /// Unit of Λ: nonzero, and the numerator is supported on inverted primes.
  bool isUnit() const;

  /// Multiplicative inverse.  @throws DomainError unless isUnit().
  LambdaScalar inverse() const;

  LambdaScalar operator-() const;
  LambdaScalar& operator+=(const LambdaScalar& o);
  LambdaScalar& operator-=(const LambdaScalar& o);
  LambdaScalar& operator*=(const LambdaScalar& o);
  friend LambdaScalar operator+(LambdaScalar a, const LambdaScalar& b) {
    return a += b;
  }
  friend LambdaScalar operator-(LambdaScalar a, const LambdaScalar& b) {
    return a -= b;
  }
  friend LambdaScalar operator*(LambdaScalar a, const LambdaScalar& b) {
    return a *= b;
  }

  friend bool operator==(const LambdaScalar& a, const LambdaScalar& b) {
    return a.value_ == b.value_;
  }

  std::string toString() const;

 private:
  /// Result ring of a binary operation: the larger of the two operand rings
  /// when one contains the other.  @throws DomainError for incomparable
  /// rings — mixing, say, ℤ[1/6] with ℤ[1/35] is almost surely a bug.
  static InvertedPrimeSet joinRings(const InvertedPrimeSet& a,
                                    const InvertedPrimeSet& b);

  mpq_class value_;
  InvertedPrimeSet ring_;
};

}  // namespace fdual::arith

#endif  // FDUAL_SCALAR_HPP
