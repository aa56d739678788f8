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
 * @file matrix.hpp
 * @brief Exact integer matrices, optionally with ℤ/p^k entries, and Smith
 *        normal form over a localized ring Λ or over ℤ/p^k.
 *
 * smithNormalForm produces U·M·V = D where U and V are invertible over the
 * ring (their determinants are Λ-units, resp. units mod p^k) and D is
 * diagonal, divisibility-sorted, with every inverted-prime factor stripped
 * from the diagonal.  Stripping is what makes D canonical over Λ rather than
 * over ℤ: diag(2,3) over ℤ[1/6] normalizes to the identity.  The price is
 * that U picks up denominators supported on the inverted primes, hence the
 * rational matrix type for U and V.
 */
#ifndef FDUAL_MATRIX_HPP
#define FDUAL_MATRIX_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fdual/scalar.hpp"

namespace fdual::arith {

/// Dense matrix of exact integers; an optional modulus p^k turns it into a
/// matrix over ℤ/p^k with entries kept reduced to [0, p^k).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix fromRows(const std::vector<std::vector<mpz_class>>& rows);
  static IntMatrix diagonal(const std::vector<mpz_class>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpz_class& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, mpz_class v);

  /// Reduce all entries into ℤ/p^k and remember the modulus.
  /// @throws DomainError unless p is prime and k ≥ 1.
  void imposeModulus(std::int64_t p, unsigned k);
  bool hasModulus() const { return modPrime_ != 0; }
  std::int64_t modPrime() const { return modPrime_; }
  unsigned modExponent() const { return modExp_; }
  /// p^k, or 0 when no modulus is set.
  mpz_class modulusValue() const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool isZero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string toString() const;

 private:
  void reduceEntry(mpz_class& e) const;
  void requireSameShapeAndModulus(const IntMatrix& o, const char* op) const;

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> entries_;  // row-major
  std::int64_t modPrime_ = 0;       // 0 = entries live in ℤ
  unsigned modExp_ = 0;
};

/// Dense matrix of exact rationals; carries the transforms U, V of a Smith
/// decomposition (whose entries lie in Λ) and small exact linear algebra.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix fromInt(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpq_class& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, mpq_class v);

  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  bool isZero() const;

  /// Exact determinant by fraction-free-ish Gaussian elimination.
  /// @throws DomainError unless square.
  mpq_class determinant() const;

  /// Exact inverse by Gauss–Jordan elimination.
  /// @throws DomainError unless square and nonsingular.
  RatMatrix inverse() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  std::string toString() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> entries_;  // row-major
};

/// U·M·V = D with D diagonal over the ring.  See file comment.
struct SmithDecomposition {
  RatMatrix U;  ///< rows × rows, invertible over the ring
  IntMatrix D;  ///< diagonal; stripped of inverted primes; d_i | d_{i+1}
  RatMatrix V;  ///< cols × cols, invertible over the ring

  /// Diagonal entries of D, in order (length min(rows, cols)).
  std::vector<mpz_class> diagonal() const;
};

/// Smith normal form of M over Λ (ring) or over ℤ/p^k when M carries a
/// modulus.  Deterministic: the pivot is the entry of minimal p-adic
/// valuation at the smallest un-inverted prime (the modulus prime in the
/// ℤ/p^k case), ties broken in row-major order.
///
/// @throws DomainError if M's modulus prime is itself inverted in `ring`.
/// @throws InvariantError if the internal verification U·M·V = D fails.
SmithDecomposition smithNormalForm(const IntMatrix& m,
                                   const InvertedPrimeSet& ring);

}  // namespace fdual::arith

#endif  // FDUAL_MATRIX_HPP
