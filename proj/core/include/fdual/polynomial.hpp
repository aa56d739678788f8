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
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients
 *        over weighted variables.
 *
 * Variables carry a weight (c_i has weight i, the rank symbol r weight 0, a
 * divisor-class symbol weight 1, ...), so "degree" always means weighted
 * degree and homogeneous components are extracted per weight.  Polynomials
 * over different variable tables interoperate: binary operations merge the
 * tables by name (weights must agree), which keeps call sites free of table
 * plumbing.
 */
#ifndef FDUAL_POLYNOMIAL_HPP
#define FDUAL_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdual::chern {

/// One polynomial variable: a name and a nonnegative weight.
struct PolyVar {
  std::string name;
  unsigned weight = 0;
  friend bool operator==(const PolyVar&, const PolyVar&) = default;
};

/// Immutable ordered list of variables, shared between polynomials.
class VarTable {
 public:
  VarTable() = default;
  /// @throws DomainError on duplicate names.
  explicit VarTable(std::vector<PolyVar> vars);

  static std::shared_ptr<const VarTable> make(std::vector<PolyVar> vars);

  /// Union of two tables: left's variables in order, then right's new ones.
  /// @throws DomainError if a shared name has conflicting weights.
  static std::shared_ptr<const VarTable> merge(
      const std::shared_ptr<const VarTable>& a,
      const std::shared_ptr<const VarTable>& b);

  std::size_t size() const { return vars_.size(); }
  const PolyVar& var(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> indexOf(std::string_view name) const;

  friend bool operator==(const VarTable&, const VarTable&) = default;

 private:
  std::vector<PolyVar> vars_;
};

/// Exponent vector over a VarTable (fixed length = table size).
using Exponents = std::vector<unsigned>;

class GradedPolynomial {
 public:
  /// Zero polynomial over the empty table.
  GradedPolynomial() : vars_(VarTable::make({})) {}
  explicit GradedPolynomial(std::shared_ptr<const VarTable> vars)
      : vars_(std::move(vars)) {}

  static GradedPolynomial constant(const mpq_class& c);
  static GradedPolynomial variable(const std::shared_ptr<const VarTable>& vars,
                                   std::string_view name);
  static GradedPolynomial monomial(const std::shared_ptr<const VarTable>& vars,
                                   Exponents exps, const mpq_class& coeff);

  const VarTable& table() const { return *vars_; }
  const std::shared_ptr<const VarTable>& tablePtr() const { return vars_; }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }
  mpq_class coefficient(const Exponents& e) const;
  /// Coefficient of a single-variable power, all other exponents zero.
  mpq_class coefficientOf(std::string_view name, unsigned power) const;

  /// Weighted degree of an exponent vector under this table.
  unsigned weightOf(const Exponents& e) const;
  /// Largest weighted degree among terms (0 for the zero polynomial).
  unsigned maxWeight() const;
  GradedPolynomial homogeneousPart(unsigned w) const;
  bool isHomogeneous(unsigned w) const;

  /// True iff every coefficient is an integer.
  bool isIntegral() const;
  /// Least common multiple of all coefficient denominators (1 for zero).
  mpz_class denominatorLcm() const;

  GradedPolynomial operator-() const;
  GradedPolynomial& operator+=(const GradedPolynomial& o);
  GradedPolynomial& operator-=(const GradedPolynomial& o);
  GradedPolynomial operator*(const GradedPolynomial& o) const;
  friend GradedPolynomial operator+(GradedPolynomial a,
                                    const GradedPolynomial& b) {
    return a += b;
  }
  friend GradedPolynomial operator-(GradedPolynomial a,
                                    const GradedPolynomial& b) {
    return a -= b;
  }

  GradedPolynomial& scale(const mpq_class& c);
  friend GradedPolynomial operator*(const mpq_class& c, GradedPolynomial p) {
    return p.scale(c);
  }

  GradedPolynomial pow(unsigned e) const;
  /// Product with all terms of weight > cap dropped (series-style).
  GradedPolynomial mulTruncated(const GradedPolynomial& o, unsigned cap) const;
  GradedPolynomial truncated(unsigned cap) const;

  /// Replace a variable by a polynomial (which may live over another table).
  GradedPolynomial substitute(std::string_view name,
                              const GradedPolynomial& value) const;

  /// Rename variables (weights unchanged).  Unlisted variables keep their
  /// names; collisions raise DomainError.
  GradedPolynomial withRenamedVariables(
      const std::vector<std::pair<std::string, std::string>>& renames) const;

  /// Structural equality as abstract polynomials: equal iff the difference
  /// is zero, regardless of the underlying tables.
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b);

  /// Human-readable rendering, terms in (weight, exponents) order.
  std::string toString() const;

 private:
  void addTerm(const Exponents& e, const mpq_class& c);
  /// Re-express over a supertable produced by VarTable::merge.
  GradedPolynomial mappedTo(const std::shared_ptr<const VarTable>& target) const;
  static void alignPair(const GradedPolynomial& a, const GradedPolynomial& b,
                        GradedPolynomial& outA, GradedPolynomial& outB);

  std::shared_ptr<const VarTable> vars_;
  std::map<Exponents, mpq_class> terms_;  // lex on exponent vectors; no zeros
};

}  // namespace fdual::chern

#endif  // FDUAL_POLYNOMIAL_HPP
