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
 * @file root_series.hpp
 * @brief Truncated power series in formal bundle roots, and the reduction of
 *        symmetric series to polynomials in Chern classes.
 *
 * A RootSeries lives in a fixed ordered list of degree-1 root symbols and
 * truncates eagerly above its degree cap.  rootsToChern implements iterated
 * lexicographic leading-term elimination against elementary symmetric
 * functions — the classical constructive proof of the fundamental theorem of
 * symmetric functions — separately per bundle, relabeling bundle i's
 * elementary symmetric functions as the Chern variables c, c', c'', ....
 */
#ifndef FDUAL_ROOT_SERIES_HPP
#define FDUAL_ROOT_SERIES_HPP

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fdual/polynomial.hpp"

namespace fdual::chern {

/// A formal bundle: a name, a rank, and one root symbol per rank unit.
struct BundleSpec {
  std::string name;
  unsigned rank = 0;
  std::vector<std::string> roots;

  /// Roots named "<name>.a1" .. "<name>.a<rank>".
  static BundleSpec make(std::string name, unsigned rank);
};

namespace series {

/// Dense univariate series: coeffs[i] is the coefficient of x^i.
using Univariate = std::vector<mpq_class>;

Univariate mul(const Univariate& a, const Univariate& b, unsigned cap);
/// 1/u; requires u[0] ≠ 0.
Univariate invert(const Univariate& u, unsigned cap);
/// log u; requires u[0] = 1.
Univariate log(const Univariate& u, unsigned cap);
/// exp w; requires w[0] = 0.
Univariate exp(const Univariate& w, unsigned cap);
/// Q(x) = x/(1−e^{−x}) = 1 + x/2 + x²/12 − x⁴/720 + …
Univariate qSeries(unsigned cap);
/// Q(x)^{−1} = (1−e^{−x})/x = Σ_k (−1)^k x^k/(k+1)!.
Univariate qInvSeries(unsigned cap);

}  // namespace series

/// Truncated multivariate series in root symbols (all of weight 1).
class RootSeries {
 public:
  RootSeries(std::vector<std::string> roots, unsigned degreeCap);

  static RootSeries constant(const mpq_class& c, std::vector<std::string> roots,
                             unsigned degreeCap);
  /// The univariate series u(α_rootIndex) as a RootSeries.
  static RootSeries univariateInRoot(const series::Univariate& u,
                                     std::size_t rootIndex,
                                     std::vector<std::string> roots,
                                     unsigned degreeCap);
  /// Elementary symmetric function e_k of the roots with indices in
  /// [begin, end); e_0 = 1.
  static RootSeries elementarySymmetric(std::vector<std::string> roots,
                                        unsigned degreeCap, std::size_t begin,
                                        std::size_t end, unsigned k);

  const std::vector<std::string>& roots() const { return roots_; }
  unsigned degreeCap() const { return cap_; }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  mpq_class coefficient(const Exponents& e) const;

  RootSeries operator-() const;
  RootSeries& operator+=(const RootSeries& o);
  RootSeries& operator-=(const RootSeries& o);
  RootSeries operator*(const RootSeries& o) const;
  friend RootSeries operator+(RootSeries a, const RootSeries& b) {
    return a += b;
  }
  friend RootSeries operator-(RootSeries a, const RootSeries& b) {
    return a -= b;
  }
  RootSeries& scale(const mpq_class& c);
  friend RootSeries operator*(const mpq_class& c, RootSeries s) {
    s.scale(c);
    return s;
  }
  RootSeries pow(unsigned e) const;

  RootSeries homogeneousPart(unsigned d) const;
  /// Substitute α_idx → −α_idx (dual-bundle roots by sign flip).
  RootSeries withNegatedRoot(std::size_t idx) const;

  /// Invariance under all adjacent transpositions of roots in [begin, end).
  bool isSymmetricIn(std::size_t begin, std::size_t end) const;

  friend bool operator==(const RootSeries&, const RootSeries&) = default;

  std::string toString() const;

 private:
  void addTerm(const Exponents& e, const mpq_class& c);
  static unsigned totalDegree(const Exponents& e);
  void requireCompatible(const RootSeries& o, const char* op) const;

  std::vector<std::string> roots_;
  unsigned cap_ = 0;
  std::map<Exponents, mpq_class> terms_;
};

/// Chern-variable prefix of bundle i in rootsToChern output: "c", "c'", "c''".
std::string chernPrefix(std::size_t bundleIndex);
/// Variable name "<prefix><i>", e.g. chernVarName("c'", 2) = "c'2".
std::string chernVarName(const std::string& prefix, unsigned i);

/// Rewrite a series, symmetric in each bundle's roots separately, as a
/// polynomial in the bundles' Chern classes.  The series' root list must be
/// exactly the concatenation of the bundles' root lists.
/// @throws DomainError if the input is not symmetric per bundle.
GradedPolynomial rootsToChern(const RootSeries& s,
                              const std::vector<BundleSpec>& bundles);

}  // namespace fdual::chern

#endif  // FDUAL_ROOT_SERIES_HPP
