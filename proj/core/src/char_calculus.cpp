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

#include "fdual/char_calculus.hpp"

#include <algorithm>
#include <vector>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"
#include "fdual/root_series.hpp"
#include "fdual/tm.hpp"

namespace fdual::chern {

namespace {

/// Table of Chern variables <prefix>1..<prefix>n (weights 1..n).
std::shared_ptr<const VarTable> chernTable(unsigned n,
                                           const std::string& prefix) {
  std::vector<PolyVar> vars;
  vars.reserve(n);
  for (unsigned i = 1; i <= n; ++i) {
    vars.push_back({chernVarName(prefix, i), i});
  }
  return VarTable::make(std::move(vars));
}

/// p_1..p_maxK over <prefix> variables, with e_i = 0 for i > rank.
/// Index 0 is unused (the rank-dependent p_0 is handled by callers).
std::vector<GradedPolynomial> newtonPowerSums(unsigned maxK, unsigned rank,
                                              const std::string& prefix) {
  const unsigned nvars = std::min(maxK, rank);
  auto table = chernTable(nvars, prefix);
  auto e = [&](unsigned i) {
    // e_i as a polynomial: a variable for i ≤ rank, zero beyond.
    if (i == 0) return GradedPolynomial::constant(1);
    if (i > rank || i > maxK) return GradedPolynomial(table);
    return GradedPolynomial::variable(table, chernVarName(prefix, i));
  };
  std::vector<GradedPolynomial> p(maxK + 1, GradedPolynomial(table));
  for (unsigned k = 1; k <= maxK; ++k) {
    // Newton: p_k = Σ_{i=1}^{k−1} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k.
    GradedPolynomial acc(table);
    for (unsigned i = 1; i < k; ++i) {
      GradedPolynomial term = e(i) * p[k - i];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    GradedPolynomial last = e(k);
    last.scale(mpq_class(k));
    if (k % 2 == 0) last = -last;
    acc += last;
    p[k] = std::move(acc);
  }
  return p;
}

/// exp of a positive-weight polynomial, truncated at weighted degree cap.
GradedPolynomial expTruncated(const GradedPolynomial& x, unsigned cap) {
  GradedPolynomial sum = GradedPolynomial::constant(1);
  GradedPolynomial term = GradedPolynomial::constant(1);
  for (unsigned j = 1; j <= cap; ++j) {
    term = term.mulTruncated(x, cap);
    term.scale(mpq_class(1, j));  // running x^j/j!
    if (term.isZero()) break;
    sum += term;
  }
  return sum;
}

/// Weight-m component of exp(Σ_k coeffs[k]·p_k) with e_i = 0 beyond rank.
GradedPolynomial expOfPowerSumLinear(const series::Univariate& coeffs,
                                     unsigned m, unsigned rank,
                                     const std::string& prefix) {
  if (m == 0) return GradedPolynomial::constant(1);
  auto p = newtonPowerSums(m, rank, prefix);
  GradedPolynomial linear;
  for (unsigned k = 1; k <= m && k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    GradedPolynomial term = p[k];
    term.scale(coeffs[k]);
    linear += term;
  }
  return expTruncated(linear, m).homogeneousPart(m);
}

}  // namespace

GradedPolynomial newtonPowerSum(unsigned k, unsigned rank,
                                const std::string& prefix) {
  if (k == 0) {
    throw DomainError("newtonPowerSum: p_0 is rank-dependent; handle at call "
                      "site");
  }
  return newtonPowerSums(k, rank, prefix)[k];
}

GradedPolynomial toddComponent(unsigned m, unsigned rank) {
  const series::Univariate logQ = series::log(series::qSeries(m), m);
  return expOfPowerSumLinear(logQ, m, rank, "c");
}

GradedPolynomial fTd(unsigned m, unsigned rank) {
  GradedPolynomial p = toddComponent(m, rank);
  p.scale(mpq_class(arith::bigT(m)));
  if (!p.isIntegral()) {
    throw InvariantError("fTd: T_" + std::to_string(m) +
                         "·Td_" + std::to_string(m) + " is not integral");
  }
  return p;
}

GradedPolynomial chernCharComponent(unsigned m) {
  if (m == 0) {
    auto table = VarTable::make({{kRankVar, 0}});
    return GradedPolynomial::variable(table, kRankVar);
  }
  // fs_m = m!·ch_m = p_m, rank-generic (all of c'_1..c'_m kept).
  return newtonPowerSum(m, m, chernPrefix(1));
}

GradedPolynomial fTdInv(unsigned rank, unsigned n) {
  if (rank < 1) throw DomainError("fTdInv: rank must be ≥ 1");
  const series::Univariate logQInv = series::log(series::qInvSeries(n), n);
  GradedPolynomial p = expOfPowerSumLinear(logQInv, n, rank, "c");
  p.scale(mpq_class(arith::factorial(n + rank)));
  if (!p.isIntegral()) {
    throw InvariantError("fTdInv: (n+rank)!·{∏Q^{-1}}_n not integral at rank " +
                         std::to_string(rank) + ", n = " + std::to_string(n));
  }
  return p;
}

GradedPolynomial fCT(unsigned m) {
  GradedPolynomial sum;
  for (unsigned j = 0; j <= m; ++j) {
    // T_m/(j!·T_{m−j}), certified integral.
    std::vector<unsigned> ms;
    if (j >= 1) ms.push_back(j - 1);
    const mpz_class coeff = arith::divisibilityWitness(ms, {m - j}, m);
    GradedPolynomial term = chernCharComponent(j) * fTd(m - j, m - j);
    term.scale(mpq_class(coeff));
    sum += term;
  }
  return sum;
}

}  // namespace fdual::chern
