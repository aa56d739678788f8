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

#include "fdual/root_series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::chern {

BundleSpec BundleSpec::make(std::string name, unsigned rank) {
  BundleSpec b;
  b.rank = rank;
  b.roots.reserve(rank);
  for (unsigned i = 1; i <= rank; ++i) {
    b.roots.push_back(name + ".a" + std::to_string(i));
  }
  b.name = std::move(name);
  return b;
}

namespace series {

Univariate mul(const Univariate& a, const Univariate& b, unsigned cap) {
  Univariate r(cap + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

Univariate invert(const Univariate& u, unsigned cap) {
  if (u.empty() || u[0] == 0) {
    throw DomainError("series::invert: constant term must be nonzero");
  }
  Univariate v(cap + 1, 0);
  v[0] = 1 / u[0];
  for (unsigned n = 1; n <= cap; ++n) {
    mpq_class s = 0;
    for (unsigned i = 1; i <= n && i < u.size(); ++i) s += u[i] * v[n - i];
    v[n] = -s / u[0];
  }
  return v;
}

Univariate log(const Univariate& u, unsigned cap) {
  if (u.empty() || u[0] != 1) {
    throw DomainError("series::log: constant term must be 1");
  }
  // n·L_n = n·u_n − Σ_{i=1}^{n−1} u_i·(n−i)·L_{n−i}, from u·L' = u'.
  Univariate l(cap + 1, 0);
  for (unsigned n = 1; n <= cap; ++n) {
    mpq_class s = (n < u.size() ? u[n] : mpq_class(0)) * n;
    for (unsigned i = 1; i < n && i < u.size(); ++i) {
      s -= u[i] * mpq_class(n - i) * l[n - i];
    }
    l[n] = s / n;
  }
  return l;
}

Univariate exp(const Univariate& w, unsigned cap) {
  if (!w.empty() && w[0] != 0) {
    throw DomainError("series::exp: constant term must be 0");
  }
  // n·E_n = Σ_{i=1}^{n} i·w_i·E_{n−i}, from E' = w'·E.
  Univariate e(cap + 1, 0);
  e[0] = 1;
  for (unsigned n = 1; n <= cap; ++n) {
    mpq_class s = 0;
    for (unsigned i = 1; i <= n && i < w.size(); ++i) {
      s += mpq_class(i) * w[i] * e[n - i];
    }
    e[n] = s / n;
  }
  return e;
}

Univariate qInvSeries(unsigned cap) {
  Univariate u(cap + 1, 0);
  for (unsigned k = 0; k <= cap; ++k) {
    u[k] = mpq_class((k % 2 == 0) ? 1 : -1) / mpq_class(arith::factorial(k + 1));
  }
  return u;
}

Univariate qSeries(unsigned cap) { return invert(qInvSeries(cap), cap); }

}  // namespace series

// ---------------------------------------------------------------------------
// RootSeries
// ---------------------------------------------------------------------------

RootSeries::RootSeries(std::vector<std::string> roots, unsigned degreeCap)
    : roots_(std::move(roots)), cap_(degreeCap) {}

RootSeries RootSeries::constant(const mpq_class& c,
                                std::vector<std::string> roots,
                                unsigned degreeCap) {
  RootSeries s(std::move(roots), degreeCap);
  if (c != 0) s.terms_.emplace(Exponents(s.roots_.size(), 0), c);
  return s;
}

RootSeries RootSeries::univariateInRoot(const series::Univariate& u,
                                        std::size_t rootIndex,
                                        std::vector<std::string> roots,
                                        unsigned degreeCap) {
  RootSeries s(std::move(roots), degreeCap);
  if (rootIndex >= s.roots_.size()) {
    throw DomainError("RootSeries: root index out of range");
  }
  for (std::size_t k = 0; k < u.size() && k <= degreeCap; ++k) {
    if (u[k] == 0) continue;
    Exponents e(s.roots_.size(), 0);
    e[rootIndex] = static_cast<unsigned>(k);
    s.terms_.emplace(std::move(e), u[k]);
  }
  return s;
}

RootSeries RootSeries::elementarySymmetric(std::vector<std::string> roots,
                                           unsigned degreeCap,
                                           std::size_t begin, std::size_t end,
                                           unsigned k) {
  RootSeries s(std::move(roots), degreeCap);
  if (begin > end || end > s.roots_.size()) {
    throw DomainError("RootSeries: bad elementary symmetric range");
  }
  const std::size_t n = end - begin;
  if (k > n) return s;  // e_k vanishes
  if (k > degreeCap) return s;
  if (k == 0) {
    s.terms_.emplace(Exponents(s.roots_.size(), 0), 1);
    return s;
  }
  // All k-subsets of [begin, end).
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Exponents e(s.roots_.size(), 0);
    for (std::size_t idx : pick) e[begin + idx] = 1;
    s.terms_.emplace(std::move(e), 1);
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return s;
}

mpq_class RootSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

unsigned RootSeries::totalDegree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

void RootSeries::requireCompatible(const RootSeries& o, const char* op) const {
  if (roots_ != o.roots_ || cap_ != o.cap_) {
    throw DomainError(std::string("RootSeries: incompatible operands in ") +
                      op);
  }
}

void RootSeries::addTerm(const Exponents& e, const mpq_class& c) {
  if (totalDegree(e) > cap_) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else if (c == 0) {
    terms_.erase(it);
  }
}

RootSeries RootSeries::operator-() const {
  RootSeries s(roots_, cap_);
  for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
  return s;
}

RootSeries& RootSeries::operator+=(const RootSeries& o) {
  requireCompatible(o, "sum");
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

RootSeries& RootSeries::operator-=(const RootSeries& o) {
  requireCompatible(o, "difference");
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

RootSeries RootSeries::operator*(const RootSeries& o) const {
  requireCompatible(o, "product");
  RootSeries s(roots_, cap_);
  for (const auto& [e1, c1] : terms_) {
    const unsigned d1 = totalDegree(e1);
    for (const auto& [e2, c2] : o.terms_) {
      if (d1 + totalDegree(e2) > cap_) continue;
      Exponents e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      s.addTerm(e, c1 * c2);
    }
  }
  return s;
}

RootSeries& RootSeries::scale(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, coeff] : terms_) coeff *= c;
  }
  return *this;
}

RootSeries RootSeries::pow(unsigned e) const {
  RootSeries acc = constant(1, roots_, cap_);
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

RootSeries RootSeries::homogeneousPart(unsigned d) const {
  RootSeries s(roots_, cap_);
  for (const auto& [e, c] : terms_) {
    if (totalDegree(e) == d) s.terms_.emplace(e, c);
  }
  return s;
}

RootSeries RootSeries::withNegatedRoot(std::size_t idx) const {
  if (idx >= roots_.size()) {
    throw DomainError("RootSeries: root index out of range");
  }
  RootSeries s(roots_, cap_);
  for (const auto& [e, c] : terms_) {
    s.terms_.emplace(e, e[idx] % 2 == 0 ? c : -c);
  }
  return s;
}

bool RootSeries::isSymmetricIn(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > roots_.size()) return true;
  for (std::size_t i = begin; i + 1 < end; ++i) {
    for (const auto& [e, c] : terms_) {
      if (e[i] == e[i + 1]) continue;
      Exponents swapped = e;
      std::swap(swapped[i], swapped[i + 1]);
      if (coefficient(swapped) != c) return false;
    }
  }
  return true;
}

std::string RootSeries::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? "" : " + ") << c.get_str();
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << roots_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// rootsToChern
// ---------------------------------------------------------------------------

std::string chernPrefix(std::size_t bundleIndex) {
  return "c" + std::string(bundleIndex, '\'');
}

std::string chernVarName(const std::string& prefix, unsigned i) {
  return prefix + std::to_string(i);
}

GradedPolynomial rootsToChern(const RootSeries& s,
                              const std::vector<BundleSpec>& bundles) {
  // The series' roots must be the concatenation of the bundles' roots.
  std::vector<std::string> expected;
  for (const auto& b : bundles) {
    expected.insert(expected.end(), b.roots.begin(), b.roots.end());
  }
  if (expected != s.roots()) {
    throw DomainError("rootsToChern: series roots do not match bundles");
  }

  // Per-bundle symmetry is what makes the elimination well-defined.
  std::vector<std::size_t> offset(bundles.size() + 1, 0);
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    offset[b + 1] = offset[b] + bundles[b].rank;
    if (!s.isSymmetricIn(offset[b], offset[b + 1])) {
      throw DomainError("rootsToChern: series not symmetric in roots of " +
                        bundles[b].name);
    }
  }

  // Output variables: bundle i contributes <prefix_i>1..<prefix_i>rank_i.
  std::vector<PolyVar> vars;
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    for (unsigned i = 1; i <= bundles[b].rank; ++i) {
      vars.push_back({chernVarName(chernPrefix(b), i), i});
    }
  }
  auto table = VarTable::make(std::move(vars));

  GradedPolynomial out(table);
  RootSeries residual = s;
  while (!residual.isZero()) {
    // Lex-leading term: the largest exponent vector in the map order.
    const auto& [lead, coeff] = *residual.terms().rbegin();

    // Per bundle, the restriction of a symmetric leading exponent is a
    // partition λ_1 ≥ λ_2 ≥ …; the eliminating monomial is
    // ∏_i e_i^{λ_i − λ_{i+1}}.
    Exponents cExps(table->size(), 0);
    RootSeries eliminator =
        RootSeries::constant(1, residual.roots(), residual.degreeCap());
    std::size_t varPos = 0;
    for (std::size_t b = 0; b < bundles.size(); ++b) {
      const unsigned rank = bundles[b].rank;
      for (std::size_t i = offset[b]; i + 1 < offset[b + 1]; ++i) {
        if (lead[i] < lead[i + 1]) {
          throw DomainError(
              "rootsToChern: leading exponent not a partition; series is "
              "not symmetric");
        }
      }
      for (unsigned i = 1; i <= rank; ++i) {
        const unsigned cur = lead[offset[b] + i - 1];
        const unsigned next = i < rank ? lead[offset[b] + i] : 0;
        const unsigned mult = cur - next;
        if (mult > 0) {
          cExps[varPos + i - 1] = mult;
          RootSeries ei = RootSeries::elementarySymmetric(
              residual.roots(), residual.degreeCap(), offset[b],
              offset[b + 1], i);
          eliminator = eliminator * ei.pow(mult);
        }
      }
      varPos += rank;
    }

    out += GradedPolynomial::monomial(table, cExps, coeff);
    eliminator.scale(coeff);
    residual -= eliminator;
  }
  return out;
}

}  // namespace fdual::chern
