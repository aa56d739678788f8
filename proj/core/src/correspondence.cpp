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

#include "fdual/correspondence.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::chow {

namespace {

using arith::InvertedPrimeSet;
using arith::LambdaScalar;

/// Generalized binomial C(n, j) = n(n−1)…(n−j+1)/j! for any integer n ≥ or
/// < 0; always an integer.
mpz_class generalBinomial(std::int64_t n, unsigned j) {
  mpz_class num = 1;
  for (unsigned i = 0; i < j; ++i) num *= mpz_class(n) - i;
  mpz_class den = arith::factorial(j);
  mpz_class q = num / den;  // exact: product of j consecutive integers
  return q;
}

/// n^j as an exact integer, with 0^0 = 1.
mpz_class intPow(std::int64_t n, unsigned j) {
  mpz_class r = 1;
  for (unsigned i = 0; i < j; ++i) r *= n;
  return r;
}

}  // namespace

CorrespondenceElement::CorrespondenceElement(unsigned nilIndex,
                                             InvertedPrimeSet ring)
    : ring_(std::move(ring)) {
  if (nilIndex == 0)
    throw DomainError("CorrespondenceElement: nilIndex must be positive");
  coef_.assign(nilIndex, LambdaScalar(mpz_class(0), ring_));
}

CorrespondenceElement CorrespondenceElement::gamma(
    std::int64_t n, unsigned nilIndex, const InvertedPrimeSet& ring) {
  // t^n = (1+s)^n = Σ_j C(n,j)·s^j; exact because s^nilIndex = 0.
  CorrespondenceElement r(nilIndex, ring);
  for (unsigned j = 0; j < nilIndex; ++j)
    r.coef_[j] = LambdaScalar(generalBinomial(n, j), ring);
  return r;
}

CorrespondenceElement CorrespondenceElement::shiftPower(
    unsigned j, unsigned nilIndex, const InvertedPrimeSet& ring) {
  if (j >= nilIndex)
    throw DomainError("shiftPower: exponent " + std::to_string(j) +
                      " is outside the quotient (nilIndex " +
                      std::to_string(nilIndex) + ")");
  CorrespondenceElement r(nilIndex, ring);
  r.coef_[j] = LambdaScalar(mpz_class(1), ring);
  return r;
}

std::map<std::int64_t, LambdaScalar> CorrespondenceElement::gammaSupport()
    const {
  // s^j = (t−1)^j = Σ_n C(j,n)(−1)^{j−n}·t^n, a triangular change of basis.
  std::map<std::int64_t, LambdaScalar> support;
  const unsigned n = nilIndex();
  for (unsigned k = 0; k < n; ++k) {
    LambdaScalar a(mpz_class(0), ring_);
    for (unsigned j = k; j < n; ++j) {
      mpz_class c = arith::binomial(j, k);
      if ((j - k) % 2 == 1) c = -c;
      a += coef_[j] * LambdaScalar(c, ring_);
    }
    if (!a.isZero()) support.emplace(static_cast<std::int64_t>(k), std::move(a));
  }
  return support;
}

bool CorrespondenceElement::isZero() const {
  for (const auto& c : coef_)
    if (!c.isZero()) return false;
  return true;
}

CorrespondenceElement CorrespondenceElement::operator-() const {
  CorrespondenceElement r = *this;
  for (auto& c : r.coef_) c = -c;
  return r;
}

void CorrespondenceElement::requireCompatible(
    const CorrespondenceElement& o) const {
  if (nilIndex() != o.nilIndex())
    throw DomainError("correspondence arithmetic: nilIndex mismatch (" +
                      std::to_string(nilIndex()) + " vs " +
                      std::to_string(o.nilIndex()) + ")");
}

CorrespondenceElement& CorrespondenceElement::operator+=(
    const CorrespondenceElement& o) {
  requireCompatible(o);
  for (unsigned j = 0; j < coef_.size(); ++j) coef_[j] += o.coef_[j];
  return *this;
}

CorrespondenceElement& CorrespondenceElement::operator-=(
    const CorrespondenceElement& o) {
  requireCompatible(o);
  for (unsigned j = 0; j < coef_.size(); ++j) coef_[j] -= o.coef_[j];
  return *this;
}

CorrespondenceElement& CorrespondenceElement::scale(const LambdaScalar& c) {
  for (auto& a : coef_) a *= c;
  return *this;
}

CorrespondenceElement CorrespondenceElement::star(
    const CorrespondenceElement& o) const {
  requireCompatible(o);
  const unsigned n = nilIndex();
  CorrespondenceElement r(n, ring_);
  for (unsigned i = 0; i < n; ++i) {
    if (coef_[i].isZero()) continue;
    for (unsigned j = 0; i + j < n; ++j) r.coef_[i + j] += coef_[i] * o.coef_[j];
  }
  return r;
}

CorrespondenceElement CorrespondenceElement::starPow(unsigned e) const {
  CorrespondenceElement r = gamma(0, nilIndex(), ring_);  // ⋆-unit
  for (unsigned i = 0; i < e; ++i) r = r.star(*this);
  return r;
}

CorrespondenceElement CorrespondenceElement::compose(
    const CorrespondenceElement& o) const {
  requireCompatible(o);
  const auto lhs = gammaSupport();
  const auto rhs = o.gammaSupport();
  // Collect on Γ[m·n] first (indices up to (nilIndex−1)²), then reduce.
  std::map<std::int64_t, LambdaScalar> raw;
  for (const auto& [m, a] : lhs)
    for (const auto& [n, b] : rhs) {
      auto [it, fresh] = raw.try_emplace(m * n, a * b);
      if (!fresh) it->second += a * b;
    }
  CorrespondenceElement r(nilIndex(), ring_);
  for (const auto& [k, c] : raw) {
    CorrespondenceElement g = gamma(k, nilIndex(), ring_);
    g.scale(c);
    r += g;
  }
  return r;
}

LambdaScalar CorrespondenceElement::moment(unsigned j) const {
  if (j >= nilIndex())
    throw DomainError("moment: Φ_" + std::to_string(j) +
                      " is not well defined modulo (Γ[1]−Γ[0])^" +
                      std::to_string(nilIndex()));
  LambdaScalar sum(mpz_class(0), ring_);
  for (const auto& [n, a] : gammaSupport())
    sum += a * LambdaScalar(intPow(n, j), ring_);
  return sum;
}

std::string CorrespondenceElement::toString() const {
  const auto support = gammaSupport();
  if (support.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, a] : support) {
    const mpq_class& v = a.value();
    const bool negative = v < 0;
    mpq_class mag = negative ? mpq_class(-v) : v;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    if (mag == 1)
      os << "G[" << n << "]";
    else
      os << mag << "*G[" << n << "]";
  }
  return os.str();
}

CorrespondenceElement logGammaOne(unsigned nilIndex,
                                  const InvertedPrimeSet& ring) {
  // log(1+s) = Σ_{j=1}^{nilIndex−1} (−1)^{j−1} s^j / j.
  CorrespondenceElement r(nilIndex, ring);
  for (unsigned j = 1; j < nilIndex; ++j) {
    mpz_class num = (j % 2 == 1) ? 1 : -1;
    r += CorrespondenceElement::shiftPower(j, nilIndex, ring)
             .scale(LambdaScalar::fraction(num, j, ring));
  }
  return r;
}

std::vector<CorrespondenceElement> beauvilleProjectors(unsigned g, unsigned d,
                                                       unsigned nilIndex) {
  if (g < 1) throw DomainError("beauvilleProjectors: g must be ≥ 1");
  if (nilIndex != 2 * g + d + 1)
    throw DomainError("beauvilleProjectors: nilIndex must equal 2g+d+1 = " +
                      std::to_string(2 * g + d + 1) + ", got " +
                      std::to_string(nilIndex));
  const InvertedPrimeSet ring =
      InvertedPrimeSet::dividing(arith::factorial(nilIndex));
  const CorrespondenceElement logOne = logGammaOne(nilIndex, ring);

  std::vector<CorrespondenceElement> pi;
  pi.reserve(2 * g + 1);
  for (unsigned i = 0; i <= 2 * g; ++i) {
    CorrespondenceElement p = logOne.starPow(2 * g - i);
    p.scale(LambdaScalar::fraction(1, arith::factorial(2 * g - i), ring));
    pi.push_back(std::move(p));
  }

  // Self-check: the moments Φ_j distinguish every element of the quotient,
  // and each π_i must hit exactly the delta pattern Φ_j(π_i) = [j = 2g−i].
  for (unsigned i = 0; i <= 2 * g; ++i)
    for (unsigned j = 0; j <= 2 * g; ++j) {
      const LambdaScalar got = pi[i].moment(j);
      const mpq_class want = (j == 2 * g - i) ? 1 : 0;
      if (got.value() != want)
        throw InvariantError(
            "beauvilleProjectors: moment condition failed at (i=" +
            std::to_string(i) + ", j=" + std::to_string(j) +
            "): got " + got.toString());
    }
  return pi;
}

}  // namespace fdual::chow
