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

#include "fdual/taut_model.hpp"

#include <chrono>
#include <utility>

#include "fdual/correspondence.hpp"
#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::chow {

namespace {

using arith::InvertedPrimeSet;
using arith::LambdaScalar;
using chern::GradedPolynomial;

class Stopwatch {
 public:
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

mpz_class intPow(std::int64_t n, unsigned e) {
  mpz_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= n;
  return r;
}

std::shared_ptr<const chern::VarTable> ellTable() {
  static const std::shared_ptr<const chern::VarTable> table =
      chern::VarTable::make({{"l", 1}});
  return table;
}

/// residual += Σ_i |diff_i|·l^i, so failures in distinct checks accumulate
/// instead of cancelling.
void accumulateAbs(GradedPolynomial& residual, const TautClass& diff) {
  const auto& c = diff.coefficients();
  for (unsigned i = 0; i < c.size(); ++i) {
    if (c[i].isZero()) continue;
    mpq_class mag = c[i].value() < 0 ? mpq_class(-c[i].value()) : c[i].value();
    residual += GradedPolynomial::monomial(ellTable(), {i}, mag);
  }
}

}  // namespace

TautModel buildModel(unsigned g, std::int64_t nu) {
  if (g < 1) throw DomainError("buildModel: g must be ≥ 1");
  if (nu < 1) throw DomainError("buildModel: nu must be ≥ 1");
  TautModel m;
  m.g = g;
  m.d = 0;
  m.nu = nu;
  m.ring = InvertedPrimeSet::dividing(nu * arith::factorial(2 * g + 1));
  return m;
}

TautClass::TautClass(TautModel model) : model_(std::move(model)) {
  coef_.assign(model_.g + 1, LambdaScalar(mpz_class(0), model_.ring));
}

TautClass::TautClass(TautModel model,
                     std::vector<arith::LambdaScalar> coefficients)
    : model_(std::move(model)) {
  if (coefficients.size() != model_.g + 1)
    throw DomainError("TautClass: expected " + std::to_string(model_.g + 1) +
                      " coefficients, got " +
                      std::to_string(coefficients.size()));
  coef_.reserve(coefficients.size());
  for (const auto& c : coefficients)
    coef_.emplace_back(c.value(), model_.ring);  // re-validate denominators
}

TautClass TautClass::ellPower(const TautModel& model, unsigned i) {
  if (i > model.g)
    throw DomainError("ellPower: degree " + std::to_string(i) +
                      " exceeds g = " + std::to_string(model.g));
  TautClass r(model);
  r.coef_[i] = LambdaScalar(mpz_class(1), model.ring);
  return r;
}

const LambdaScalar& TautClass::coefficient(unsigned i) const {
  if (i >= coef_.size())
    throw DomainError("TautClass::coefficient: index out of range");
  return coef_[i];
}

bool TautClass::isZero() const {
  for (const auto& c : coef_)
    if (!c.isZero()) return false;
  return true;
}

void TautClass::requireSameModel(const TautClass& o) const {
  if (!(model_ == o.model_))
    throw DomainError("tautological classes live in different models (g=" +
                      std::to_string(model_.g) + ",nu=" +
                      std::to_string(model_.nu) + " vs g=" +
                      std::to_string(o.model_.g) + ",nu=" +
                      std::to_string(o.model_.nu) + ")");
}

TautClass TautClass::operator-() const {
  TautClass r = *this;
  for (auto& c : r.coef_) c = -c;
  return r;
}

TautClass& TautClass::operator+=(const TautClass& o) {
  requireSameModel(o);
  for (unsigned i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

TautClass& TautClass::operator-=(const TautClass& o) {
  requireSameModel(o);
  for (unsigned i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

TautClass& TautClass::scale(const LambdaScalar& c) {
  for (auto& a : coef_) a *= c;
  return *this;
}

TautClass TautClass::operator*(const TautClass& o) const {
  requireSameModel(o);
  TautClass r(model_);
  for (unsigned i = 0; i < coef_.size(); ++i) {
    if (coef_[i].isZero()) continue;
    for (unsigned j = 0; i + j <= model_.g; ++j)
      r.coef_[i + j] += coef_[i] * o.coef_[j];
  }
  return r;
}

GradedPolynomial TautClass::toPolynomial() const {
  GradedPolynomial p(ellTable());
  for (unsigned i = 0; i < coef_.size(); ++i) {
    if (coef_[i].isZero()) continue;
    p += GradedPolynomial::monomial(ellTable(), {i}, coef_[i].value());
  }
  return p;
}

std::string TautClass::toString() const { return toPolynomial().toString(); }

TautClass pointClass(const TautModel& model) {
  TautClass r = TautClass::ellPower(model, model.g);
  r.scale(LambdaScalar::fraction(
      1, model.nu * arith::factorial(model.g), model.ring));
  return r;
}

TautClass lambdaClass(const TautModel& model) {
  TautClass r = TautClass::ellPower(model, model.g - 1);
  r.scale(LambdaScalar::fraction(
      1, model.nu * arith::factorial(model.g - 1), model.ring));
  return r;
}

TautClass expEll(const TautModel& model, int sign) {
  TautClass r(model);
  std::vector<LambdaScalar> c;
  for (unsigned i = 0; i <= model.g; ++i) {
    mpz_class num = (sign < 0 && i % 2 == 1) ? -1 : 1;
    c.push_back(LambdaScalar::fraction(num, arith::factorial(i), model.ring));
  }
  return TautClass(model, std::move(c));
}

TautClass fourier(const TautClass& x) {
  const TautModel& m = x.model();
  if (m.nu != 1)
    throw DomainError(
        "fourier: only the principally polarized model (nu = 1) carries the "
        "self-dual transform; got nu = " + std::to_string(m.nu));
  const unsigned g = m.g;
  TautClass r(m);
  std::vector<LambdaScalar> out(g + 1, LambdaScalar(mpz_class(0), m.ring));
  for (unsigned i = 0; i <= g; ++i) {
    if (x.coefficient(i).isZero()) continue;
    // F(ℓ^i) = (−1)^{g−i}·(i!/(g−i)!)·ℓ^{g−i}  (frozen from the oracle).
    mpq_class f(arith::factorial(i), arith::factorial(g - i));
    f.canonicalize();
    if ((g - i) % 2 == 1) f = -f;
    out[g - i] = x.coefficient(i) * LambdaScalar(f, m.ring);
  }
  return TautClass(m, std::move(out));
}

TautClass pontryagin(const TautClass& x, const TautClass& y) {
  if (!(x.model() == y.model()))
    throw DomainError("pontryagin: operands live in different models");
  const TautModel& m = x.model();
  if (m.nu != 1)
    throw DomainError("pontryagin: defined through the Fourier transform, "
                      "which requires nu = 1");
  // x⋆y = F^{−1}(F(x)·F(y)) with F^{−1} = (−1)^g·[−1]^*·F.
  TautClass r = fourier(fourier(x) * fourier(y));
  r = multPull(-1, r);
  if (m.g % 2 == 1) r = -r;
  return r;
}

TautClass multPull(std::int64_t n, const TautClass& x) {
  const TautModel& m = x.model();
  std::vector<LambdaScalar> out;
  for (unsigned i = 0; i <= m.g; ++i)
    out.push_back(x.coefficient(i) *
                  LambdaScalar(intPow(n, 2 * i), m.ring));
  return TautClass(m, std::move(out));
}

TautClass multPush(std::int64_t n, const TautClass& x) {
  const TautModel& m = x.model();
  std::vector<LambdaScalar> out;
  for (unsigned i = 0; i <= m.g; ++i)
    out.push_back(x.coefficient(i) *
                  LambdaScalar(intPow(n, 2 * (m.g - i)), m.ring));
  return TautClass(m, std::move(out));
}

arith::LambdaScalar baseIntegral(const TautClass& x) {
  const TautModel& m = x.model();
  return x.coefficient(m.g) *
         LambdaScalar(mpz_class(m.nu * arith::factorial(m.g)), m.ring);
}

TautClass applyCorrespondencePush(const CorrespondenceElement& c,
                                  const TautClass& x) {
  TautClass sum(x.model());
  for (const auto& [n, a] : c.gammaSupport()) {
    TautClass term = multPush(n, x);
    term.scale(LambdaScalar(a.value(), x.model().ring));
    sum += term;
  }
  return sum;
}

TautClass applyCorrespondencePull(const CorrespondenceElement& c,
                                  const TautClass& x) {
  TautClass sum(x.model());
  for (const auto& [n, a] : c.gammaSupport()) {
    TautClass term = multPull(n, x);
    term.scale(LambdaScalar(a.value(), x.model().ring));
    sum += term;
  }
  return sum;
}

ident::IdentityReport verifyFourierModel(unsigned g) {
  Stopwatch sw;
  const TautModel m = buildModel(g, 1);
  GradedPolynomial residual(ellTable());

  // F∘F = (−1)^g·[−1]^* on the basis.
  for (unsigned i = 0; i <= g; ++i) {
    const TautClass li = TautClass::ellPower(m, i);
    TautClass lhs = fourier(fourier(li));
    TautClass rhs = multPull(-1, li);
    if (g % 2 == 1) rhs = -rhs;
    accumulateAbs(residual, lhs - rhs);
  }

  // F exchanges ⋆ with · in both directions, on all basis pairs.
  for (unsigned i = 0; i <= g; ++i)
    for (unsigned j = 0; j <= g; ++j) {
      const TautClass li = TautClass::ellPower(m, i);
      const TautClass lj = TautClass::ellPower(m, j);
      accumulateAbs(residual,
                    fourier(pontryagin(li, lj)) - fourier(li) * fourier(lj));
      TautClass star = pontryagin(fourier(li), fourier(lj));
      if (g % 2 == 1) star = -star;
      accumulateAbs(residual, fourier(li * lj) - star);
    }

  // Normalization ℓ^g = ν·g!·[pt] and the degree-(g−1) class λ with
  // F(ℓ) = (−1)^{g−1}·λ.
  {
    TautClass pt = pointClass(m);
    pt.scale(LambdaScalar(mpz_class(m.nu * arith::factorial(g)), m.ring));
    accumulateAbs(residual, TautClass::ellPower(m, g) - pt);

    TautClass lam = lambdaClass(m);
    if (g % 2 == 0) lam = -lam;  // (−1)^{g−1}
    accumulateAbs(residual, fourier(TautClass::ellPower(m, 1)) - lam);
  }

  ident::IdentityReport report;
  report.identityName = "fourier-model";
  report.parameters = {{"g", g}, {"nu", 1}};
  report.residual = residual;
  report.pass = residual.isZero();
  report.elapsed = sw.elapsed();
  return report;
}

ident::IdentityReport twistedExponentialCheck(const TautModel& model) {
  Stopwatch sw;
  GradedPolynomial residual(ellTable());

  // θ^*F(exp ℓ) = baseIntegral(exp ℓ)·exp(−ℓ) by the projection formula;
  // the claim it equals ν·exp(−ℓ) is exactly baseIntegral(exp ℓ) = ν.
  TautClass lhs = expEll(model, -1);
  lhs.scale(baseIntegral(expEll(model, 1)));
  TautClass rhs = expEll(model, -1);
  rhs.scale(LambdaScalar(mpz_class(model.nu), model.ring));
  accumulateAbs(residual, lhs - rhs);

  ident::IdentityReport report;
  report.identityName = "twisted-exp";
  report.parameters = {{"g", model.g}, {"nu", model.nu}};
  report.residual = residual;
  report.pass = residual.isZero();
  report.elapsed = sw.elapsed();
  return report;
}

}  // namespace fdual::chow
