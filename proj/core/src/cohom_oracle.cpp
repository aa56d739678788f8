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

#include "fdual/cohom_oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"
#include "fdual/taut_model.hpp"

namespace fdual::cohom {

namespace {

class Stopwatch {
 public:
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

/// Sign of reordering the concatenation a·b into ascending index order:
/// parity of the number of pairs (i ∈ a, j ∈ b) with i > j.
int wedgeSign(std::uint32_t a, std::uint32_t b) {
  unsigned inversions = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(rest));
    inversions += static_cast<unsigned>(std::popcount(a >> (j + 1)));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Coefficient of the top monomial in a·b — the Poincaré pairing — without
/// materializing the product: each term of a pairs with exactly the
/// complementary mask of b.
mpq_class topPairing(const ExtClass& a, const ExtClass& b) {
  const std::uint32_t top = a.algebra()->topMask();
  mpq_class s = 0;
  for (const auto& [x, cx] : a.terms()) {
    const auto it = b.terms().find(top ^ x);
    if (it == b.terms().end()) continue;
    if (wedgeSign(x, top ^ x) > 0)
      s += cx * it->second;
    else
      s -= cx * it->second;
  }
  return s;
}

/// Validate the oracle dimension before any algebra is sized from it.
unsigned checkedOracleDim(unsigned g) {
  if (g < 1 || g > 3)
    throw DomainError("CohomologyOracle: the 2^{4g} product basis limits g "
                      "to 1..3, got g = " + std::to_string(g));
  return g;
}

/// "x1", "y1", …, "xg", "yg" with `primes` trailing apostrophes.  The
/// interleaved (x_i, y_i) order matters: it makes the ascending product
/// x1∧y1∧…∧xg∧yg — the top monomial integrate() pairs against — equal to
/// ℓ^g/g!, so mask-order integration IS integration against the geometric
/// fundamental class and Poincaré-adjoint pushforwards carry no stray sign.
std::vector<std::string> blockNames(unsigned g, unsigned primes) {
  std::vector<std::string> names;
  const std::string suffix(primes, '\'');
  for (unsigned i = 1; i <= g; ++i) {
    names.push_back("x" + std::to_string(i) + suffix);
    names.push_back("y" + std::to_string(i) + suffix);
  }
  return names;
}

std::vector<std::string> concatNames(std::vector<std::string> a,
                                     const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::shared_ptr<const ExtAlgebra> ExtAlgebra::make(
    std::vector<std::string> names) {
  if (names.empty() || names.size() > 30)
    throw DomainError("ExtAlgebra: need between 1 and 30 generators, got " +
                      std::to_string(names.size()));
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw DomainError("ExtAlgebra: duplicate generator name");
  return std::shared_ptr<const ExtAlgebra>(new ExtAlgebra(std::move(names)));
}

ExtClass::ExtClass(std::shared_ptr<const ExtAlgebra> algebra)
    : alg_(std::move(algebra)) {
  if (!alg_) throw DomainError("ExtClass: null algebra");
}

ExtClass ExtClass::monomial(std::shared_ptr<const ExtAlgebra> algebra,
                            std::uint32_t mask, const mpq_class& coeff) {
  ExtClass r(std::move(algebra));
  if (mask > r.alg_->topMask())
    throw DomainError("ExtClass::monomial: mask outside the algebra");
  r.addTerm(mask, coeff);
  return r;
}

ExtClass ExtClass::unit(std::shared_ptr<const ExtAlgebra> algebra) {
  return monomial(std::move(algebra), 0, 1);
}

ExtClass ExtClass::generator(std::shared_ptr<const ExtAlgebra> algebra,
                             unsigned index) {
  if (index >= algebra->count())
    throw DomainError("ExtClass::generator: index out of range");
  return monomial(std::move(algebra), std::uint32_t{1} << index, 1);
}

mpq_class ExtClass::coefficient(std::uint32_t mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void ExtClass::addTerm(std::uint32_t mask, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(mask, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void ExtClass::requireSameAlgebra(const ExtClass& o) const {
  if (alg_ != o.alg_)
    throw DomainError("exterior classes live in different algebras");
}

ExtClass ExtClass::operator-() const {
  ExtClass r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ExtClass& ExtClass::operator+=(const ExtClass& o) {
  requireSameAlgebra(o);
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

ExtClass& ExtClass::operator-=(const ExtClass& o) {
  requireSameAlgebra(o);
  for (const auto& [m, c] : o.terms_) addTerm(m, mpq_class(-c));
  return *this;
}

ExtClass ExtClass::operator*(const ExtClass& o) const {
  requireSameAlgebra(o);
  ExtClass r(alg_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      if ((ma & mb) != 0) continue;  // repeated generator
      mpq_class c = ca * cb;
      if (wedgeSign(ma, mb) < 0) c = -c;
      r.addTerm(ma | mb, c);
    }
  return r;
}

ExtClass& ExtClass::scale(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ExtClass ExtClass::pow(unsigned e) const {
  ExtClass r = unit(alg_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

ExtClass ExtClass::homogeneousPart(unsigned degree) const {
  ExtClass r(alg_);
  for (const auto& [m, c] : terms_)
    if (static_cast<unsigned>(std::popcount(m)) == degree) r.addTerm(m, c);
  return r;
}

std::string ExtClass::toString() const {
  if (terms_.empty()) return "0";
  // Degree-major ordering reads better than raw mask order.
  std::vector<std::pair<std::uint32_t, mpq_class>> sorted(terms_.begin(),
                                                          terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int da = std::popcount(a.first), db = std::popcount(b.first);
    if (da != db) return da < db;
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    const bool negative = c < 0;
    mpq_class mag = negative ? mpq_class(-c) : c;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    std::ostringstream vars;
    bool hasVar = false;
    for (std::uint32_t rest = m; rest != 0; rest &= rest - 1) {
      if (hasVar) vars << "*";
      vars << alg_->name(static_cast<unsigned>(std::countr_zero(rest)));
      hasVar = true;
    }
    if (!hasVar)
      os << mag;
    else if (mag == 1)
      os << vars.str();
    else
      os << mag << "*" << vars.str();
  }
  return os.str();
}

mpq_class integrate(const ExtClass& a) {
  return a.coefficient(a.algebra()->topMask());
}

AlgebraMap::AlgebraMap(std::shared_ptr<const ExtAlgebra> from,
                       std::shared_ptr<const ExtAlgebra> to,
                       std::vector<ExtClass> generatorPullbacks)
    : from_(std::move(from)), to_(std::move(to)),
      gen_(std::move(generatorPullbacks)) {
  if (gen_.size() != to_->count())
    throw DomainError("AlgebraMap: need one pullback per codomain generator");
  for (const auto& img : gen_) {
    if (img.algebra() != from_)
      throw DomainError("AlgebraMap: generator image in the wrong algebra");
    for (const auto& [m, c] : img.terms())
      if (std::popcount(m) != 1)
        throw DomainError(
            "AlgebraMap: generator images must be homogeneous of degree 1");
  }
  // Adjoint table: adjoint_[m] = σ(m)·f^*(m^c) with m·m^c = σ(m)·top, so
  // that f_*(α) = Σ_m topPairing(α, adjoint_[m])·m.
  const std::uint32_t top = to_->topMask();
  adjoint_.reserve(std::size_t{1} << to_->count());
  for (std::uint32_t m = 0; m <= top; ++m) {
    ExtClass pb = pullback(ExtClass::monomial(to_, top ^ m, 1));
    if (wedgeSign(m, top ^ m) < 0) pb.scale(-1);
    adjoint_.push_back(std::move(pb));
  }
}

ExtClass AlgebraMap::pullback(const ExtClass& b) const {
  if (b.algebra() != to_)
    throw DomainError("AlgebraMap::pullback: class not in the codomain");
  ExtClass r(from_);
  for (const auto& [m, c] : b.terms()) {
    ExtClass term = ExtClass::monomial(from_, 0, c);
    for (std::uint32_t rest = m; rest != 0; rest &= rest - 1)
      term = term * gen_[static_cast<unsigned>(std::countr_zero(rest))];
    r += term;
  }
  return r;
}

ExtClass AlgebraMap::pushforward(const ExtClass& a) const {
  if (a.algebra() != from_)
    throw DomainError("AlgebraMap::pushforward: class not in the domain");
  ExtClass r(to_);
  for (std::uint32_t m = 0; m < adjoint_.size(); ++m) {
    const mpq_class c = topPairing(a, adjoint_[m]);
    if (c != 0) r += ExtClass::monomial(to_, m, c);
  }
  return r;
}

CohomologyOracle::CohomologyOracle(unsigned g)
    : g_(checkedOracleDim(g)),
      xAlg_(ExtAlgebra::make(blockNames(g_, 0))),
      prodAlg_(ExtAlgebra::make(
          concatNames(blockNames(g_, 0), blockNames(g_, 1)))),
      expPoincare_(prodAlg_) {
  std::vector<ExtClass> pr1Images, pr2Images, multImages;
  for (unsigned i = 0; i < 2 * g; ++i) {
    pr1Images.push_back(ExtClass::generator(prodAlg_, i));
    pr2Images.push_back(ExtClass::generator(prodAlg_, 2 * g + i));
    multImages.push_back(ExtClass::generator(prodAlg_, i) +
                         ExtClass::generator(prodAlg_, 2 * g + i));
  }
  pr1_ = std::make_unique<AlgebraMap>(prodAlg_, xAlg_, std::move(pr1Images));
  pr2_ = std::make_unique<AlgebraMap>(prodAlg_, xAlg_, std::move(pr2Images));
  mult_ = std::make_unique<AlgebraMap>(prodAlg_, xAlg_, std::move(multImages));

  // exp ℘ terminates on its own: ℘ has degree 2, the algebra degree 4g.
  const ExtClass wp = poincareClass();
  ExtClass term = ExtClass::unit(prodAlg_);
  unsigned k = 0;
  while (!term.isZero()) {
    expPoincare_ += term;
    ++k;
    term = term * wp;
    term.scale(mpq_class(1, k));
  }
}

ExtClass CohomologyOracle::unitClass() const { return ExtClass::unit(xAlg_); }

ExtClass CohomologyOracle::ellClass() const {
  ExtClass r(xAlg_);
  for (unsigned i = 0; i < g_; ++i)
    r += ExtClass::generator(xAlg_, 2 * i) *
         ExtClass::generator(xAlg_, 2 * i + 1);
  return r;
}

ExtClass CohomologyOracle::pointClass() const {
  ExtClass r = ellClass().pow(g_);
  r.scale(mpq_class(1, arith::factorial(g_)));
  return r;
}

ExtClass CohomologyOracle::poincareClass() const {
  ExtClass r(prodAlg_);
  for (unsigned i = 0; i < g_; ++i) {
    // x_i∧y'_i − y_i∧x'_i
    r += ExtClass::generator(prodAlg_, 2 * i) *
         ExtClass::generator(prodAlg_, 2 * g_ + 2 * i + 1);
    r -= ExtClass::generator(prodAlg_, 2 * i + 1) *
         ExtClass::generator(prodAlg_, 2 * g_ + 2 * i);
  }
  return r;
}

ExtClass CohomologyOracle::fourier(const ExtClass& a) const {
  return pr2_->pushforward(pr1_->pullback(a) * expPoincare_);
}

AlgebraMap CohomologyOracle::multMap(std::int64_t n) const {
  std::vector<ExtClass> images;
  for (unsigned i = 0; i < 2 * g_; ++i) {
    ExtClass img = ExtClass::generator(xAlg_, i);
    img.scale(mpq_class(static_cast<long>(n)));
    images.push_back(std::move(img));
  }
  return AlgebraMap(xAlg_, xAlg_, std::move(images));
}

ExtClass CohomologyOracle::multPull(std::int64_t n, const ExtClass& a) const {
  return multMap(n).pullback(a);
}

ExtClass CohomologyOracle::multPush(std::int64_t n, const ExtClass& a) const {
  return multMap(n).pushforward(a);
}

ExtClass CohomologyOracle::pontryagin(const ExtClass& a,
                                      const ExtClass& b) const {
  return mult_->pushforward(pr1_->pullback(a) * pr2_->pullback(b));
}

ExtClass CohomologyOracle::graphClass(std::int64_t n) const {
  std::vector<ExtClass> images;
  for (unsigned i = 0; i < 2 * g_; ++i)
    images.push_back(ExtClass::generator(xAlg_, i));
  for (unsigned i = 0; i < 2 * g_; ++i) {
    ExtClass img = ExtClass::generator(xAlg_, i);
    img.scale(mpq_class(static_cast<long>(n)));
    images.push_back(std::move(img));
  }
  const AlgebraMap graph(xAlg_, prodAlg_, std::move(images));
  return graph.pushforward(ExtClass::unit(xAlg_));
}

ExtClass CohomologyOracle::corrAction(const ExtClass& u,
                                      const ExtClass& a) const {
  return pr2_->pushforward(u * pr1_->pullback(a));
}

ExtClass CohomologyOracle::corrStar(const ExtClass& u,
                                    const ExtClass& v) const {
  if (u.algebra() != prodAlg_ || v.algebra() != prodAlg_)
    throw DomainError("corrStar: operands must be product-space classes");
  const auto tripleAlg = ExtAlgebra::make(
      concatNames(concatNames(blockNames(g_, 0), blockNames(g_, 1)),
                  blockNames(g_, 2)));
  std::vector<ExtClass> pr12Images, pr13Images, m23Images;
  for (unsigned i = 0; i < 2 * g_; ++i) {
    pr12Images.push_back(ExtClass::generator(tripleAlg, i));
    pr13Images.push_back(ExtClass::generator(tripleAlg, i));
    m23Images.push_back(ExtClass::generator(tripleAlg, i));
  }
  for (unsigned i = 0; i < 2 * g_; ++i) {
    pr12Images.push_back(ExtClass::generator(tripleAlg, 2 * g_ + i));
    pr13Images.push_back(ExtClass::generator(tripleAlg, 4 * g_ + i));
    m23Images.push_back(ExtClass::generator(tripleAlg, 2 * g_ + i) +
                        ExtClass::generator(tripleAlg, 4 * g_ + i));
  }
  const AlgebraMap pr12(tripleAlg, prodAlg_, std::move(pr12Images));
  const AlgebraMap pr13(tripleAlg, prodAlg_, std::move(pr13Images));
  const AlgebraMap m23(tripleAlg, prodAlg_, std::move(m23Images));
  return m23.pushforward(pr12.pullback(u) * pr13.pullback(v));
}

ident::IdentityReport scaledFourierCheck(unsigned g) {
  Stopwatch sw;
  const CohomologyOracle oracle(g);
  const auto& xAlg = oracle.spaceAlgebra();
  const std::uint32_t top = xAlg->topMask();
  mpq_class mismatch = 0;

  const auto accumulate = [&mismatch](const ExtClass& diff) {
    for (const auto& [m, c] : diff.terms())
      mismatch += (c < 0 ? mpq_class(-c) : c);
  };

  // Fourier of every basis monomial, honestly push–pulled once.
  std::vector<ExtClass> ftab;
  ftab.reserve(std::size_t{1} << (2 * g));
  for (std::uint32_t m = 0; m <= top; ++m)
    ftab.push_back(oracle.fourier(ExtClass::monomial(xAlg, m, 1)));

  // (2g)!·sF(x⋆y) = sF(x)·sF(y) with sF = (2g)!·F, over all basis pairs.
  const mpq_class s(arith::factorial(2 * g));
  for (std::uint32_t m1 = 0; m1 <= top; ++m1)
    for (std::uint32_t m2 = 0; m2 <= top; ++m2) {
      const ExtClass star = oracle.pontryagin(
          ExtClass::monomial(xAlg, m1, 1), ExtClass::monomial(xAlg, m2, 1));
      ExtClass lhs(xAlg);
      for (const auto& [m, c] : star.terms()) lhs += c * ftab[m];
      lhs.scale(s * s);
      const ExtClass rhs = (s * ftab[m1]) * (s * ftab[m2]);
      accumulate(lhs - rhs);
    }

  // F∘[n]_* = [n]^*∘F for n ∈ {−2,…,2}, on every basis monomial.
  for (std::int64_t n = -2; n <= 2; ++n)
    for (std::uint32_t m = 0; m <= top; ++m) {
      const ExtClass mono = ExtClass::monomial(xAlg, m, 1);
      accumulate(oracle.fourier(oracle.multPush(n, mono)) -
                 oracle.multPull(n, oracle.fourier(mono)));
    }

  ident::IdentityReport report;
  report.identityName = "scaled-fourier";
  report.parameters = {{"g", g}};
  report.residual = chern::GradedPolynomial::constant(mismatch);
  report.pass = mismatch == 0;
  report.elapsed = sw.elapsed();
  return report;
}

ident::IdentityReport oracleModelAgreement(unsigned g) {
  Stopwatch sw;
  const CohomologyOracle oracle(g);
  const chow::TautModel model = chow::buildModel(g, 1);
  mpq_class mismatch = 0;

  // ℓ^0..ℓ^g as honest wedge powers.
  std::vector<ExtClass> ell;
  ell.push_back(oracle.unitClass());
  for (unsigned i = 1; i <= g; ++i) ell.push_back(ell.back() * oracle.ellClass());

  for (unsigned i = 0; i <= g; ++i) {
    const chow::TautClass image =
        chow::fourier(chow::TautClass::ellPower(model, i));
    ExtClass expect(oracle.spaceAlgebra());
    for (unsigned j = 0; j <= g; ++j)
      expect += image.coefficient(j).value() * ell[j];
    const ExtClass diff = oracle.fourier(ell[i]) - expect;
    for (const auto& [m, c] : diff.terms())
      mismatch += (c < 0 ? mpq_class(-c) : c);
  }

  ident::IdentityReport report;
  report.identityName = "oracle-model-agreement";
  report.parameters = {{"g", g}};
  report.residual = chern::GradedPolynomial::constant(mismatch);
  report.pass = mismatch == 0;
  report.elapsed = sw.elapsed();
  return report;
}

ident::IdentityReport shiftNilpotencyCheck(unsigned g, unsigned exponent) {
  Stopwatch sw;
  if (g < 1 || g > 2)
    throw DomainError(
        "shiftNilpotencyCheck: g must be 1 or 2 (convolution runs on the "
        "2^{6g} triple space)");
  if (exponent == 0)
    throw DomainError("shiftNilpotencyCheck: exponent must be positive");

  const CohomologyOracle oracle(g);
  const ExtClass d = oracle.graphClass(1) - oracle.graphClass(0);
  ExtClass power = d;
  for (unsigned j = 1; j < exponent; ++j) power = oracle.corrStar(power, d);

  unsigned survivors = 0;
  for (std::uint32_t m = 0; m <= oracle.spaceAlgebra()->topMask(); ++m) {
    const auto mono = ExtClass::monomial(oracle.spaceAlgebra(), m, 1);
    if (!oracle.corrAction(power, mono).isZero()) ++survivors;
  }

  ident::IdentityReport report;
  report.identityName = "shift-nilpotency";
  report.parameters = {{"exponent", exponent}, {"g", g}};
  report.residual = chern::GradedPolynomial::constant(survivors);
  report.pass = survivors == 0;
  report.elapsed = sw.elapsed();
  return report;
}

}  // namespace fdual::cohom
