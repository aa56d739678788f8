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

#include <string>
#include <vector>

#include "doctest.h"
#include "fdual/char_calculus.hpp"
#include "fdual/errors.hpp"
#include "fdual/polynomial.hpp"
#include "fdual/primes.hpp"
#include "fdual/root_series.hpp"
#include "fdual/tm.hpp"

using namespace fdual;
using namespace fdual::chern;

namespace {

/// c1..cn over the default prefix, for spelling expected values.
std::shared_ptr<const VarTable> cTable(unsigned n) {
  std::vector<PolyVar> vars;
  for (unsigned i = 1; i <= n; ++i) vars.push_back({chernVarName("c", i), i});
  return VarTable::make(vars);
}

GradedPolynomial cvar(const std::shared_ptr<const VarTable>& t, unsigned i) {
  return GradedPolynomial::variable(t, chernVarName("c", i));
}

/// ∏_i u(α_i) over a fresh rank-r bundle, truncated at degree cap.
RootSeries productOverRoots(const series::Univariate& u, const BundleSpec& b,
                            unsigned cap) {
  auto prod = RootSeries::constant(1, b.roots, cap);
  for (std::size_t i = 0; i < b.roots.size(); ++i) {
    prod = prod * RootSeries::univariateInRoot(u, i, b.roots, cap);
  }
  return prod;
}

}  // namespace

TEST_CASE("Newton power sums in Chern variables") {
  auto t = cTable(4);
  auto c1 = cvar(t, 1), c2 = cvar(t, 2), c3 = cvar(t, 3), c4 = cvar(t, 4);

  CHECK(newtonPowerSum(1, 4) == c1);
  CHECK(newtonPowerSum(2, 4) == c1 * c1 - mpq_class(2) * c2);
  CHECK(newtonPowerSum(3, 4) ==
        c1.pow(3) - mpq_class(3) * (c1 * c2) + mpq_class(3) * c3);
  CHECK(newtonPowerSum(4, 4) ==
        c1.pow(4) - mpq_class(4) * (c1 * c1 * c2) + mpq_class(2) * (c2 * c2) +
            mpq_class(4) * (c1 * c3) - mpq_class(4) * c4);

  SUBCASE("rank truncation zeroes the high elementary symmetric functions") {
    CHECK(newtonPowerSum(3, 1) == c1.pow(3));
    CHECK(newtonPowerSum(4, 2) ==
          c1.pow(4) - mpq_class(4) * (c1 * c1 * c2) + mpq_class(2) * (c2 * c2));
  }

  SUBCASE("each p_k is homogeneous of weight k") {
    for (unsigned k = 1; k <= 8; ++k) {
      CHECK(newtonPowerSum(k, 8).isHomogeneous(k));
    }
  }

  SUBCASE("agrees with the root-level power sum") {
    for (unsigned k = 1; k <= 5; ++k) {
      auto b = BundleSpec::make("E", k);
      RootSeries pk(b.roots, k);
      series::Univariate mono(k + 1, 0);
      mono[k] = 1;
      for (std::size_t i = 0; i < b.roots.size(); ++i) {
        pk += RootSeries::univariateInRoot(mono, i, b.roots, k);
      }
      CHECK(rootsToChern(pk, {b}) == newtonPowerSum(k, k));
    }
  }
}

TEST_CASE("Todd components") {
  auto t = cTable(4);
  auto c1 = cvar(t, 1), c2 = cvar(t, 2), c3 = cvar(t, 3), c4 = cvar(t, 4);

  CHECK(toddComponent(0, 3) == GradedPolynomial::constant(1));
  CHECK(toddComponent(1, 3) == mpq_class(1, 2) * c1);
  CHECK(toddComponent(2, 3) == mpq_class(1, 12) * (c1 * c1 + c2));
  CHECK(toddComponent(3, 3) == mpq_class(1, 24) * (c1 * c2));
  CHECK(toddComponent(4, 4) ==
        mpq_class(1, 720) *
            (-c1.pow(4) + mpq_class(4) * (c1 * c1 * c2) + c1 * c3 +
             mpq_class(3) * (c2 * c2) - c4));

  SUBCASE("low rank is the generic answer with high Chern classes dropped") {
    auto generic = toddComponent(4, 4);
    auto dropped = generic.substitute("c3", GradedPolynomial())
                       .substitute("c4", GradedPolynomial());
    CHECK(toddComponent(4, 2) == dropped);
  }

  SUBCASE("matches the definitional product over Chern roots") {
    for (unsigned r = 1; r <= 3; ++r) {
      for (unsigned m = 0; m <= 4; ++m) {
        auto b = BundleSpec::make("E", r);
        auto prod = productOverRoots(series::qSeries(m), b, m);
        auto viaRoots = rootsToChern(prod.homogeneousPart(m), {b});
        CHECK(viaRoots == toddComponent(m, r));
      }
    }
  }
}

TEST_CASE("scaled Todd integrality and sharpness") {
  auto t = cTable(3);
  auto c1 = cvar(t, 1), c2 = cvar(t, 2);

  CHECK(fTd(0, 1) == GradedPolynomial::constant(1));
  CHECK(fTd(1, 1) == c1);
  CHECK(fTd(2, 2) == c1 * c1 + c2);
  CHECK(fTd(3, 3) == c1 * c2);

  SUBCASE("T_m·Td_m is integral and T_m is exactly the denominator lcm") {
    for (unsigned m = 0; m <= 8; ++m) {
      auto td = toddComponent(m, m == 0 ? 1 : m);
      CHECK(td.denominatorLcm() == arith::bigT(m));
      auto scaled = fTd(m, m == 0 ? 1 : m);  // throws if not integral
      CHECK(scaled.isIntegral());
      CHECK(scaled.isHomogeneous(m));
    }
  }
}

TEST_CASE("scaled Chern character components") {
  SUBCASE("degree zero is the rank variable, weight zero") {
    auto r = chernCharComponent(0);
    CHECK(r.coefficientOf(kRankVar, 1) == 1);
    CHECK(r.termCount() == 1);
    CHECK(r.isHomogeneous(0));
  }

  SUBCASE("positive degrees are power sums in the second-bundle variables") {
    auto fs2 = chernCharComponent(2);
    auto d1 = GradedPolynomial::variable(fs2.tablePtr(), "c'1");
    auto d2 = GradedPolynomial::variable(fs2.tablePtr(), "c'2");
    CHECK(fs2 == d1 * d1 - mpq_class(2) * d2);
    CHECK(chernCharComponent(3) ==
          d1.pow(3) - mpq_class(3) * (d1 * d2) +
              mpq_class(3) * GradedPolynomial::variable(
                                 chernCharComponent(3).tablePtr(), "c'3"));
  }

  SUBCASE("line bundle specialization collapses to powers of c'1") {
    for (unsigned m = 1; m <= 6; ++m) {
      auto fs = chernCharComponent(m);
      for (unsigned i = 2; i <= m; ++i) {
        fs = fs.substitute(chernVarName(chernPrefix(1), i), GradedPolynomial());
      }
      auto d1 = GradedPolynomial::variable(fs.tablePtr(), "c'1");
      CHECK(fs == d1.pow(m));
    }
  }

  SUBCASE("m!·ch_m is integral by construction") {
    for (unsigned m = 1; m <= 8; ++m) {
      CHECK(chernCharComponent(m).isIntegral());
      CHECK(chernCharComponent(m).isHomogeneous(m));
    }
  }
}

TEST_CASE("scaled inverse Todd") {
  auto t = cTable(2);
  auto c1 = cvar(t, 1);

  SUBCASE("rank-one closed form: (n+1)!·{Q(α)^{-1}}_n = (−c1)^n") {
    CHECK(fTdInv(1, 0) == GradedPolynomial::constant(1));
    CHECK(fTdInv(1, 1) == -c1);
    CHECK(fTdInv(1, 2) == c1 * c1);
    CHECK(fTdInv(1, 3) == -c1.pow(3));
  }

  SUBCASE("degree zero is rank factorial") {
    CHECK(fTdInv(2, 0) == GradedPolynomial::constant(2));
    CHECK(fTdInv(3, 0) == GradedPolynomial::constant(6));
    CHECK(fTdInv(4, 0) == GradedPolynomial::constant(24));
  }

  SUBCASE("integrality across small ranks and degrees") {
    for (unsigned r = 1; r <= 3; ++r) {
      for (unsigned n = 0; n <= 6; ++n) {
        auto p = fTdInv(r, n);  // throws if not integral
        CHECK(p.isIntegral());
        CHECK(p.isHomogeneous(n));
      }
    }
  }

  SUBCASE("matches the definitional product over Chern roots") {
    for (unsigned r = 1; r <= 3; ++r) {
      for (unsigned n = 0; n <= 4; ++n) {
        auto b = BundleSpec::make("E", r);
        auto prod = productOverRoots(series::qInvSeries(n), b, n);
        auto viaRoots = rootsToChern(prod.homogeneousPart(n), {b});
        viaRoots.scale(mpq_class(arith::factorial(n + r)));
        CHECK(viaRoots == fTdInv(r, n));
      }
    }
  }

  SUBCASE("rank zero is rejected") {
    CHECK_THROWS_AS(fTdInv(0, 1), DomainError);
  }
}

TEST_CASE("combined character-Todd expression") {
  SUBCASE("lowest degrees against hand-expanded forms") {
    auto f0 = fCT(0);
    CHECK(f0.coefficientOf(kRankVar, 1) == 1);
    CHECK(f0.termCount() == 1);

    auto f1 = fCT(1);
    auto r = GradedPolynomial::variable(f1.tablePtr(), kRankVar);
    auto c1 = GradedPolynomial::variable(f1.tablePtr(), "c1");
    auto d1 = GradedPolynomial::variable(f1.tablePtr(), "c'1");
    CHECK(f1 == mpq_class(2) * d1 + r * c1);
  }

  SUBCASE("integral and homogeneous through degree six") {
    for (unsigned m = 0; m <= 6; ++m) {
      auto f = fCT(m);
      CHECK(f.isIntegral());
      CHECK(f.isHomogeneous(m));
      CHECK_FALSE(f.isZero());
    }
  }

  SUBCASE("the j-th slice carries the certified structural constant") {
    // fCT(2) = T_2/T_2·fs_0·fTd_2 + T_2/(1!·T_1)·fs_1·fTd_1 + T_2/2!·fs_2.
    auto f2 = fCT(2);
    auto r = GradedPolynomial::variable(f2.tablePtr(), kRankVar);
    auto c1 = GradedPolynomial::variable(f2.tablePtr(), "c1");
    auto c2 = GradedPolynomial::variable(f2.tablePtr(), "c2");
    auto d1 = GradedPolynomial::variable(f2.tablePtr(), "c'1");
    auto d2 = GradedPolynomial::variable(f2.tablePtr(), "c'2");
    auto want = r * (c1 * c1 + c2) + mpq_class(6) * (d1 * c1) +
                mpq_class(6) * (d1 * d1 - mpq_class(2) * d2);
    CHECK(f2 == want);
  }
}
