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

#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "fdual/cohom_oracle.hpp"
#include "fdual/correspondence.hpp"
#include "fdual/errors.hpp"
#include "fdual/primes.hpp"
#include "fdual/scalar.hpp"
#include "fdual/taut_model.hpp"

using namespace fdual;
using namespace fdual::chow;
using arith::InvertedPrimeSet;
using arith::LambdaScalar;
using arith::factorial;

namespace {

/// Coefficient ring used throughout the correspondence tests: invert every
/// prime that can appear in a denominator at the given truncation order.
InvertedPrimeSet corrRing(unsigned nilIndex) {
  return InvertedPrimeSet::dividing(factorial(nilIndex));
}

LambdaScalar integer(std::int64_t n, const InvertedPrimeSet& r) {
  return LambdaScalar(mpz_class(n), r);
}

/// c·ℓ^i in the given model.
TautClass ellTimes(const TautModel& m, unsigned i, const mpq_class& c) {
  TautClass r = TautClass::ellPower(m, i);
  r.scale(LambdaScalar(c, m.ring));
  return r;
}

/// ℓ^i as an oracle cohomology class.
cohom::ExtClass oraclePower(const cohom::CohomologyOracle& o, unsigned i) {
  return o.ellClass().pow(i);
}

}  // namespace

TEST_CASE("graph classes expand with generalized binomial coefficients") {
  const unsigned N = 5;
  const auto r = corrRing(N);

  auto shift = [&](std::int64_t n) {
    const auto e = CorrespondenceElement::gamma(n, N, r);
    std::vector<mpq_class> out;
    for (const auto& c : e.shiftCoefficients()) out.push_back(c.value());
    return out;
  };

  CHECK(shift(0) == std::vector<mpq_class>{1, 0, 0, 0, 0});
  CHECK(shift(1) == std::vector<mpq_class>{1, 1, 0, 0, 0});
  CHECK(shift(3) == std::vector<mpq_class>{1, 3, 3, 1, 0});
  CHECK(shift(5) == std::vector<mpq_class>{1, 5, 10, 10, 5});
  // Negative multiplications expand through (1+s)^n with integer
  // coefficients: C(-1,j) = (-1)^j and C(-2,j) = (-1)^j (j+1).
  CHECK(shift(-1) == std::vector<mpq_class>{1, -1, 1, -1, 1});
  CHECK(shift(-2) == std::vector<mpq_class>{1, -2, 3, -4, 5});

  SUBCASE("canonical support of a small graph class is the class itself") {
    for (std::int64_t n = 0; n < static_cast<std::int64_t>(N); ++n) {
      const auto support = CorrespondenceElement::gamma(n, N, r).gammaSupport();
      REQUIRE(support.size() == 1);
      CHECK(support.at(n) == integer(1, r));
    }
    CHECK(CorrespondenceElement(N, r).gammaSupport().empty());
  }

  SUBCASE("rebuilding from the canonical support round-trips") {
    const auto e = CorrespondenceElement::gamma(-3, N, r);
    CorrespondenceElement back(N, r);
    for (const auto& [n, a] : e.gammaSupport()) {
      auto term = CorrespondenceElement::gamma(n, N, r);
      back += term.scale(a);
    }
    CHECK(back == e);
  }
}

TEST_CASE("convolution adds and composition multiplies the labels") {
  const unsigned N = 6;
  const auto r = corrRing(N);
  auto G = [&](std::int64_t n) {
    return CorrespondenceElement::gamma(n, N, r);
  };

  for (std::int64_t m = -3; m <= 4; ++m)
    for (std::int64_t n = -3; n <= 4; ++n) {
      CHECK(G(m).star(G(n)) == G(m + n));
      CHECK(G(m).compose(G(n)) == G(m * n));
    }

  SUBCASE("the zero graph is the convolution unit") {
    const auto e = G(2) - G(-1) + G(3);
    CHECK(G(0).star(e) == e);
  }

  SUBCASE("composition is bilinear") {
    CHECK((G(2) + G(3)).compose(G(2)) == G(4) + G(6));
    auto half = G(5);
    half.scale(LambdaScalar::fraction(1, 2, r));
    auto expect = G(10);
    expect.scale(LambdaScalar::fraction(1, 2, r));
    CHECK(half.compose(G(2)) == expect);
  }

  SUBCASE("powers of the reduced diagonal are the shift basis") {
    const auto d = G(1) - G(0);
    for (unsigned j = 0; j < N; ++j)
      CHECK(d.starPow(j) == CorrespondenceElement::shiftPower(j, N, r));
    CHECK_FALSE(d.starPow(N - 1).isZero());
    CHECK(d.starPow(N).isZero());
    CHECK(d.starPow(N + 3).isZero());
  }
}

TEST_CASE("moments evaluate, multiply under composition, and stay bounded") {
  const unsigned N = 5;
  const auto r = corrRing(N);
  auto G = [&](std::int64_t n) {
    return CorrespondenceElement::gamma(n, N, r);
  };

  // Φ_j(Γ[n]) = n^j holds for every n, including labels outside the
  // canonical window, because (t d/dt)^j kills (t-1)^N at t = 1 for j < N.
  for (std::int64_t n = -3; n <= 6; ++n) {
    mpq_class power = 1;
    for (unsigned j = 0; j < N; ++j) {
      CHECK(G(n).moment(j).value() == power);
      power *= n;
    }
  }

  SUBCASE("0^0 = 1 for the zero graph") {
    CHECK(G(0).moment(0).value() == 1);
    CHECK(G(0).moment(3).value() == 0);
  }

  SUBCASE("composition diagonalizes: moments multiply") {
    const auto u = G(2) - G(-1);
    auto v = G(3);
    v.scale(LambdaScalar::fraction(1, 2, r));
    v += G(0);
    for (unsigned j = 0; j < N; ++j)
      CHECK(u.compose(v).moment(j) == u.moment(j) * v.moment(j));
  }

  SUBCASE("higher moments are not defined on the quotient") {
    CHECK_THROWS_AS(G(1).moment(N), DomainError);
  }
}

TEST_CASE("correspondence element preconditions") {
  const auto r = corrRing(4);
  CHECK_THROWS_AS(CorrespondenceElement(0, r), DomainError);
  CHECK_THROWS_AS(CorrespondenceElement::shiftPower(4, 4, r), DomainError);

  SUBCASE("mixed truncation orders do not combine") {
    auto a = CorrespondenceElement::gamma(1, 4, r);
    const auto b = CorrespondenceElement::gamma(1, 3, corrRing(3));
    CHECK_THROWS_AS(a += b, DomainError);
    CHECK_THROWS_AS(a.star(b), DomainError);
  }
}

TEST_CASE("logarithm of the standard graph") {
  SUBCASE("frozen order-3 expansion") {
    const auto r = corrRing(3);
    const auto log1 = logGammaOne(3, r);

    std::vector<mpq_class> shifts;
    for (const auto& c : log1.shiftCoefficients()) shifts.push_back(c.value());
    CHECK(shifts == std::vector<mpq_class>{0, 1, mpq_class(-1, 2)});

    const auto support = log1.gammaSupport();
    REQUIRE(support.size() == 3);
    CHECK(support.at(0).value() == mpq_class(-3, 2));
    CHECK(support.at(1).value() == 2);
    CHECK(support.at(2).value() == mpq_class(-1, 2));
    CHECK(log1.toString() == "-3/2*G[0] + 2*G[1] - 1/2*G[2]");
  }

  SUBCASE("exponentiating the logarithm recovers the graph") {
    for (unsigned N = 2; N <= 8; ++N) {
      const auto r = corrRing(N);
      const auto log1 = logGammaOne(N, r);
      CorrespondenceElement sum(N, r);
      for (unsigned k = 0; k < N; ++k) {
        auto term = log1.starPow(k);
        sum += term.scale(LambdaScalar::fraction(1, factorial(k), r));
      }
      CHECK(sum == CorrespondenceElement::gamma(1, N, r));
    }
  }

  SUBCASE("needs the small primes inverted") {
    CHECK_THROWS_AS(logGammaOne(3, InvertedPrimeSet()), DomainError);
  }
}

TEST_CASE("projector family: moment deltas and composition orthogonality") {
  for (unsigned g = 1; g <= 3; ++g)
    for (unsigned d = 0; d <= 2; ++d) {
      CAPTURE(g);
      CAPTURE(d);
      const unsigned N = 2 * g + d + 1;
      const auto pis = beauvilleProjectors(g, d, N);
      REQUIRE(pis.size() == 2 * g + 1);
      const auto r = pis[0].ring();

      for (unsigned i = 0; i <= 2 * g; ++i)
        for (unsigned j = 0; j <= 2 * g; ++j) {
          const mpq_class expect = (i + j == 2 * g) ? 1 : 0;
          CHECK(pis[i].moment(j).value() == expect);
        }

      // Composition is where the projectors are orthogonal idempotents.
      for (unsigned i = 0; i <= 2 * g; ++i)
        for (unsigned j = 0; j <= 2 * g; ++j) {
          const auto prod = pis[i].compose(pis[j]);
          if (i == j)
            CHECK(prod == pis[i]);
          else
            CHECK(prod.isZero());
        }

      // The top projector is the zero graph in every truncation.
      CHECK(pis[2 * g] == CorrespondenceElement::gamma(0, N, r));

      CorrespondenceElement sum(N, r);
      for (const auto& pi : pis) sum += pi;
      const auto gamma1 = CorrespondenceElement::gamma(1, N, r);
      if (d == 0) {
        CHECK(sum == gamma1);
      } else {
        // Over a positive-dimensional base the 2g+1 projectors no longer
        // exhaust the unit: the log has d extra divided powers.
        CHECK_FALSE(sum == gamma1);
        const auto log1 = logGammaOne(N, r);
        for (unsigned k = 2 * g + 1; k <= 2 * g + d; ++k) {
          auto tail = log1.starPow(k);
          sum += tail.scale(LambdaScalar::fraction(1, factorial(k), r));
        }
        CHECK(sum == gamma1);
      }
    }
}

TEST_CASE("projector family: convolution is not an orthogonality structure") {
  // The top projector is the zero graph, which is the ⋆-unit, so convolving
  // with it reproduces every projector instead of annihilating it.  Only
  // composition separates the family.
  for (unsigned g = 1; g <= 2; ++g) {
    const auto pis = beauvilleProjectors(g, 0, 2 * g + 1);
    for (unsigned j = 0; j <= 2 * g; ++j)
      CHECK(pis[2 * g].star(pis[j]) == pis[j]);
  }
}

TEST_CASE("projector family: frozen curve table") {
  const auto pis = beauvilleProjectors(1, 0, 3);
  CHECK(pis[0].toString() == "1/2*G[0] - G[1] + 1/2*G[2]");
  CHECK(pis[1].toString() == "-3/2*G[0] + 2*G[1] - 1/2*G[2]");
  CHECK(pis[2].toString() == "G[0]");

  SUBCASE("shape preconditions") {
    CHECK_THROWS_AS(beauvilleProjectors(0, 0, 1), DomainError);
    CHECK_THROWS_AS(beauvilleProjectors(1, 0, 4), DomainError);
  }
}

TEST_CASE("tautological model: rings and distinguished classes") {
  CHECK(buildModel(1, 1).ring == InvertedPrimeSet({2, 3}));
  CHECK(buildModel(2, 1).ring == InvertedPrimeSet({2, 3, 5}));
  CHECK(buildModel(2, 3).ring == InvertedPrimeSet({2, 3, 5}));
  CHECK(buildModel(1, 5).ring == InvertedPrimeSet({2, 3, 5}));
  CHECK(buildModel(3, 1).ring.contains(7));
  CHECK_FALSE(buildModel(3, 1).ring.contains(11));

  CHECK_THROWS_AS(buildModel(0, 1), DomainError);
  CHECK_THROWS_AS(buildModel(1, 0), DomainError);

  SUBCASE("point and theta-divisor normalizations") {
    const auto m12 = buildModel(1, 2);
    CHECK(pointClass(m12) == ellTimes(m12, 1, mpq_class(1, 2)));
    CHECK(lambdaClass(m12) == ellTimes(m12, 0, mpq_class(1, 2)));

    const auto m21 = buildModel(2, 1);
    CHECK(pointClass(m21) == ellTimes(m21, 2, mpq_class(1, 2)));
    CHECK(lambdaClass(m21) == TautClass::ellPower(m21, 1));

    const auto m23 = buildModel(2, 3);
    CHECK(pointClass(m23) == ellTimes(m23, 2, mpq_class(1, 6)));

    const auto m31 = buildModel(3, 1);
    CHECK(pointClass(m31) == ellTimes(m31, 3, mpq_class(1, 6)));
    CHECK(lambdaClass(m31) == ellTimes(m31, 2, mpq_class(1, 2)));
  }

  SUBCASE("intersection product truncates at the dimension") {
    const auto m = buildModel(2, 1);
    const auto one = TautClass::ellPower(m, 0);
    const auto ell = TautClass::ellPower(m, 1);
    CHECK(ell * TautClass::ellPower(m, 2) == TautClass(m));
    CHECK((one + ell) * (one - ell) ==
          one - TautClass::ellPower(m, 2));
    CHECK(pointClass(m).toString() == "1/2*l^2");
    CHECK(ell.toString() == "l");
  }

  SUBCASE("shape mismatches are rejected") {
    const auto m = buildModel(2, 1);
    CHECK_THROWS_AS(TautClass::ellPower(m, 3), DomainError);
    auto a = TautClass::ellPower(m, 1);
    const auto b = TautClass::ellPower(buildModel(3, 1), 1);
    CHECK_THROWS_AS(a += b, DomainError);
    CHECK_THROWS_AS(
        TautClass(m, {integer(1, m.ring), integer(1, m.ring)}), DomainError);
  }
}

TEST_CASE("Fourier transform on the model: frozen low-dimensional table") {
  const auto m1 = buildModel(1, 1);
  CHECK(fourier(TautClass::ellPower(m1, 0)) == -TautClass::ellPower(m1, 1));
  CHECK(fourier(TautClass::ellPower(m1, 1)) == TautClass::ellPower(m1, 0));

  const auto m2 = buildModel(2, 1);
  CHECK(fourier(TautClass::ellPower(m2, 0)) ==
        ellTimes(m2, 2, mpq_class(1, 2)));
  CHECK(fourier(TautClass::ellPower(m2, 1)) == -TautClass::ellPower(m2, 1));
  CHECK(fourier(TautClass::ellPower(m2, 2)) == ellTimes(m2, 0, 2));

  const auto m3 = buildModel(3, 1);
  CHECK(fourier(TautClass::ellPower(m3, 0)) ==
        ellTimes(m3, 3, mpq_class(-1, 6)));
  CHECK(fourier(TautClass::ellPower(m3, 1)) ==
        ellTimes(m3, 2, mpq_class(1, 2)));
  CHECK(fourier(TautClass::ellPower(m3, 2)) == ellTimes(m3, 1, -2));
  CHECK(fourier(TautClass::ellPower(m3, 3)) == ellTimes(m3, 0, 6));

  SUBCASE("the transform needs a principal polarization") {
    CHECK_THROWS_AS(fourier(TautClass::ellPower(buildModel(2, 2), 1)),
                    DomainError);
  }
}

TEST_CASE("Fourier transform on the model: structural identities") {
  for (unsigned g = 1; g <= 6; ++g) {
    CAPTURE(g);
    const auto m = buildModel(g, 1);
    const int sign = (g % 2 == 0) ? 1 : -1;

    for (unsigned i = 0; i <= g; ++i) {
      const auto x = TautClass::ellPower(m, i);
      // F∘F = (−1)^g [−1]^*, and [−1]^* is trivial on even classes.
      CHECK(fourier(fourier(x)) == ellTimes(m, i, sign));
    }

    // F(ℓ) pins the theta-divisor dual in degree g−1.
    CHECK(fourier(TautClass::ellPower(m, 1)) ==
          ellTimes(m, g - 1,
                   mpq_class(-sign) / mpq_class(factorial(g - 1))));
    auto lambda = lambdaClass(m);
    lambda.scale(integer(-sign, m.ring));
    CHECK(fourier(TautClass::ellPower(m, 1)) == lambda);

    // ℓ^g = ν·g!·[pt].
    auto pt = pointClass(m);
    pt.scale(LambdaScalar(mpz_class(factorial(g)), m.ring));
    CHECK(TautClass::ellPower(m, g) == pt);
  }

  SUBCASE("full verification report up to dimension eight") {
    for (unsigned g = 1; g <= 8; ++g) {
      const auto report = verifyFourierModel(g);
      CAPTURE(g);
      CHECK(report.pass);
      CHECK(report.residual.isZero());
      CHECK(report.identityName == "fourier-model");
      CHECK(report.parameters.at("g") == g);
    }
  }
}

TEST_CASE("convolution on the model matches its combinatorial closed form") {
  // The implementation routes x⋆y through the Fourier transform; the
  // expected values below come from the independent factorial formula.
  for (unsigned g = 1; g <= 6; ++g) {
    CAPTURE(g);
    const auto m = buildModel(g, 1);
    for (unsigned i = 0; i <= g; ++i)
      for (unsigned j = 0; j <= g; ++j) {
        const auto prod = pontryagin(TautClass::ellPower(m, i),
                                     TautClass::ellPower(m, j));
        if (i + j < g) {
          CHECK(prod.isZero());
        } else {
          const auto c = LambdaScalar::fraction(
              factorial(i) * factorial(j) * factorial(2 * g - i - j),
              factorial(g - i) * factorial(g - j) * factorial(i + j - g),
              m.ring);
          auto expect = TautClass::ellPower(m, i + j - g);
          expect.scale(c);
          CHECK(prod == expect);
        }
      }
  }

  SUBCASE("frozen small values") {
    const auto m2 = buildModel(2, 1);
    auto ell = [&](unsigned i) { return TautClass::ellPower(m2, i); };
    CHECK(pontryagin(ell(1), ell(1)) == ellTimes(m2, 0, 2));
    CHECK(pontryagin(ell(1), ell(2)) == ellTimes(m2, 1, 2));
    CHECK(pontryagin(ell(2), ell(2)) == ellTimes(m2, 2, 2));

    const auto m3 = buildModel(3, 1);
    CHECK(pontryagin(TautClass::ellPower(m3, 2), TautClass::ellPower(m3, 2)) ==
          ellTimes(m3, 1, 8));
  }

  SUBCASE("the point class is the convolution unit") {
    const auto m = buildModel(3, 1);
    const auto pt = pointClass(m);
    for (unsigned i = 0; i <= 3; ++i)
      CHECK(pontryagin(pt, TautClass::ellPower(m, i)) ==
            TautClass::ellPower(m, i));
    CHECK(pontryagin(pt, pt) == pt);
  }

  SUBCASE("the transform interchanges the two products") {
    const auto m = buildModel(3, 1);
    const auto x = TautClass::ellPower(m, 0) + TautClass::ellPower(m, 1);
    const auto y =
        TautClass::ellPower(m, 1) + ellTimes(m, 2, mpq_class(1, 2));
    CHECK(fourier(pontryagin(x, y)) == fourier(x) * fourier(y));
    auto rhs = pontryagin(fourier(x), fourier(y));
    rhs.scale(integer((m.g % 2 == 0) ? 1 : -1, m.ring));
    CHECK(fourier(x * y) == rhs);
  }
}

TEST_CASE("multiplication operators on the model") {
  for (unsigned g = 2; g <= 3; ++g) {
    const auto m = buildModel(g, 1);
    for (std::int64_t n = -2; n <= 3; ++n)
      for (unsigned i = 0; i <= g; ++i) {
        CAPTURE(g);
        CAPTURE(n);
        CAPTURE(i);
        const auto x = TautClass::ellPower(m, i);
        mpz_class pull = 1, push = 1;
        for (unsigned k = 0; k < 2 * i; ++k) pull *= n;
        for (unsigned k = 0; k < 2 * (g - i); ++k) push *= n;
        CHECK(multPull(n, x) == ellTimes(m, i, mpq_class(pull)));
        CHECK(multPush(n, x) == ellTimes(m, i, mpq_class(push)));
        // Pushforward and pullback trade places across the transform.
        CHECK(fourier(multPush(n, x)) == multPull(n, fourier(x)));
      }
  }

  SUBCASE("ring homomorphism for pullback, convolution morphism for push") {
    const auto m = buildModel(2, 1);
    const auto x = TautClass::ellPower(m, 1);
    const auto y = TautClass::ellPower(m, 1) + TautClass::ellPower(m, 2);
    CHECK(multPull(3, x * y) == multPull(3, x) * multPull(3, y));
    CHECK(multPush(3, pontryagin(x, y)) ==
          pontryagin(multPush(3, x), multPush(3, y)));
  }

  SUBCASE("degree of the top power") {
    const auto m = buildModel(2, 3);
    CHECK(baseIntegral(TautClass::ellPower(m, 2)).value() == 6);
    CHECK(baseIntegral(TautClass::ellPower(m, 1)).value() == 0);
    CHECK(baseIntegral(pointClass(m)).value() == 1);
    CHECK(baseIntegral(TautClass(m)).value() == 0);
  }
}

TEST_CASE("twisted exponential reduction holds for non-principal degrees") {
  for (unsigned g = 1; g <= 5; ++g)
    for (std::int64_t nu = 1; nu <= 3; ++nu) {
      CAPTURE(g);
      CAPTURE(nu);
      const auto report = twistedExponentialCheck(buildModel(g, nu));
      CHECK(report.pass);
      CHECK(report.residual.isZero());
      CHECK(report.identityName == "twisted-exp");
      CHECK(report.parameters.at("nu") == nu);
    }
}

TEST_CASE("projectors act on the model with the halved-index grading") {
  for (unsigned g = 1; g <= 3; ++g) {
    CAPTURE(g);
    const auto m = buildModel(g, 1);
    const auto pis = beauvilleProjectors(g, 0, 2 * g + 1);

    for (unsigned i = 0; i <= 2 * g; ++i)
      for (unsigned k = 0; k <= g; ++k) {
        const auto x = TautClass::ellPower(m, k);
        const auto pushed = applyCorrespondencePush(pis[i], x);
        const auto pulled = applyCorrespondencePull(pis[i], x);
        if (i == 2 * k)
          CHECK(pushed == x);
        else
          CHECK(pushed.isZero());
        if (i == 2 * (g - k))
          CHECK(pulled == x);
        else
          CHECK(pulled.isZero());
      }

    // The graded pieces reassemble every class.
    TautClass mixed(m);
    for (unsigned k = 0; k <= g; ++k) mixed += TautClass::ellPower(m, k);
    TautClass reassembled(m);
    for (const auto& pi : pis)
      reassembled += applyCorrespondencePush(pi, mixed);
    CHECK(reassembled == mixed);
  }

  SUBCASE("graph classes act as the multiplication operators") {
    const auto m = buildModel(2, 1);
    const auto r = corrRing(5);
    for (std::int64_t n = -2; n <= 3; ++n) {
      const auto gn = CorrespondenceElement::gamma(n, 5, r);
      for (unsigned k = 0; k <= 2; ++k) {
        const auto x = TautClass::ellPower(m, k);
        CHECK(applyCorrespondencePush(gn, x) == multPush(n, x));
        CHECK(applyCorrespondencePull(gn, x) == multPull(n, x));
      }
    }
  }
}

TEST_CASE("oracle exterior algebra mechanics") {
  const auto A = cohom::ExtAlgebra::make({"a", "b", "c"});
  const auto a = cohom::ExtClass::generator(A, 0);
  const auto b = cohom::ExtClass::generator(A, 1);
  const auto c = cohom::ExtClass::generator(A, 2);

  CHECK((a * a).isZero());
  CHECK(a * b == -(b * a));
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * b == cohom::ExtClass::monomial(A, 0b011, 1));
  CHECK(b * a == cohom::ExtClass::monomial(A, 0b011, -1));
  CHECK(c * a * b == cohom::ExtClass::monomial(A, 0b111, 1));

  SUBCASE("homogeneous parts and powers") {
    const auto mixed = cohom::ExtClass::unit(A) + a * b;
    CHECK(mixed.homogeneousPart(0) == cohom::ExtClass::unit(A));
    CHECK(mixed.homogeneousPart(2) == a * b);
    CHECK(mixed.homogeneousPart(1).isZero());
    CHECK(mixed.pow(2) ==
          cohom::ExtClass::unit(A) + mpq_class(2) * (a * b));
  }

  SUBCASE("construction preconditions") {
    CHECK_THROWS_AS(cohom::ExtAlgebra::make({"a", "a"}), DomainError);
    std::vector<std::string> many;
    for (unsigned i = 0; i < 31; ++i) many.push_back("g" + std::to_string(i));
    CHECK_THROWS_AS(cohom::ExtAlgebra::make(many), DomainError);
    CHECK_THROWS_AS(cohom::ExtClass::generator(A, 3), DomainError);
    const auto B = cohom::ExtAlgebra::make({"a", "b"});
    auto x = cohom::ExtClass::generator(A, 0);
    CHECK_THROWS_AS(x += cohom::ExtClass::generator(B, 0), DomainError);
  }
}

TEST_CASE("oracle pushforward is the integral adjoint of pullback") {
  const cohom::CohomologyOracle oracle(2);
  const auto prod = oracle.productAlgebra();
  const auto space = oracle.spaceAlgebra();

  std::vector<cohom::ExtClass> secondFactor, addition;
  for (unsigned i = 0; i < 4; ++i) {
    secondFactor.push_back(cohom::ExtClass::generator(prod, 4 + i));
    addition.push_back(cohom::ExtClass::generator(prod, i) +
                       cohom::ExtClass::generator(prod, 4 + i));
  }

  for (const auto& images : {secondFactor, addition}) {
    const cohom::AlgebraMap f(prod, space, images);
    for (std::uint32_t am = 0; am <= prod->topMask(); ++am) {
      const auto alpha = cohom::ExtClass::monomial(prod, am, 1);
      for (std::uint32_t bm = 0; bm <= space->topMask(); ++bm) {
        const auto beta = cohom::ExtClass::monomial(space, bm, 1);
        CHECK(cohom::integrate(f.pushforward(alpha) * beta) ==
              cohom::integrate(alpha * f.pullback(beta)));
      }
    }
  }

  SUBCASE("map construction preconditions") {
    std::vector<cohom::ExtClass> tooFew(
        3, cohom::ExtClass::generator(prod, 0));
    CHECK_THROWS_AS(cohom::AlgebraMap(prod, space, tooFew), DomainError);
    std::vector<cohom::ExtClass> wrongDegree(
        4, cohom::ExtClass::generator(prod, 0) *
               cohom::ExtClass::generator(prod, 1));
    CHECK_THROWS_AS(cohom::AlgebraMap(prod, space, wrongDegree), DomainError);
  }
}

TEST_CASE("oracle integration uses the symplectic volume") {
  for (unsigned g = 1; g <= 3; ++g) {
    CAPTURE(g);
    const cohom::CohomologyOracle oracle(g);
    CHECK(cohom::integrate(oracle.pointClass()) == 1);
    CHECK(cohom::integrate(oraclePower(oracle, g)) ==
          mpq_class(factorial(g)));
    if (g >= 2) CHECK(cohom::integrate(oracle.ellClass()) == 0);
    CHECK(oraclePower(oracle, g + 1).isZero());
  }
  CHECK_THROWS_AS(cohom::CohomologyOracle(0), DomainError);
  CHECK_THROWS_AS(cohom::CohomologyOracle(4), DomainError);
}

TEST_CASE("oracle Fourier transform reproduces the frozen model table") {
  for (unsigned g = 1; g <= 3; ++g) {
    CAPTURE(g);
    const cohom::CohomologyOracle oracle(g);

    for (unsigned i = 0; i <= g; ++i) {
      CAPTURE(i);
      mpq_class c(factorial(i), factorial(g - i));
      c.canonicalize();
      if ((g - i) % 2 == 1) c = -c;
      CHECK(oracle.fourier(oraclePower(oracle, i)) ==
            c * oraclePower(oracle, g - i));
    }

    // F(exp ℓ) = exp(−ℓ), the generating form of the table above.
    auto expPlus = cohom::ExtClass(oracle.spaceAlgebra());
    auto expMinus = expPlus;
    for (unsigned i = 0; i <= g; ++i) {
      const mpq_class inv(mpq_class(1) / mpq_class(factorial(i)));
      expPlus += inv * oraclePower(oracle, i);
      expMinus += (i % 2 == 1 ? -inv : inv) * oraclePower(oracle, i);
    }
    CHECK(oracle.fourier(expPlus) == expMinus);

    // F∘F = (−1)^g [−1]^* on the whole cohomology, monomial by monomial.
    for (std::uint32_t mask = 0; mask <= oracle.spaceAlgebra()->topMask();
         ++mask) {
      auto x = cohom::ExtClass::monomial(oracle.spaceAlgebra(), mask, 1);
      auto expect = oracle.multPull(-1, x);
      if (g % 2 == 1) expect = -expect;
      CHECK(oracle.fourier(oracle.fourier(x)) == expect);
    }
  }
}

TEST_CASE("oracle multiplication operators and convolution") {
  const cohom::CohomologyOracle oracle(2);
  const auto space = oracle.spaceAlgebra();

  SUBCASE("pull and push eigenvalues by codegree") {
    for (std::int64_t n : {-2, 3})
      for (std::uint32_t mask = 0; mask <= space->topMask(); ++mask) {
        const auto x = cohom::ExtClass::monomial(space, mask, 1);
        const int deg = std::popcount(mask);
        mpz_class pull = 1, push = 1;
        for (int k = 0; k < deg; ++k) pull *= n;
        for (int k = 0; k < 4 - deg; ++k) push *= n;
        CHECK(oracle.multPull(n, x) == mpq_class(pull) * x);
        CHECK(oracle.multPush(n, x) == mpq_class(push) * x);
      }
  }

  SUBCASE("push is integral-adjoint to pull") {
    for (std::uint32_t am = 0; am <= space->topMask(); ++am)
      for (std::uint32_t bm = 0; bm <= space->topMask(); ++bm) {
        const auto a = cohom::ExtClass::monomial(space, am, 1);
        const auto b = cohom::ExtClass::monomial(space, bm, 1);
        CHECK(cohom::integrate(oracle.multPush(2, a) * b) ==
              cohom::integrate(a * oracle.multPull(2, b)));
      }
  }

  SUBCASE("group-law convolution matches the model closed form") {
    for (unsigned g = 1; g <= 3; ++g) {
      CAPTURE(g);
      const cohom::CohomologyOracle o(g);
      for (unsigned i = 0; i <= g; ++i)
        for (unsigned j = 0; j <= g; ++j) {
          const auto prod =
              o.pontryagin(oraclePower(o, i), oraclePower(o, j));
          if (i + j < g) {
            CHECK(prod.isZero());
          } else {
            mpq_class c(factorial(i) * factorial(j) *
                            factorial(2 * g - i - j),
                        factorial(g - i) * factorial(g - j) *
                            factorial(i + j - g));
            c.canonicalize();
            CHECK(prod == c * oraclePower(o, i + j - g));
          }
        }
    }
  }
}

TEST_CASE("oracle graph classes") {
  SUBCASE("frozen curve table") {
    const cohom::CohomologyOracle oracle(1);
    const auto prod = oracle.productAlgebra();
    auto gen = [&](unsigned i) {
      return cohom::ExtClass::generator(prod, i);
    };
    for (std::int64_t n = -1; n <= 3; ++n) {
      auto expect = mpq_class(n * n) * (gen(0) * gen(1)) +
                    mpq_class(n) * (gen(1) * gen(2)) -
                    mpq_class(n) * (gen(0) * gen(3)) + gen(2) * gen(3);
      CHECK(oracle.graphClass(n) == expect);
    }
  }

  SUBCASE("acting on classes is the covariant multiplication operator") {
    for (unsigned g = 1; g <= 2; ++g) {
      const cohom::CohomologyOracle oracle(g);
      const auto space = oracle.spaceAlgebra();
      for (std::int64_t n : {-1, 0, 2}) {
        const auto graph = oracle.graphClass(n);
        for (std::uint32_t mask = 0; mask <= space->topMask(); ++mask) {
          const auto x = cohom::ExtClass::monomial(space, mask, 1);
          CHECK(oracle.corrAction(graph, x) == oracle.multPush(n, x));
        }
      }
    }
  }
}

TEST_CASE("oracle convolution of correspondences adds the labels") {
  SUBCASE("curve case, several labels") {
    const cohom::CohomologyOracle oracle(1);
    for (std::int64_t m = -1; m <= 2; ++m)
      for (std::int64_t n = -1; n <= 2; ++n)
        CHECK(oracle.corrStar(oracle.graphClass(m), oracle.graphClass(n)) ==
              oracle.graphClass(m + n));
  }

  SUBCASE("surface case, spot checks") {
    const cohom::CohomologyOracle oracle(2);
    CHECK(oracle.corrStar(oracle.graphClass(1), oracle.graphClass(1)) ==
          oracle.graphClass(2));
    CHECK(oracle.corrStar(oracle.graphClass(2), oracle.graphClass(-1)) ==
          oracle.graphClass(1));
  }

  SUBCASE("reduced diagonal is nilpotent of order exactly 2g+1") {
    // g = 1: the square is 2·(x1∧y1) ≠ 0 — it acts as multiplication by 2
    // on H^0 — and only the cube vanishes.
    const cohom::CohomologyOracle oracle(1);
    const auto d = oracle.graphClass(1) - oracle.graphClass(0);
    const auto d2 = oracle.corrStar(d, d);
    const auto prod = oracle.productAlgebra();
    CHECK(d2 == mpq_class(2) * (cohom::ExtClass::generator(prod, 0) *
                                cohom::ExtClass::generator(prod, 1)));
    CHECK(oracle.corrStar(d2, d).isZero());

    const auto unit = oracle.unitClass();
    CHECK(oracle.corrAction(d2, unit) == mpq_class(2) * unit);
    CHECK(oracle.corrAction(d2, oracle.ellClass()).isZero());
    CHECK(oracle.corrAction(d2, oracle.pointClass()).isZero());

    // g = 2: the fourth power survives, the fifth dies.
    const cohom::CohomologyOracle o2(2);
    const auto e = o2.graphClass(1) - o2.graphClass(0);
    const auto e2 = o2.corrStar(e, e);
    const auto e4 = o2.corrStar(e2, e2);
    CHECK_FALSE(e4.isZero());
    CHECK(o2.corrStar(e4, e).isZero());
  }

  SUBCASE("operands must live on the product") {
    const cohom::CohomologyOracle oracle(1);
    CHECK_THROWS_AS(oracle.corrStar(oracle.unitClass(), oracle.unitClass()),
                    DomainError);
  }
}

TEST_CASE("oracle scaled Fourier relations") {
  for (unsigned g = 1; g <= 3; ++g) {
    const auto report = cohom::scaledFourierCheck(g);
    CAPTURE(g);
    CHECK(report.pass);
    CHECK(report.residual.isZero());
    CHECK(report.identityName == "scaled-fourier");
    CHECK(report.parameters.at("g") == g);
  }
}
