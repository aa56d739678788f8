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

#include "fdual/identity.hpp"

#include <utility>
#include <vector>

#include "fdual/char_calculus.hpp"
#include "fdual/errors.hpp"
#include "fdual/primes.hpp"
#include "fdual/root_series.hpp"
#include "fdual/tm.hpp"

namespace fdual::ident {
namespace {

using chern::BundleSpec;
using chern::GradedPolynomial;
using chern::RootSeries;
using chern::VarTable;
namespace series = chern::series;

class Stopwatch {
 public:
  std::chrono::nanoseconds read() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

/// Cross-checks the two routes and seals the report.  A disagreement between
/// routes is an engine defect, not a falsified identity, hence the throw.
IdentityReport finishReport(std::string name,
                            std::map<std::string, std::int64_t> parameters,
                            const GradedPolynomial& routeA,
                            const GradedPolynomial& routeB,
                            const Stopwatch& sw) {
  if (!(routeA == routeB)) {
    throw InvariantError(name + ": independent verification routes disagree");
  }
  IdentityReport rep;
  rep.identityName = std::move(name);
  rep.parameters = std::move(parameters);
  rep.pass = routeA.isZero();
  rep.residual = routeA;
  rep.elapsed = sw.read();
  return rep;
}

void requireCap(unsigned value, const char* what) {
  if (value > kMaxDegreeCap) {
    throw DomainError(std::string(what) + " exceeds the degree cap " +
                      std::to_string(kMaxDegreeCap));
  }
}

/// Dualization c_i → (−1)^i c_i: every variable's weight equals its index, so
/// a monomial of weight w just picks up the sign (−1)^w.
GradedPolynomial dualized(const GradedPolynomial& p) {
  GradedPolynomial out(p.tablePtr());
  for (const auto& [e, c] : p.terms()) {
    out += GradedPolynomial::monomial(p.tablePtr(), e,
                                      p.weightOf(e) % 2 == 1 ? -c : c);
  }
  return out;
}

/// The same series with its variable negated: u(−x).
series::Univariate withNegatedVariable(series::Univariate u) {
  for (std::size_t k = 1; k < u.size(); k += 2) u[k] = -u[k];
  return u;
}

/// ∏_{i∈[begin,end)} u(α_i) over the shared root list, truncated at cap.
RootSeries productOverWindow(const series::Univariate& u,
                             const std::vector<std::string>& roots,
                             unsigned cap, std::size_t begin,
                             std::size_t end) {
  auto prod = RootSeries::constant(1, roots, cap);
  for (std::size_t i = begin; i < end; ++i) {
    prod = prod * RootSeries::univariateInRoot(u, i, roots, cap);
  }
  return prod;
}

/// T_i/(T_j·k!), certified integral.
mpz_class exactSeqCoefficient(unsigned i, unsigned j, unsigned k) {
  std::vector<unsigned> ms;
  if (k >= 1) ms.push_back(k - 1);
  return arith::divisibilityWitness(ms, {j}, i);
}

}  // namespace

IdentityReport verifyExactSeqIdentity(unsigned r1, unsigned r2,
                                      unsigned maxDeg) {
  if (r1 < 1 || r2 < 1) {
    throw DomainError("verifyExactSeqIdentity: ranks must be ≥ 1");
  }
  requireCap(maxDeg, "verifyExactSeqIdentity: maxDeg");
  Stopwatch sw;

  // Route A: Whitney substitution.  H's Chern classes are renamed h_n and
  // replaced by Σ_{a+b=n} c_a(E₁)·c'_b(E₂).
  const unsigned rankH = r1 + r2;
  std::vector<chern::PolyVar> sumVars;
  for (unsigned i = 1; i <= r1; ++i) {
    sumVars.push_back({chern::chernVarName("c", i), i});
  }
  for (unsigned i = 1; i <= r2; ++i) {
    sumVars.push_back({chern::chernVarName("c'", i), i});
  }
  auto sumTable = VarTable::make(std::move(sumVars));
  auto chernOf = [&](const std::string& prefix, unsigned n) {
    if (n == 0) return GradedPolynomial::constant(1);
    return GradedPolynomial::variable(sumTable,
                                      chern::chernVarName(prefix, n));
  };
  std::vector<GradedPolynomial> whitney(rankH + 1);
  for (unsigned n = 0; n <= rankH; ++n) {
    GradedPolynomial acc(sumTable);
    for (unsigned a = 0; a <= n; ++a) {
      const unsigned b = n - a;
      if (a > r1 || b > r2) continue;
      acc += chernOf("c", a) * chernOf("c'", b);
    }
    whitney[n] = std::move(acc);
  }

  GradedPolynomial residualA;
  for (unsigned i = 0; i <= maxDeg; ++i) {
    GradedPolynomial lhs = chern::fTd(i, rankH);
    std::vector<std::pair<std::string, std::string>> renames;
    for (std::size_t v = 0; v < lhs.table().size(); ++v) {
      renames.push_back({lhs.table().var(v).name, "h" + std::to_string(v + 1)});
    }
    lhs = lhs.withRenamedVariables(renames);
    for (unsigned n = 1; n <= rankH && n <= i; ++n) {
      lhs = lhs.substitute("h" + std::to_string(n), whitney[n]);
    }

    GradedPolynomial rhs;
    for (unsigned j = 0; j <= i; ++j) {
      const unsigned k = i - j;
      const mpz_class coeff = arith::divisibilityWitness({}, {j, k}, i);
      GradedPolynomial right = chern::fTd(k, r2);
      std::vector<std::pair<std::string, std::string>> toSecond;
      for (std::size_t v = 0; v < right.table().size(); ++v) {
        const std::string& name = right.table().var(v).name;
        toSecond.push_back({name, "c'" + name.substr(1)});  // c3 → c'3
      }
      right = right.withRenamedVariables(toSecond);
      GradedPolynomial term = chern::fTd(j, r1) * right;
      term.scale(mpq_class(coeff));
      rhs += term;
    }
    residualA += lhs - rhs;
  }

  // Route B: root-level products of Q(α) over the concatenated root list.
  auto e1 = BundleSpec::make("E1", r1);
  auto e2 = BundleSpec::make("E2", r2);
  std::vector<std::string> roots = e1.roots;
  roots.insert(roots.end(), e2.roots.begin(), e2.roots.end());
  const auto q = series::qSeries(maxDeg);
  const auto prodAll = productOverWindow(q, roots, maxDeg, 0, rankH);
  const auto prodE1 = productOverWindow(q, roots, maxDeg, 0, r1);
  const auto prodE2 = productOverWindow(q, roots, maxDeg, r1, rankH);
  RootSeries residualRoots(roots, maxDeg);
  for (unsigned i = 0; i <= maxDeg; ++i) {
    RootSeries lhs = prodAll.homogeneousPart(i);
    lhs.scale(mpq_class(arith::bigT(i)));
    RootSeries rhs(roots, maxDeg);
    for (unsigned j = 0; j <= i; ++j) {
      const unsigned k = i - j;
      const mpz_class coeff = arith::divisibilityWitness({}, {j, k}, i);
      RootSeries term = prodE1.homogeneousPart(j) * prodE2.homogeneousPart(k);
      term.scale(mpq_class(coeff * arith::bigT(j) * arith::bigT(k)));
      rhs += term;
    }
    residualRoots += lhs - rhs;
  }
  GradedPolynomial residualB = chern::rootsToChern(residualRoots, {e1, e2});

  return finishReport(
      "exact-seq",
      {{"r1", r1}, {"r2", r2}, {"maxDeg", maxDeg}},
      residualA, residualB, sw);
}

IdentityReport verifyDualIdentity(unsigned r, unsigned maxDeg) {
  if (r < 1) throw DomainError("verifyDualIdentity: rank must be ≥ 1");
  requireCap(maxDeg, "verifyDualIdentity: maxDeg");
  Stopwatch sw;

  // Route A: dualization is the sign flip c_i → (−1)^i c_i; the determinant
  // line contributes fs_k(det E) = c_1^k.
  auto table = VarTable::make({{chern::chernVarName("c", 1), 1}});
  const auto c1 = GradedPolynomial::variable(table, "c1");
  GradedPolynomial residualA;
  for (unsigned i = 0; i <= maxDeg; ++i) {
    GradedPolynomial lhs = chern::fTd(i, r);
    GradedPolynomial rhs;
    for (unsigned j = 0; j <= i; ++j) {
      const unsigned k = i - j;
      GradedPolynomial term = dualized(chern::fTd(j, r)) * c1.pow(k);
      term.scale(mpq_class(exactSeqCoefficient(i, j, k)));
      rhs += term;
    }
    residualA += lhs - rhs;
  }

  // Route B: Q(−α) products for the dual, e_1(α)^k for the determinant.
  auto b = BundleSpec::make("E", r);
  const auto q = series::qSeries(maxDeg);
  const auto prodQ = productOverWindow(q, b.roots, maxDeg, 0, r);
  const auto prodQDual =
      productOverWindow(withNegatedVariable(q), b.roots, maxDeg, 0, r);
  const auto e1 =
      RootSeries::elementarySymmetric(b.roots, maxDeg, 0, r, 1);
  RootSeries residualRoots(b.roots, maxDeg);
  for (unsigned i = 0; i <= maxDeg; ++i) {
    RootSeries lhs = prodQ.homogeneousPart(i);
    lhs.scale(mpq_class(arith::bigT(i)));
    RootSeries rhs(b.roots, maxDeg);
    for (unsigned j = 0; j <= i; ++j) {
      const unsigned k = i - j;
      RootSeries term = prodQDual.homogeneousPart(j) * e1.pow(k);
      term.scale(
          mpq_class(exactSeqCoefficient(i, j, k) * arith::bigT(j)));
      rhs += term;
    }
    residualRoots += lhs - rhs;
  }
  GradedPolynomial residualB = chern::rootsToChern(residualRoots, {b});

  return finishReport("dual", {{"r", r}, {"maxDeg", maxDeg}}, residualA,
                      residualB, sw);
}

IdentityReport verifyTdInvIdentity(unsigned r, unsigned maxM) {
  if (r < 1) throw DomainError("verifyTdInvIdentity: rank must be ≥ 1");
  requireCap(maxM, "verifyTdInvIdentity: maxM");
  Stopwatch sw;

  // T_{r+m}/(T_i·(r+m−i)!), certified integral.
  auto convCoefficient = [&](unsigned m, unsigned i) {
    return arith::divisibilityWitness({r + m - i - 1}, {i}, r + m);
  };

  // Route A.
  GradedPolynomial residualA;
  for (unsigned m = 0; m <= maxM; ++m) {
    GradedPolynomial sum;
    for (unsigned i = 0; i <= m; ++i) {
      GradedPolynomial term = chern::fTd(i, r) * chern::fTdInv(r, m - i);
      term.scale(mpq_class(convCoefficient(m, i)));
      sum += term;
    }
    if (m == 0) sum -= GradedPolynomial::constant(mpq_class(arith::bigT(r)));
    residualA += sum;
  }

  // Route B.
  auto b = BundleSpec::make("E", r);
  const auto prodQ =
      productOverWindow(series::qSeries(maxM), b.roots, maxM, 0, r);
  const auto prodQInv =
      productOverWindow(series::qInvSeries(maxM), b.roots, maxM, 0, r);
  RootSeries residualRoots(b.roots, maxM);
  for (unsigned m = 0; m <= maxM; ++m) {
    RootSeries sum(b.roots, maxM);
    for (unsigned i = 0; i <= m; ++i) {
      RootSeries term =
          prodQ.homogeneousPart(i) * prodQInv.homogeneousPart(m - i);
      term.scale(mpq_class(convCoefficient(m, i) * arith::bigT(i) *
                           arith::factorial(r + m - i)));
      sum += term;
    }
    if (m == 0) {
      sum -= RootSeries::constant(mpq_class(arith::bigT(r)), b.roots, maxM);
    }
    residualRoots += sum;
  }
  GradedPolynomial residualB = chern::rootsToChern(residualRoots, {b});

  return finishReport("td-inv", {{"r", r}, {"maxM", maxM}}, residualA,
                      residualB, sw);
}

IdentityReport verifyBinomIdentity(unsigned maxM) {
  requireCap(maxM, "verifyBinomIdentity: maxM");
  Stopwatch sw;

  // Route A: δ as a weight-1 polynomial variable.
  auto table = VarTable::make({{"delta", 1}});
  const auto delta = GradedPolynomial::variable(table, "delta");
  GradedPolynomial residualA;
  for (unsigned m = 0; m <= maxM; ++m) {
    GradedPolynomial sum;
    for (unsigned i = 0; i <= m; ++i) {
      GradedPolynomial term = delta.pow(i) * (-delta).pow(m - i);
      term.scale(mpq_class(arith::binomial(m, i)));
      sum += term;
    }
    if (m == 0) sum -= GradedPolynomial::constant(1);
    residualA += sum;
  }

  // Route B: δ as the single Chern root of a formal line bundle.
  auto b = BundleSpec::make("D", 1);
  const auto deltaRoot =
      RootSeries::univariateInRoot({0, 1}, 0, b.roots, maxM);
  RootSeries residualRoots(b.roots, maxM);
  for (unsigned m = 0; m <= maxM; ++m) {
    RootSeries sum(b.roots, maxM);
    for (unsigned i = 0; i <= m; ++i) {
      RootSeries term = deltaRoot.pow(i) * (-deltaRoot).pow(m - i);
      term.scale(mpq_class(arith::binomial(m, i)));
      sum += term;
    }
    if (m == 0) sum -= RootSeries::constant(1, b.roots, maxM);
    residualRoots += sum;
  }
  GradedPolynomial residualB = chern::rootsToChern(residualRoots, {b})
                                   .withRenamedVariables({{"c1", "delta"}});

  return finishReport("binom", {{"maxM", maxM}}, residualA, residualB, sw);
}

IdentityReport verifyKeyCollapse(unsigned g, unsigned muMax) {
  if (g < 1 || g > 3) {
    throw DomainError("verifyKeyCollapse: g must be in 1..3 (desk scale)");
  }
  if (muMax > 3) throw DomainError("verifyKeyCollapse: muMax must be ≤ 3");
  Stopwatch sw;

  // T_{2g+μ}/(T_k·ℓ!·a!·(g+c)!), certified integral.
  auto quadCoefficient = [&](unsigned mu, unsigned k, unsigned l, unsigned a,
                             unsigned c) {
    std::vector<unsigned> ms;
    if (l >= 1) ms.push_back(l - 1);
    if (a >= 1) ms.push_back(a - 1);
    ms.push_back(g + c - 1);
    return arith::divisibilityWitness(ms, {k}, 2 * g + mu);
  };

  // Route A.  The δ-slices of QS(μ) − DS(μ) each carry δ^{ℓ+a} with
  // ℓ + a ≥ 1, so they cannot cancel against the δ-free stage-(ii) residual;
  // summing both stages into one polynomial is lossless.
  auto table = VarTable::make({{"delta", 1}});
  const auto delta = GradedPolynomial::variable(table, "delta");
  std::vector<GradedPolynomial> dualTd(muMax + 1), dualTdInv(muMax + 1);
  for (unsigned k = 0; k <= muMax; ++k) {
    dualTd[k] = dualized(chern::fTd(k, g));
    dualTdInv[k] = dualized(chern::fTdInv(g, k));
  }
  GradedPolynomial residualA;
  for (unsigned mu = 0; mu <= muMax; ++mu) {
    GradedPolynomial quad, dbl;
    for (unsigned k = 0; k <= mu; ++k) {
      for (unsigned l = 0; l + k <= mu; ++l) {
        for (unsigned a = 0; a + l + k <= mu; ++a) {
          const unsigned c = mu - k - l - a;
          GradedPolynomial term = delta.pow(l) * (-delta).pow(a) * dualTd[k] *
                                  dualTdInv[c];
          term.scale(mpq_class(quadCoefficient(mu, k, l, a, c)));
          quad += term;
        }
      }
      const unsigned c = mu - k;
      GradedPolynomial term = dualTd[k] * dualTdInv[c];
      term.scale(mpq_class(quadCoefficient(mu, k, 0, 0, c)));
      dbl += term;
    }
    residualA += quad - dbl;  // stage (i)
    residualA += dbl;         // stage (ii): DS(μ) − [μ=0]·T_{2g}
    if (mu == 0) {
      residualA -= GradedPolynomial::constant(mpq_class(arith::bigT(2 * g)));
    }
  }

  // Route B: E's roots plus δ as the root of an auxiliary line bundle.
  auto eb = BundleSpec::make("E", g);
  auto db = BundleSpec::make("D", 1);
  std::vector<std::string> roots = eb.roots;
  roots.insert(roots.end(), db.roots.begin(), db.roots.end());
  const auto qDual = withNegatedVariable(series::qSeries(muMax));
  const auto qInvDual = withNegatedVariable(series::qInvSeries(muMax));
  const auto prodTdDual = productOverWindow(qDual, roots, muMax, 0, g);
  const auto prodTdInvDual = productOverWindow(qInvDual, roots, muMax, 0, g);
  const auto deltaRoot = RootSeries::univariateInRoot({0, 1}, g, roots, muMax);
  auto dualTdRoot = [&](unsigned k) {
    RootSeries s = prodTdDual.homogeneousPart(k);
    s.scale(mpq_class(arith::bigT(k)));
    return s;
  };
  auto dualTdInvRoot = [&](unsigned c) {
    RootSeries s = prodTdInvDual.homogeneousPart(c);
    s.scale(mpq_class(arith::factorial(g + c)));
    return s;
  };
  RootSeries residualRoots(roots, muMax);
  for (unsigned mu = 0; mu <= muMax; ++mu) {
    RootSeries quad(roots, muMax), dbl(roots, muMax);
    for (unsigned k = 0; k <= mu; ++k) {
      for (unsigned l = 0; l + k <= mu; ++l) {
        for (unsigned a = 0; a + l + k <= mu; ++a) {
          const unsigned c = mu - k - l - a;
          RootSeries term = deltaRoot.pow(l) * (-deltaRoot).pow(a) *
                            dualTdRoot(k) * dualTdInvRoot(c);
          term.scale(mpq_class(quadCoefficient(mu, k, l, a, c)));
          quad += term;
        }
      }
      const unsigned c = mu - k;
      RootSeries term = dualTdRoot(k) * dualTdInvRoot(c);
      term.scale(mpq_class(quadCoefficient(mu, k, 0, 0, c)));
      dbl += term;
    }
    residualRoots += quad - dbl;
    residualRoots += dbl;
    if (mu == 0) {
      residualRoots -=
          RootSeries::constant(mpq_class(arith::bigT(2 * g)), roots, muMax);
    }
  }
  GradedPolynomial residualB = chern::rootsToChern(residualRoots, {eb, db})
                                   .withRenamedVariables({{"c'1", "delta"}});

  return finishReport("key-collapse", {{"g", g}, {"muMax", muMax}}, residualA,
                      residualB, sw);
}

IdentityReport pappasShapeCheck(unsigned g, unsigned n) {
  if (g < 1) throw DomainError("pappasShapeCheck: g must be ≥ 1");
  if (g + n > 12) throw DomainError("pappasShapeCheck: g+n must be ≤ 12");
  Stopwatch sw;

  const unsigned m = g + n;
  const mpz_class tm = arith::bigT(m);
  auto ratio = [](const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  };

  // Route A: direct rational arithmetic; the residual collects fractional
  // parts, so it vanishes exactly when every constant is an integer.
  // Route B: the divisibility witness, which proves integrality or throws.
  mpq_class fractionalSum = 0;
  auto check = [&](const mpq_class& q, const std::vector<unsigned>& ms,
                   const std::vector<unsigned>& ns) {
    mpq_class frac = q - mpq_class(mpz_class(q.get_num() / q.get_den()));
    fractionalSum += frac;
    bool witnessIntegral = true;
    mpz_class w = 0;
    try {
      w = arith::divisibilityWitness(ms, ns, m);
    } catch (const InvariantError&) {
      witnessIntegral = false;
    }
    if (witnessIntegral != (frac == 0) || (witnessIntegral && w != q)) {
      throw InvariantError(
          "pappasShapeCheck: witness and direct division disagree");
    }
  };

  {
    std::vector<unsigned> ms;
    if (n >= 1) ms.push_back(n - 1);
    check(ratio(tm, arith::factorial(n)), ms, {});
  }
  for (unsigned i = 0; i <= m; ++i) {
    const unsigned j = m - i;
    std::vector<unsigned> ms;
    if (i >= 1) ms.push_back(i - 1);
    check(ratio(tm, arith::factorial(i) * arith::bigT(j)), ms, {j});
  }

  const auto residual = GradedPolynomial::constant(fractionalSum);
  return finishReport("pappas-shape", {{"g", g}, {"n", n}}, residual, residual,
                      sw);
}

}  // namespace fdual::ident
