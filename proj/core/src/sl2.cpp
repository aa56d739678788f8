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
 * @file sl2.cpp
 * @brief Presented-module sl₂ calculus.  Every structural question — kernel,
 *        membership, isomorphism — is phrased as a linear system over Λ and
 *        discharged through one Smith-normal-form engine, so free and torsion
 *        generators flow through identical code paths.
 */
#include "fdual/sl2.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/polynomial.hpp"
#include "fdual/primes.hpp"
#include "fdual/taut_model.hpp"

namespace fdual::sl2 {
namespace {

using arith::IntMatrix;
using arith::InvertedPrimeSet;
using arith::LambdaScalar;
using arith::RatMatrix;
using arith::SmithDecomposition;

class Stopwatch {
 public:
  std::chrono::nanoseconds read() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

mpz_class power(std::int64_t base, unsigned exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), mpz_class(base).get_mpz_t(), exp);
  return out;
}

bool inLambda(const mpq_class& x, const InvertedPrimeSet& ring) {
  if (x.get_den() == 1) {
    return true;
  }
  return InvertedPrimeSet::dividing(x.get_den()).isSubsetOf(ring);
}

/// Membership of x in the ideal (a) of Λ; (0) is honest equality with zero.
bool inIdeal(const mpq_class& x, const mpz_class& a,
             const InvertedPrimeSet& ring) {
  if (a == 0) {
    return x == 0;
  }
  return inLambda(x / mpq_class(a), ring);
}

std::vector<mpz_class> annihilators(const PieceShape& p) {
  std::vector<mpz_class> out(p.generators());
  for (unsigned i = 0; i < p.generators(); ++i) {
    out[i] = p.annihilator(i);
  }
  return out;
}

std::vector<std::int64_t> torsionPrimes(const PieceShape& p) {
  std::vector<std::int64_t> out;
  for (const auto& t : p.torsion) {
    if (std::find(out.begin(), out.end(), t.prime) == out.end()) {
      out.push_back(t.prime);
    }
  }
  return out;
}

/// The diagonal relation matrix of a piece, one column per torsion
/// generator; free generators contribute no relation.
RatMatrix relationColumns(const std::vector<mpz_class>& ann) {
  std::size_t torsion = 0;
  for (const auto& a : ann) {
    if (a != 0) {
      ++torsion;
    }
  }
  RatMatrix r(ann.size(), torsion);
  std::size_t col = 0;
  for (std::size_t i = 0; i < ann.size(); ++i) {
    if (ann[i] != 0) {
      r.set(i, col++, mpq_class(ann[i]));
    }
  }
  return r;
}

RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DomainError("sl2: horizontal concatenation of mismatched rows");
  }
  RatMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.set(i, j, a.at(i, j));
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out.set(i, a.cols() + j, b.at(i, j));
    }
  }
  return out;
}

RatMatrix scaleMatrix(const RatMatrix& m, const mpq_class& c) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.set(i, j, c * m.at(i, j));
    }
  }
  return out;
}

std::vector<mpq_class> column(const RatMatrix& m, std::size_t j) {
  std::vector<mpq_class> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out[i] = m.at(i, j);
  }
  return out;
}

std::vector<mpq_class> applyMatrix(const RatMatrix& m,
                             const std::vector<mpq_class>& v) {
  if (m.cols() != v.size()) {
    throw DomainError("sl2: matrix–vector size mismatch");
  }
  std::vector<mpq_class> out(m.rows(), mpq_class(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (v[j] != 0) {
        out[i] += m.at(i, j) * v[j];
      }
    }
  }
  return out;
}

/// Scale each row by the lcm of its denominators — a Λ-unit, so kernels and
/// Λ-solution sets are untouched — and return the integral matrix together
/// with the multipliers.  @throws DomainError if an entry lies outside Λ.
struct ClearedRows {
  IntMatrix m;
  std::vector<mpz_class> rowScale;
};

ClearedRows clearRows(const RatMatrix& a, const InvertedPrimeSet& ring) {
  ClearedRows out;
  out.m = IntMatrix(a.rows(), a.cols());
  out.rowScale.assign(a.rows(), mpz_class(1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpz_class den = a.at(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    if (l != 1 && !InvertedPrimeSet::dividing(l).isSubsetOf(ring)) {
      throw DomainError("sl2: matrix entry outside the coefficient ring");
    }
    out.rowScale[i] = l;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mpq_class scaled = a.at(i, j) * mpq_class(l);
      out.m.set(i, j, scaled.get_num());
    }
  }
  return out;
}

/// Basis of {x ∈ Λ^cols : m·x = 0}: the transform columns of the Smith form
/// at zero (or absent) diagonal entries.  They span the full kernel because
/// any solution has coordinates supported there after the V-change of basis.
RatMatrix lambdaKernel(const RatMatrix& m, const InvertedPrimeSet& ring) {
  if (m.cols() == 0) {
    return RatMatrix(0, 0);
  }
  if (m.rows() == 0 || m.isZero()) {
    return RatMatrix::identity(m.cols());
  }
  const SmithDecomposition snf = smithNormalForm(clearRows(m, ring).m, ring);
  const auto diag = snf.diagonal();
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j >= diag.size() || diag[j] == 0) {
      free.push_back(j);
    }
  }
  RatMatrix out(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    for (std::size_t i = 0; i < m.cols(); ++i) {
      out.set(i, k, snf.V.at(i, free[k]));
    }
  }
  return out;
}

/// Solve m·x = b with x ∈ Λ^cols, or report that no such x exists.
std::optional<std::vector<mpq_class>> solveOverRing(
    const RatMatrix& m, const std::vector<mpq_class>& b,
    const InvertedPrimeSet& ring) {
  if (m.rows() != b.size()) {
    throw DomainError("sl2: linear system size mismatch");
  }
  if (m.rows() == 0) {
    return std::vector<mpq_class>(m.cols(), mpq_class(0));
  }
  if (m.cols() == 0) {
    for (const auto& e : b) {
      if (e != 0) {
        return std::nullopt;
      }
    }
    return std::vector<mpq_class>{};
  }
  const ClearedRows cleared = clearRows(m, ring);
  std::vector<mpq_class> bs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    bs[i] = b[i] * mpq_class(cleared.rowScale[i]);
  }
  const SmithDecomposition snf = smithNormalForm(cleared.m, ring);
  const auto ub = applyMatrix(snf.U, bs);
  const auto diag = snf.diagonal();
  std::vector<mpq_class> z(m.cols(), mpq_class(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const mpz_class d = (i < diag.size()) ? diag[i] : mpz_class(0);
    if (d != 0) {
      mpq_class zi = ub[i] / mpq_class(d);
      if (!inLambda(zi, ring)) {
        return std::nullopt;
      }
      z[i] = zi;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return applyMatrix(snf.V, z);
}

/// Generators of the kernel of the induced map Λ^cols/R_src → Λ^rows/R_tgt,
/// expressed as columns in the source coordinates: the x-part of the honest
/// Λ-kernel of [f | R_tgt], since f·x ∈ im R_tgt ⟺ [f | R_tgt]·(x, −y) = 0.
RatMatrix inducedKernelGens(const RatMatrix& f,
                            const std::vector<mpz_class>& tgtAnn,
                            const InvertedPrimeSet& ring) {
  if (f.rows() != tgtAnn.size()) {
    throw DomainError("sl2: kernel target size mismatch");
  }
  if (f.cols() == 0) {
    return RatMatrix(0, 0);
  }
  if (f.rows() == 0) {
    return RatMatrix::identity(f.cols());
  }
  const RatMatrix aug = hcat(f, relationColumns(tgtAnn));
  const RatMatrix ker = lambdaKernel(aug, ring);
  RatMatrix out(f.cols(), ker.cols());
  for (std::size_t i = 0; i < f.cols(); ++i) {
    for (std::size_t j = 0; j < ker.cols(); ++j) {
      out.set(i, j, ker.at(i, j));
    }
  }
  return out;
}

/// Present the subquotient (span K + im R)/im R of Λ^rows/R canonically.
/// The relation lattice among K's columns is Smith-reduced; unit diagonal
/// entries are dropped, composite ones are split into primary parts with
/// explicit CRT idempotents, and the survivors are re-ordered free-first.
/// Candidate torsion primes are those of the ambient piece — a subquotient
/// cannot acquire new ones, and a leftover factor is an engine defect.
KernelResult presentSubquotient(const RatMatrix& k,
                                const std::vector<mpz_class>& ambientAnn,
                                const std::vector<std::int64_t>& primes,
                                const InvertedPrimeSet& ring) {
  if (k.rows() != ambientAnn.size()) {
    throw DomainError("sl2: subquotient ambient size mismatch");
  }
  KernelResult out;
  if (k.cols() == 0) {
    out.embedding = RatMatrix(k.rows(), 0);
    return out;
  }
  const RatMatrix relations = inducedKernelGens(k, ambientAnn, ring);
  std::vector<mpz_class> diag;
  RatMatrix gens = k;
  if (relations.cols() > 0) {
    const SmithDecomposition snf =
        smithNormalForm(clearRows(relations, ring).m, ring);
    diag = snf.diagonal();
    gens = k * snf.U.inverse();
  }
  std::vector<std::vector<mpq_class>> freeCols;
  std::vector<std::tuple<std::int64_t, unsigned, std::vector<mpq_class>>> tors;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    const mpz_class d = (j < diag.size()) ? diag[j] : mpz_class(0);
    if (d == 1) {
      continue;  // generator already lies in the relation lattice
    }
    if (d == 0) {
      freeCols.push_back(column(gens, j));
      continue;
    }
    std::vector<std::pair<std::int64_t, unsigned>> split;
    mpz_class rest = d;
    for (std::int64_t p : primes) {
      const unsigned a = arith::vp(d, p);
      if (a > 0) {
        split.emplace_back(p, a);
        mpz_class pk = power(p, a);
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), pk.get_mpz_t());
      }
    }
    if (rest != 1) {
      throw InvariantError(
          "sl2: subquotient produced torsion at a prime absent from the "
          "ambient piece");
    }
    if (split.size() == 1) {
      tors.emplace_back(split[0].first, split[0].second, column(gens, j));
      continue;
    }
    for (const auto& [p, a] : split) {
      const mpz_class q = power(p, a);
      mpz_class cof = d / q;
      mpz_class beta;
      if (mpz_invert(beta.get_mpz_t(), cof.get_mpz_t(), q.get_mpz_t()) == 0) {
        throw InvariantError("sl2: CRT cofactor not invertible");
      }
      mpz_class alpha = (cof * beta) % d;
      auto col = column(gens, j);
      for (auto& e : col) {
        e *= mpq_class(alpha);
      }
      tors.emplace_back(p, a, std::move(col));
    }
  }
  std::stable_sort(tors.begin(), tors.end(),
                   [](const auto& x, const auto& y) {
                     return std::pair(std::get<0>(x), std::get<1>(x)) <
                            std::pair(std::get<0>(y), std::get<1>(y));
                   });
  out.shape.freeRank = static_cast<unsigned>(freeCols.size());
  for (const auto& t : tors) {
    out.shape.torsion.push_back({std::get<0>(t), std::get<1>(t)});
  }
  out.embedding = RatMatrix(k.rows(), freeCols.size() + tors.size());
  std::size_t col = 0;
  for (const auto& c : freeCols) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.embedding.set(i, col, c[i]);
    }
    ++col;
  }
  for (const auto& t : tors) {
    const auto& c = std::get<2>(t);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.embedding.set(i, col, c[i]);
    }
    ++col;
  }
  return out;
}

/// A matrix defines a map of presented pieces when its entries lie in Λ and
/// each source relation is carried into the target relation lattice:
/// ann_src(j)·f_{ij} ∈ (ann_tgt(i)) entrywise.
bool wellDefinedMap(const RatMatrix& f, const std::vector<mpz_class>& srcAnn,
                    const std::vector<mpz_class>& tgtAnn,
                    const InvertedPrimeSet& ring) {
  if (f.rows() != tgtAnn.size() || f.cols() != srcAnn.size()) {
    return false;
  }
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (!inLambda(f.at(i, j), ring)) {
        return false;
      }
      if (srcAnn[j] != 0 &&
          !inIdeal(mpq_class(srcAnn[j]) * f.at(i, j), tgtAnn[i], ring)) {
        return false;
      }
    }
  }
  return true;
}

/// Equality of maps into a presented piece: entrywise congruence of the
/// difference against the row annihilators.
bool congruentMaps(const RatMatrix& a, const RatMatrix& b,
                   const std::vector<mpz_class>& tgtAnn,
                   const InvertedPrimeSet& ring) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      a.rows() != tgtAnn.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!inIdeal(a.at(i, j) - b.at(i, j), tgtAnn[i], ring)) {
        return false;
      }
    }
  }
  return true;
}

bool congruentVectors(const std::vector<mpq_class>& a,
                      const std::vector<mpq_class>& b,
                      const std::vector<mpz_class>& tgtAnn,
                      const InvertedPrimeSet& ring) {
  if (a.size() != b.size() || a.size() != tgtAnn.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!inIdeal(a[i] - b[i], tgtAnn[i], ring)) {
      return false;
    }
  }
  return true;
}

ident::IdentityReport countingReport(
    std::string name, std::map<std::string, std::int64_t> parameters,
    std::int64_t failures, const Stopwatch& sw) {
  ident::IdentityReport rep;
  rep.identityName = std::move(name);
  rep.parameters = std::move(parameters);
  rep.pass = failures == 0;
  rep.residual = chern::GradedPolynomial::constant(mpq_class(failures));
  rep.elapsed = sw.read();
  return rep;
}

}  // namespace

mpz_class PieceShape::annihilator(unsigned index) const {
  if (index >= generators()) {
    throw DomainError("PieceShape: generator index out of range");
  }
  if (index < freeRank) {
    return mpz_class(0);
  }
  const TorsionFactor& t = torsion[index - freeRank];
  return power(t.prime, t.exponent);
}

std::string PieceShape::toString() const {
  if (isTrivial()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) {
      os << " + ";
    }
    first = false;
  };
  if (freeRank > 0) {
    sep();
    os << "free";
    if (freeRank > 1) {
      os << "^" << freeRank;
    }
  }
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t run = i;
    while (run < torsion.size() && torsion[run] == torsion[i]) {
      ++run;
    }
    sep();
    os << "(Z/" << torsion[i].prime;
    if (torsion[i].exponent > 1) {
      os << "^" << torsion[i].exponent;
    }
    os << ")";
    if (run - i > 1) {
      os << "^" << (run - i);
    }
    i = run;
  }
  return os.str();
}

Sl2Module::Sl2Module(unsigned g, InvertedPrimeSet ring,
                     std::map<int, PieceShape> pieces,
                     std::map<int, RatMatrix> eMaps,
                     std::map<int, RatMatrix> fMaps)
    : g_(g),
      ring_(std::move(ring)),
      pieces_(std::move(pieces)),
      eMaps_(std::move(eMaps)),
      fMaps_(std::move(fMaps)) {
  if (!InvertedPrimeSet::dividing(arith::factorial(2 * g_))
           .isSubsetOf(ring_)) {
    throw DomainError("Sl2Module: the ring must invert (2g)!");
  }
  std::erase_if(pieces_, [](const auto& kv) { return kv.second.isTrivial(); });
  for (const auto& [w, p] : pieces_) {
    if (w < -static_cast<int>(g_) || w > static_cast<int>(g_)) {
      throw DomainError("Sl2Module: weight " + std::to_string(w) +
                        " outside [-g, g]");
    }
    for (const auto& t : p.torsion) {
      if (!arith::isPrime(t.prime) || t.exponent == 0) {
        throw DomainError("Sl2Module: invalid torsion factor");
      }
      if (ring_.contains(t.prime)) {
        throw DomainError("Sl2Module: torsion prime " +
                          std::to_string(t.prime) +
                          " is invertible in the ring");
      }
    }
    if (!std::is_sorted(p.torsion.begin(), p.torsion.end())) {
      throw DomainError(
          "Sl2Module: torsion factors must be sorted by (prime, exponent)");
    }
  }
  const auto checkMaps = [&](std::map<int, RatMatrix>& maps, int shift,
                             const char* which) {
    for (auto it = maps.begin(); it != maps.end();) {
      const PieceShape& src = piece(it->first);
      const PieceShape& tgt = piece(it->first + shift);
      if (it->second.rows() != tgt.generators() ||
          it->second.cols() != src.generators()) {
        throw DomainError(std::string("Sl2Module: ") + which +
                          " map at weight " + std::to_string(it->first) +
                          " has the wrong dimensions");
      }
      if (!wellDefinedMap(it->second, annihilators(src), annihilators(tgt),
                          ring_)) {
        throw DomainError(std::string("Sl2Module: ") + which +
                          " map at weight " + std::to_string(it->first) +
                          " is not well defined against the relations");
      }
      if (it->second.rows() == 0 || it->second.cols() == 0) {
        it = maps.erase(it);
      } else {
        ++it;
      }
    }
  };
  checkMaps(eMaps_, +2, "e");
  checkMaps(fMaps_, -2, "f");
  // Canonical entries: a coefficient landing on a torsion generator only
  // matters modulo its annihilator, so reduce it to the representative in
  // [0, p^k) — Λ/(p^k) ≅ ℤ/p^k because every inverted prime is a unit there.
  const auto reduceMaps = [&](std::map<int, RatMatrix>& maps, int shift) {
    for (auto& [w, m] : maps) {
      const auto tgtAnn = annihilators(piece(w + shift));
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (tgtAnn[i] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
          const mpq_class& x = m.at(i, j);
          mpz_class denInv;
          mpz_invert(denInv.get_mpz_t(), x.get_den().get_mpz_t(),
                     tgtAnn[i].get_mpz_t());
          mpz_class rep = (x.get_num() * denInv) % tgtAnn[i];
          if (rep < 0) {
            rep += tgtAnn[i];
          }
          m.set(i, j, mpq_class(rep));
        }
      }
    }
  };
  reduceMaps(eMaps_, +2);
  reduceMaps(fMaps_, -2);
  for (const auto& [w, p] : pieces_) {
    const RatMatrix ef = eMap(w - 2) * fMap(w);
    const RatMatrix fe = fMap(w + 2) * eMap(w);
    const RatMatrix h =
        scaleMatrix(RatMatrix::identity(p.generators()), mpq_class(w));
    if (!congruentMaps(ef - fe, h, annihilators(p), ring_)) {
      throw InvariantError(
          "Sl2Module: not a representation — [e, f] differs from h at "
          "weight " +
          std::to_string(w));
    }
  }
}

const PieceShape& Sl2Module::piece(int weight) const {
  static const PieceShape kTrivial{};
  const auto it = pieces_.find(weight);
  return it == pieces_.end() ? kTrivial : it->second;
}

RatMatrix Sl2Module::eMap(int weight) const {
  const auto it = eMaps_.find(weight);
  if (it != eMaps_.end()) {
    return it->second;
  }
  return RatMatrix(piece(weight + 2).generators(), piece(weight).generators());
}

RatMatrix Sl2Module::fMap(int weight) const {
  const auto it = fMaps_.find(weight);
  if (it != fMaps_.end()) {
    return it->second;
  }
  return RatMatrix(piece(weight - 2).generators(), piece(weight).generators());
}

std::vector<int> Sl2Module::weights() const {
  std::vector<int> out;
  out.reserve(pieces_.size());
  for (const auto& [w, p] : pieces_) {
    out.push_back(w);
  }
  return out;
}

Sl2Module symPower(unsigned n, const InvertedPrimeSet& ring) {
  if (!InvertedPrimeSet::dividing(arith::factorial(2 * n)).isSubsetOf(ring)) {
    throw DomainError("symPower: the ring must invert (2n)!");
  }
  std::map<int, PieceShape> pieces;
  std::map<int, RatMatrix> e, f;
  for (unsigned i = 0; i <= n; ++i) {
    const int w = -static_cast<int>(n) + 2 * static_cast<int>(i);
    pieces[w] = PieceShape{1, {}};
    if (i < n) {
      RatMatrix m(1, 1);
      m.set(0, 0, mpq_class(static_cast<long>(n - i)));
      e[w] = m;
    }
    if (i > 0) {
      RatMatrix m(1, 1);
      m.set(0, 0, mpq_class(static_cast<long>(i)));
      f[w] = m;
    }
  }
  return Sl2Module(n, ring, std::move(pieces), std::move(e), std::move(f));
}

Sl2Module dualModule(const Sl2Module& v) {
  std::map<int, PieceShape> pieces;
  std::map<int, RatMatrix> e, f;
  for (const int w : v.weights()) {
    pieces[-w] = v.piece(w);
    // e on the dual at weight −w is f of the original at weight w (and vice
    // versa); [e', f'] = −[e, f] = −h(w)·id = (−w)·id, the right scalar.
    if (!v.piece(w - 2).isTrivial()) {
      e[-w] = v.fMap(w);
    }
    if (!v.piece(w + 2).isTrivial()) {
      f[-w] = v.eMap(w);
    }
  }
  return Sl2Module(v.g(), v.ring(), std::move(pieces), std::move(e),
                   std::move(f));
}

namespace {

/// Concatenated shape of a ⊕ b together with the permutation taking the new
/// canonical order (free first, torsion sorted) back to stacked coordinates.
struct ConcatShape {
  PieceShape shape;
  std::vector<std::size_t> fromStacked;  // fromStacked[newIdx] = stacked idx
};

ConcatShape concatShapes(const PieceShape& a, const PieceShape& b) {
  ConcatShape out;
  out.shape.freeRank = a.freeRank + b.freeRank;
  for (unsigned i = 0; i < a.freeRank; ++i) {
    out.fromStacked.push_back(i);
  }
  for (unsigned i = 0; i < b.freeRank; ++i) {
    out.fromStacked.push_back(a.generators() + i);
  }
  std::vector<std::pair<TorsionFactor, std::size_t>> tors;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    tors.emplace_back(a.torsion[i], a.freeRank + i);
  }
  for (std::size_t i = 0; i < b.torsion.size(); ++i) {
    tors.emplace_back(b.torsion[i], a.generators() + b.freeRank + i);
  }
  std::stable_sort(tors.begin(), tors.end(), [](const auto& x, const auto& y) {
    return x.first < y.first;
  });
  for (const auto& [t, idx] : tors) {
    out.shape.torsion.push_back(t);
    out.fromStacked.push_back(idx);
  }
  return out;
}

RatMatrix stackedBlockDiag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.set(i, j, a.at(i, j));
    }
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out.set(a.rows() + i, a.cols() + j, b.at(i, j));
    }
  }
  return out;
}

}  // namespace

Sl2Module directSum(const Sl2Module& a, const Sl2Module& b) {
  if (a.ring().primes() != b.ring().primes()) {
    throw DomainError("directSum: summands live over different rings");
  }
  const unsigned g = std::max(a.g(), b.g());
  std::map<int, ConcatShape> concat;
  std::map<int, PieceShape> pieces;
  for (int w = -static_cast<int>(g); w <= static_cast<int>(g); ++w) {
    ConcatShape c = concatShapes(a.piece(w), b.piece(w));
    if (!c.shape.isTrivial()) {
      pieces[w] = c.shape;
      concat[w] = std::move(c);
    }
  }
  const auto permuted = [&](const RatMatrix& stacked, int srcW, int tgtW) {
    const auto& src = concat.at(srcW).fromStacked;
    const auto& tgt = concat.at(tgtW).fromStacked;
    RatMatrix out(tgt.size(), src.size());
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      for (std::size_t j = 0; j < src.size(); ++j) {
        out.set(i, j, stacked.at(tgt[i], src[j]));
      }
    }
    return out;
  };
  std::map<int, RatMatrix> e, f;
  for (const auto& [w, c] : concat) {
    if (concat.count(w + 2) != 0) {
      e[w] = permuted(stackedBlockDiag(a.eMap(w), b.eMap(w)), w, w + 2);
    }
    if (concat.count(w - 2) != 0) {
      f[w] = permuted(stackedBlockDiag(a.fMap(w), b.fMap(w)), w, w - 2);
    }
  }
  return Sl2Module(g, a.ring(), std::move(pieces), std::move(e), std::move(f));
}

Sl2Module tensorWithTorsion(const Sl2Module& v, std::int64_t p, unsigned k,
                            unsigned copies) {
  if (!arith::isPrime(p) || k == 0 || copies == 0) {
    throw DomainError("tensorWithTorsion: need a prime p, k ≥ 1, copies ≥ 1");
  }
  if (v.ring().contains(p)) {
    throw DomainError("tensorWithTorsion: p is invertible in the ring");
  }
  std::map<int, PieceShape> pieces;
  std::map<int, RatMatrix> e, f;
  const auto blow = [&](const RatMatrix& m) {
    RatMatrix out(m.rows() * copies, m.cols() * copies);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        for (unsigned c = 0; c < copies; ++c) {
          out.set(i * copies + c, j * copies + c, m.at(i, j));
        }
      }
    }
    return out;
  };
  for (const int w : v.weights()) {
    const PieceShape& src = v.piece(w);
    if (!src.torsion.empty()) {
      throw DomainError("tensorWithTorsion: the module must be free");
    }
    PieceShape shape;
    shape.torsion.assign(static_cast<std::size_t>(src.freeRank) * copies,
                         TorsionFactor{p, k});
    pieces[w] = shape;
    if (!v.piece(w + 2).isTrivial()) {
      e[w] = blow(v.eMap(w));
    }
    if (!v.piece(w - 2).isTrivial()) {
      f[w] = blow(v.fMap(w));
    }
  }
  return Sl2Module(v.g(), v.ring(), std::move(pieces), std::move(e),
                   std::move(f));
}

namespace {

/// One legal elementary automorphism of a presented piece and its exact
/// inverse.  Legality of g_j += c·g_i means ann(j)·c ∈ (ann(i)): adding a
/// free generator into a torsion one is forbidden, torsion can only mix
/// within one prime with the valuation gap made up by the coefficient.
struct ElementaryPair {
  RatMatrix fwd, inv;
};

std::optional<ElementaryPair> randomElementary(const PieceShape& p,
                                               std::mt19937_64& rng) {
  const unsigned m = p.generators();
  if (m == 0) {
    return std::nullopt;
  }
  const auto ann = annihilators(p);
  auto pick = [&](unsigned bound) {
    return static_cast<unsigned>(rng() % bound);
  };
  const unsigned kind = pick(4);
  ElementaryPair out{RatMatrix::identity(m), RatMatrix::identity(m)};
  if (kind == 0 && m >= 2) {  // transvection g_j += c·g_i
    unsigned i = pick(m), j = pick(m);
    if (i == j) {
      return std::nullopt;
    }
    mpz_class base = 1;
    if (ann[i] != 0) {
      if (ann[j] != 0) {
        const auto& ti = p.torsion[i - p.freeRank];
        const auto& tj = p.torsion[j - p.freeRank];
        if (ti.prime != tj.prime) {
          return std::nullopt;  // cross-prime transvections are trivial
        }
        if (ti.exponent > tj.exponent) {
          base = power(ti.prime, ti.exponent - tj.exponent);
        }
      }
    } else if (ann[j] != 0) {
      return std::nullopt;  // free into torsion: never well defined
    }
    const long r = static_cast<long>(1 + pick(3));
    const mpq_class c =
        mpq_class(base * r) * ((rng() % 2 == 0) ? 1 : -1);
    out.fwd.set(i, j, c);
    out.inv.set(i, j, -c);
    return out;
  }
  if (kind == 1 && m >= 2) {  // swap two generators of equal annihilator
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned i = 0; i < m; ++i) {
      for (unsigned j = i + 1; j < m; ++j) {
        if (ann[i] == ann[j]) {
          pairs.emplace_back(i, j);
        }
      }
    }
    if (pairs.empty()) {
      return std::nullopt;
    }
    const auto [i, j] = pairs[pick(static_cast<unsigned>(pairs.size()))];
    for (auto* mat : {&out.fwd, &out.inv}) {
      mat->set(i, i, 0);
      mat->set(j, j, 0);
      mat->set(i, j, 1);
      mat->set(j, i, 1);
    }
    return out;
  }
  if (kind == 2) {  // negate one generator
    const unsigned i = pick(m);
    out.fwd.set(i, i, -1);
    out.inv.set(i, i, -1);
    return out;
  }
  // scale a torsion generator by a unit of ℤ/p^k
  if (p.torsion.empty()) {
    return std::nullopt;
  }
  const unsigned i =
      p.freeRank + pick(static_cast<unsigned>(p.torsion.size()));
  const auto& t = p.torsion[i - p.freeRank];
  const mpz_class pk = power(t.prime, t.exponent);
  if (pk <= 2) {
    return std::nullopt;  // the only unit is 1
  }
  mpz_class u;
  do {
    u = 2 + mpz_class(static_cast<unsigned long>(rng())) % (pk - 2);
  } while (u % t.prime == 0);
  mpz_class uinv;
  mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
  out.fwd.set(i, i, mpq_class(u));
  out.inv.set(i, i, mpq_class(uinv));
  return out;
}

}  // namespace

Sl2Module scrambleBasis(const Sl2Module& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<int, RatMatrix> fwd, inv;
  for (const int w : v.weights()) {
    const PieceShape& p = v.piece(w);
    RatMatrix a = RatMatrix::identity(p.generators());
    RatMatrix b = a;
    const unsigned rounds = 4 * p.generators() + 4;
    for (unsigned t = 0; t < rounds; ++t) {
      if (const auto op = randomElementary(p, rng)) {
        a = op->fwd * a;
        b = b * op->inv;
      }
    }
    fwd[w] = std::move(a);
    inv[w] = std::move(b);
  }
  const auto at = [&](std::map<int, RatMatrix>& side, int w) {
    const auto it = side.find(w);
    return it == side.end() ? RatMatrix::identity(v.piece(w).generators())
                            : it->second;
  };
  std::map<int, RatMatrix> e, f;
  for (const int w : v.weights()) {
    if (!v.piece(w + 2).isTrivial()) {
      e[w] = at(fwd, w + 2) * v.eMap(w) * at(inv, w);
    }
    if (!v.piece(w - 2).isTrivial()) {
      f[w] = at(fwd, w - 2) * v.fMap(w) * at(inv, w);
    }
  }
  // Re-validation in the constructor doubles as a legality check on the
  // random automorphisms.
  return Sl2Module(v.g(), v.ring(), v.pieces(), std::move(e), std::move(f));
}

LambdaScalar flekCoefficient(unsigned n, unsigned k, unsigned l) {
  if (k > n) {
    throw DomainError("flekCoefficient: requires k ≤ n");
  }
  if (l > k) {
    return LambdaScalar(mpz_class(0), InvertedPrimeSet());
  }
  mpz_class num = arith::factorial(n - k + l) * arith::factorial(k);
  mpz_class den = arith::factorial(n - k) * arith::factorial(k - l);
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return LambdaScalar(out, InvertedPrimeSet());
}

namespace {

KernelResult kernelOfLadder(const Sl2Module& v, int weight, int shift) {
  const PieceShape& src = v.piece(weight);
  const PieceShape& tgt = v.piece(weight + shift);
  if (src.generators() == 0) {
    return KernelResult{PieceShape{}, RatMatrix(0, 0)};
  }
  const RatMatrix f = shift > 0 ? v.eMap(weight) : v.fMap(weight);
  const RatMatrix gens = inducedKernelGens(f, annihilators(tgt), v.ring());
  return presentSubquotient(gens, annihilators(src), torsionPrimes(src),
                            v.ring());
}

}  // namespace

KernelResult kernelOfE(const Sl2Module& v, int weight) {
  return kernelOfLadder(v, weight, +2);
}

KernelResult kernelOfF(const Sl2Module& v, int weight) {
  return kernelOfLadder(v, weight, -2);
}

bool sameSubmodule(const RatMatrix& a, const RatMatrix& b,
                   const PieceShape& piece, const InvertedPrimeSet& r) {
  if (a.rows() != piece.generators() || b.rows() != piece.generators()) {
    throw DomainError("sameSubmodule: ambient dimension mismatch");
  }
  const RatMatrix rel = relationColumns(annihilators(piece));
  const auto contained = [&](const RatMatrix& gens, const RatMatrix& span) {
    const RatMatrix sys = hcat(span, rel);
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      if (!solveOverRing(sys, column(gens, j), r)) {
        return false;
      }
    }
    return true;
  };
  return contained(a, b) && contained(b, a);
}

ident::IdentityReport verifyFlek(const Sl2Module& v, unsigned maxN) {
  Stopwatch sw;
  std::int64_t failures = 0;
  for (unsigned n = 0; n <= maxN; ++n) {
    const int base = -static_cast<int>(n);
    const KernelResult lowest = kernelOfF(v, base);
    for (std::size_t col = 0; col < lowest.embedding.cols(); ++col) {
      // e-power towers of one lowest-weight generator, degree 0 … n+1.
      std::vector<std::vector<mpq_class>> tower;
      tower.push_back(column(lowest.embedding, col));
      for (unsigned j = 0; j <= n; ++j) {
        tower.push_back(applyMatrix(v.eMap(base + 2 * static_cast<int>(j)),
                              tower.back()));
      }
      const std::vector<mpq_class> zeroTop(
          v.piece(base + 2 * static_cast<int>(n + 1)).generators(),
          mpq_class(0));
      if (!congruentVectors(
              tower[n + 1], zeroTop,
              annihilators(v.piece(base + 2 * static_cast<int>(n + 1))),
              v.ring())) {
        ++failures;
      }
      for (unsigned k = 0; k <= n; ++k) {
        std::vector<mpq_class> lhs = tower[k];
        for (unsigned l = 0; l <= k; ++l) {
          if (l > 0) {
            lhs = applyMatrix(
                v.fMap(base + 2 * static_cast<int>(k - l + 1)), lhs);
          }
          const mpq_class c = flekCoefficient(n, k, l).value();
          std::vector<mpq_class> rhs = tower[k - l];
          for (auto& e : rhs) {
            e *= c;
          }
          const int w = base + 2 * static_cast<int>(k - l);
          if (!congruentVectors(lhs, rhs, annihilators(v.piece(w)),
                                v.ring())) {
            ++failures;
          }
        }
      }
    }
    // Positive weights carry no lowest-weight vectors at all.
    if (n >= 1 && !kernelOfF(v, static_cast<int>(n)).shape.isTrivial()) {
      ++failures;
    }
  }
  return countingReport(
      "flek-ladder",
      {{"g", static_cast<std::int64_t>(v.g())},
       {"maxN", static_cast<std::int64_t>(maxN)}},
      failures, sw);
}

std::vector<std::vector<WeightComponent>> homogeneousSplit(
    const Sl2Module& v, const std::vector<GradedVector>& generators) {
  std::vector<std::vector<WeightComponent>> out;
  for (const auto& x : generators) {
    std::vector<int> support;
    for (const auto& [w, comp] : x) {
      if (v.piece(w).generators() != comp.size()) {
        throw DomainError(
            "homogeneousSplit: component size differs from the piece at "
            "weight " +
            std::to_string(w));
      }
      if (std::any_of(comp.begin(), comp.end(),
                      [](const mpq_class& e) { return e != 0; })) {
        support.push_back(w);
      }
    }
    std::vector<WeightComponent> split;
    if (!support.empty()) {
      const std::size_t t = support.size();
      RatMatrix vand(t, t);
      for (std::size_t s = 0; s < t; ++s) {
        mpq_class pw = 1;
        for (std::size_t j = 0; j < t; ++j) {
          vand.set(s, j, pw);
          pw *= support[s];
        }
      }
      // Column u of the inverse solves Σ_j c_j·w_s^j = δ_{su}: the
      // coefficients carving out the weight-w_u component by h-powers.  The
      // node gaps divide 2g, so the inverse lives over Λ.
      const RatMatrix coeff = vand.inverse();
      for (std::size_t u = 0; u < t; ++u) {
        WeightComponent wc;
        wc.weight = support[u];
        wc.component = x.at(support[u]);
        for (std::size_t j = 0; j < t; ++j) {
          wc.certificate.emplace_back(coeff.at(j, u), v.ring());
        }
        // Self-check: the certificate really reassembles the component from
        // h-powers of the original vector, exactly over Λ.
        for (const int w : support) {
          mpq_class total = 0;
          mpq_class pw = 1;
          for (std::size_t j = 0; j < t; ++j) {
            total += coeff.at(j, u) * pw;
            pw *= w;
          }
          if (total != (w == support[u] ? 1 : 0)) {
            throw InvariantError("homogeneousSplit: certificate failed");
          }
        }
        split.push_back(std::move(wc));
      }
    }
    out.push_back(std::move(split));
  }
  return out;
}

IsotypicDecomposition decompose(const Sl2Module& v) {
  const unsigned g = v.g();
  IsotypicDecomposition out;
  struct Block {
    unsigned n = 0, i = 0;
    RatMatrix emb;
  };
  std::map<int, std::vector<Block>> blocks;
  for (unsigned n = 0; n <= g; ++n) {
    const int base = -static_cast<int>(n);
    const KernelResult m = kernelOfF(v, base);
    IsotypicComponent comp;
    comp.n = n;
    comp.multiplicity = m.shape;
    if (!m.shape.isTrivial()) {
      RatMatrix cur = m.embedding;
      for (unsigned i = 0; i <= n; ++i) {
        const int w = base + 2 * static_cast<int>(i);
        const mpq_class scale(arith::factorial(n - i), arith::factorial(n));
        RatMatrix emb = scaleMatrix(cur, scale);
        comp.embeddings[w] = emb;
        blocks[w].push_back(Block{n, i, std::move(emb)});
        if (i < n) {
          cur = v.eMap(w) * cur;
        }
      }
    }
    out.components.push_back(std::move(comp));
  }
  for (const int w : v.weights()) {
    const PieceShape& tgt = v.piece(w);
    const auto tgtAnn = annihilators(tgt);
    RatMatrix phi(tgt.generators(), 0);
    std::vector<mpz_class> srcAnn;
    std::vector<std::int64_t> srcPrimes;
    for (const Block& b : blocks[w]) {
      phi = hcat(phi, b.emb);
      const PieceShape& mult = out.components[b.n].multiplicity;
      const auto ann = annihilators(mult);
      srcAnn.insert(srcAnn.end(), ann.begin(), ann.end());
      for (const std::int64_t p : torsionPrimes(mult)) {
        if (std::find(srcPrimes.begin(), srcPrimes.end(), p) ==
            srcPrimes.end()) {
          srcPrimes.push_back(p);
        }
      }
    }
    const auto fail = [&](const std::string& what) {
      throw InvariantError("decompose: " + what + " at weight " +
                           std::to_string(w));
    };
    if (!wellDefinedMap(phi, srcAnn, tgtAnn, v.ring())) {
      fail("the assembled map is not well defined");
    }
    const RatMatrix kerGens = inducedKernelGens(phi, tgtAnn, v.ring());
    if (!presentSubquotient(kerGens, srcAnn, srcPrimes, v.ring())
             .shape.isTrivial()) {
      fail("the assembled map has a kernel");
    }
    const RatMatrix sys = hcat(phi, relationColumns(tgtAnn));
    for (unsigned r = 0; r < tgt.generators(); ++r) {
      std::vector<mpq_class> unit(tgt.generators(), mpq_class(0));
      unit[r] = 1;
      if (!solveOverRing(sys, unit, v.ring())) {
        fail("the assembled map is not surjective");
      }
    }
    // Ladder equivariance: on the Sym^n factor f scales block i down to
    // block i−1 by i, and e scales it up by n−i.
    const auto expect = [&](int shift) {
      const PieceShape& nxt = v.piece(w + shift);
      RatMatrix acc(nxt.generators(), 0);
      for (const Block& b : blocks[w]) {
        const unsigned steps = shift > 0 ? b.n - b.i : b.i;
        RatMatrix target(nxt.generators(), b.emb.cols());
        if (steps > 0) {
          const auto& comp = out.components[b.n];
          target = scaleMatrix(comp.embeddings.at(w + shift),
                               mpq_class(static_cast<long>(steps)));
        }
        acc = hcat(acc, target);
      }
      return acc;
    };
    if (!congruentMaps(v.fMap(w) * phi, expect(-2),
                       annihilators(v.piece(w - 2)), v.ring())) {
      fail("f does not intertwine the decomposition");
    }
    if (!congruentMaps(v.eMap(w) * phi, expect(+2),
                       annihilators(v.piece(w + 2)), v.ring())) {
      fail("e does not intertwine the decomposition");
    }
    out.witness[w] = std::move(phi);
  }
  return out;
}

ChowSl2 buildChowSl2(unsigned g, std::int64_t nu) {
  if (g < 1) {
    throw DomainError("buildChowSl2: requires g ≥ 1");
  }
  if (nu != 1) {
    throw DomainError(
        "buildChowSl2: only the principally polarized model (nu = 1) carries "
        "the untwisted ladder");
  }
  const chow::TautModel model = chow::buildModel(g, nu);
  const chow::TautClass lambda = chow::lambdaClass(model);
  std::map<int, PieceShape> pieces;
  std::map<int, RatMatrix> e, f;
  for (unsigned i = 0; i <= g; ++i) {
    const int w = 2 * static_cast<int>(i) - static_cast<int>(g);
    pieces[w] = PieceShape{1, {}};
    if (i < g) {
      RatMatrix m(1, 1);
      m.set(0, 0, mpq_class(1));  // ℓ·ℓ^i = ℓ^{i+1}
      e[w] = m;
    }
    if (i > 0) {
      // f(ℓ^i) = λ⋆ℓ^i, computed from the model's own Pontryagin product.
      const chow::TautClass prod =
          chow::pontryagin(lambda, chow::TautClass::ellPower(model, i));
      RatMatrix m(1, 1);
      for (unsigned j = 0; j <= g; ++j) {
        if (j == i - 1) {
          m.set(0, 0, prod.coefficient(j).value());
        } else if (!(prod.coefficient(j).value() == 0)) {
          throw InvariantError(
              "buildChowSl2: λ⋆ℓ^i is not a multiple of ℓ^{i-1}");
        }
      }
      f[w] = m;
    }
  }
  ChowSl2 out{Sl2Module(g, model.ring, std::move(pieces), std::move(e),
                        std::move(f)),
              {}};
  out.decomposition = decompose(out.module);
  for (const auto& comp : out.decomposition.components) {
    const bool top = comp.n == g;
    const PieceShape expected =
        top ? PieceShape{1, {}} : PieceShape{};
    if (!(comp.multiplicity == expected)) {
      throw InvariantError(
          "buildChowSl2: the ladder does not decompose as a single "
          "top-symmetric power");
    }
  }
  return out;
}

ident::IdentityReport torsionInjectivityDemo(unsigned g, std::int64_t p,
                                             unsigned k) {
  Stopwatch sw;
  if (g < 1 || k < 1) {
    throw DomainError("torsionInjectivityDemo: requires g ≥ 1 and k ≥ 1");
  }
  if (!arith::isPrime(p) || p <= 2 * static_cast<std::int64_t>(g) + 1) {
    throw DomainError("torsionInjectivityDemo: p must be a prime > 2g+1");
  }
  const InvertedPrimeSet ring =
      InvertedPrimeSet::dividing(arith::factorial(2 * g));
  const Sl2Module w =
      tensorWithTorsion(symPower(g - 1, ring), p, k, 2 * g);
  const int base = 1 - static_cast<int>(g);
  std::int64_t failures = 0;
  for (unsigned i = 1; i <= g; ++i) {
    RatMatrix pow = RatMatrix::identity(w.piece(base).generators());
    for (unsigned j = 0; j + 1 < i; ++j) {
      pow = w.eMap(base + 2 * static_cast<int>(j)) * pow;
    }
    const int tgtW = base + 2 * static_cast<int>(i - 1);
    const RatMatrix gens =
        inducedKernelGens(pow, annihilators(w.piece(tgtW)), ring);
    const KernelResult ker = presentSubquotient(
        gens, annihilators(w.piece(base)), torsionPrimes(w.piece(base)), ring);
    if (!ker.shape.isTrivial()) {
      ++failures;
    }
  }
  return countingReport("torsion-injectivity",
                        {{"g", static_cast<std::int64_t>(g)},
                         {"p", p},
                         {"k", static_cast<std::int64_t>(k)}},
                        failures, sw);
}

}  // namespace fdual::sl2
