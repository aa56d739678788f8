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

#include "fdual/matrix.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/primes.hpp"

namespace fdual::arith {

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

IntMatrix IntMatrix::fromRows(const std::vector<std::vector<mpz_class>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != m.cols_) {
      throw DomainError("IntMatrix::fromRows: ragged rows");
    }
    for (std::size_t j = 0; j < m.cols_; ++j) m.entries_[i * m.cols_ + j] = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<mpz_class>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.entries_[i * diag.size() + i] = diag[i];
  return m;
}

const mpz_class& IntMatrix::at(std::size_t i, std::size_t j) const {
  return entries_.at(i * cols_ + j);
}

void IntMatrix::set(std::size_t i, std::size_t j, mpz_class v) {
  reduceEntry(v);
  entries_.at(i * cols_ + j) = std::move(v);
}

void IntMatrix::reduceEntry(mpz_class& e) const {
  if (modPrime_ == 0) return;
  mpz_class q = modulusValue();
  mpz_mod(e.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());  // into [0, p^k)
}

void IntMatrix::imposeModulus(std::int64_t p, unsigned k) {
  if (!isPrime(p) || k < 1) {
    throw DomainError("IntMatrix: modulus must be a positive prime power");
  }
  modPrime_ = p;
  modExp_ = k;
  for (auto& e : entries_) reduceEntry(e);
}

mpz_class IntMatrix::modulusValue() const {
  if (modPrime_ == 0) return 0;
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(modPrime_), modExp_);
  return q;
}

void IntMatrix::requireSameShapeAndModulus(const IntMatrix& o,
                                           const char* op) const {
  if (modPrime_ != o.modPrime_ || modExp_ != o.modExp_) {
    throw DomainError(std::string("IntMatrix: modulus mismatch in ") + op);
  }
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  requireSameShapeAndModulus(o, "product");
  if (cols_ != o.rows_) throw DomainError("IntMatrix: shape mismatch in product");
  IntMatrix r(rows_, o.cols_);
  r.modPrime_ = modPrime_;
  r.modExp_ = modExp_;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = entries_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r.entries_[i * o.cols_ + j] += a * o.entries_[k * o.cols_ + j];
      }
    }
  }
  if (modPrime_ != 0) {
    for (auto& e : r.entries_) r.reduceEntry(e);
  }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  requireSameShapeAndModulus(o, "sum");
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DomainError("IntMatrix: shape mismatch in sum");
  }
  IntMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    r.entries_[i] += o.entries_[i];
    r.reduceEntry(r.entries_[i]);
  }
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  requireSameShapeAndModulus(o, "difference");
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DomainError("IntMatrix: shape mismatch in difference");
  }
  IntMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    r.entries_[i] -= o.entries_[i];
    r.reduceEntry(r.entries_[i]);
  }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  r.modPrime_ = modPrime_;
  r.modExp_ = modExp_;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      r.entries_[j * rows_ + i] = entries_[i * cols_ + j];
    }
  }
  return r;
}

bool IntMatrix::isZero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const mpz_class& e) { return e == 0; });
}

std::string IntMatrix::toString() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      os << (j ? " " : "") << entries_[i * cols_ + j];
    }
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// RatMatrix
// ---------------------------------------------------------------------------

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

RatMatrix RatMatrix::fromInt(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      r.entries_[i * m.cols() + j] = m.at(i, j);
    }
  }
  return r;
}

const mpq_class& RatMatrix::at(std::size_t i, std::size_t j) const {
  return entries_.at(i * cols_ + j);
}

void RatMatrix::set(std::size_t i, std::size_t j, mpq_class v) {
  v.canonicalize();
  entries_.at(i * cols_ + j) = std::move(v);
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("RatMatrix: shape mismatch in product");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = entries_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r.entries_[i * o.cols_ + j] += a * o.entries_[k * o.cols_ + j];
      }
    }
  }
  return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DomainError("RatMatrix: shape mismatch in sum");
  }
  RatMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DomainError("RatMatrix: shape mismatch in difference");
  }
  RatMatrix r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
  return r;
}

bool RatMatrix::isZero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const mpq_class& e) { return e == 0; });
}

mpq_class RatMatrix::determinant() const {
  if (rows_ != cols_) throw DomainError("RatMatrix: determinant of non-square");
  RatMatrix a = *this;
  mpq_class det = 1;
  for (std::size_t t = 0; t < rows_; ++t) {
    std::size_t pivot = t;
    while (pivot < rows_ && a.entries_[pivot * cols_ + t] == 0) ++pivot;
    if (pivot == rows_) return 0;
    if (pivot != t) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(a.entries_[pivot * cols_ + j], a.entries_[t * cols_ + j]);
      }
      det = -det;
    }
    const mpq_class p = a.entries_[t * cols_ + t];
    det *= p;
    for (std::size_t i = t + 1; i < rows_; ++i) {
      mpq_class f = a.entries_[i * cols_ + t] / p;
      if (f == 0) continue;
      for (std::size_t j = t; j < cols_; ++j) {
        a.entries_[i * cols_ + j] -= f * a.entries_[t * cols_ + j];
      }
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw DomainError("RatMatrix: inverse of non-square");
  RatMatrix a = *this;
  RatMatrix inv = RatMatrix::identity(rows_);
  for (std::size_t t = 0; t < rows_; ++t) {
    std::size_t pivot = t;
    while (pivot < rows_ && a.entries_[pivot * cols_ + t] == 0) ++pivot;
    if (pivot == rows_) throw DomainError("RatMatrix: inverse of singular");
    if (pivot != t) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(a.entries_[pivot * cols_ + j], a.entries_[t * cols_ + j]);
        std::swap(inv.entries_[pivot * cols_ + j], inv.entries_[t * cols_ + j]);
      }
    }
    const mpq_class p = a.entries_[t * cols_ + t];
    for (std::size_t j = 0; j < cols_; ++j) {
      a.entries_[t * cols_ + j] /= p;
      inv.entries_[t * cols_ + j] /= p;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == t) continue;
      const mpq_class f = a.entries_[i * cols_ + t];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        a.entries_[i * cols_ + j] -= f * a.entries_[t * cols_ + j];
        inv.entries_[i * cols_ + j] -= f * inv.entries_[t * cols_ + j];
      }
    }
  }
  return inv;
}

std::string RatMatrix::toString() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      os << (j ? " " : "") << entries_[i * cols_ + j];
    }
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

std::vector<mpz_class> SmithDecomposition::diagonal() const {
  std::vector<mpz_class> d;
  const std::size_t n = std::min(D.rows(), D.cols());
  d.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.push_back(D.at(i, i));
  return d;
}

namespace {

using Grid = std::vector<std::vector<mpz_class>>;

Grid gridOf(const IntMatrix& m) {
  Grid g(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m.at(i, j);
  }
  return g;
}

Grid gridIdentity(std::size_t n) {
  Grid g(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  return g;
}

void swapRows(Grid& a, std::size_t i, std::size_t j) {
  if (i != j) std::swap(a[i], a[j]);
}

void swapCols(Grid& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (auto& row : a) std::swap(row[i], row[j]);
}

/// rows (i, j) ← (s·row_i + t·row_j, u·row_i + v·row_j), applied to a and ops.
void rowPair(Grid& a, Grid& ops, std::size_t i, std::size_t j,
             const mpz_class& s, const mpz_class& t, const mpz_class& u,
             const mpz_class& v) {
  for (Grid* g : {&a, &ops}) {
    for (std::size_t col = 0; col < (*g)[i].size(); ++col) {
      mpz_class ni = s * (*g)[i][col] + t * (*g)[j][col];
      mpz_class nj = u * (*g)[i][col] + v * (*g)[j][col];
      (*g)[i][col] = std::move(ni);
      (*g)[j][col] = std::move(nj);
    }
  }
}

/// cols (i, j) ← (s·col_i + t·col_j, u·col_i + v·col_j), applied to a and ops.
void colPair(Grid& a, Grid& ops, std::size_t i, std::size_t j,
             const mpz_class& s, const mpz_class& t, const mpz_class& u,
             const mpz_class& v) {
  for (Grid* g : {&a, &ops}) {
    for (auto& row : *g) {
      mpz_class ni = s * row[i] + t * row[j];
      mpz_class nj = u * row[i] + v * row[j];
      row[i] = std::move(ni);
      row[j] = std::move(nj);
    }
  }
}

/// Smallest prime not inverted in the ring.
std::int64_t smallestUninvertedPrime(const InvertedPrimeSet& ring) {
  for (std::int64_t p = 2;; p = (p == 2 ? 3 : p + 2)) {
    if (isPrime(p) && !ring.contains(p)) return p;
  }
}

constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

unsigned valuationOrInf(const mpz_class& e, std::int64_t p) {
  return e == 0 ? kInfiniteValuation : vp(e, p);
}

/// Bring columns `t` of rows below t and row `t` right of t to zero using
/// unimodular Bezout row/column pairs; pivot sits at (t, t) and stays nonzero.
void clearCross(Grid& a, Grid& u, Grid& v, std::size_t t) {
  const std::size_t rows = a.size(), cols = a[0].size();
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      const mpz_class &p = a[t][t], &b = a[i][t];
      if (b % p == 0) {
        mpz_class q = b / p;
        rowPair(a, u, t, i, 1, 0, -q, 1);
      } else {
        mpz_class g, s, w;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t(),
                   b.get_mpz_t());
        rowPair(a, u, t, i, s, w, -(b / g), p / g);
      }
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      const mpz_class &p = a[t][t], &b = a[t][j];
      if (b % p == 0) {
        mpz_class q = b / p;
        colPair(a, v, t, j, 1, 0, -q, 1);
      } else {
        mpz_class g, s, w;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t(),
                   b.get_mpz_t());
        colPair(a, v, t, j, s, w, -(b / g), p / g);
        dirty = true;  // Bezout column mixing may repopulate column t.
      }
    }
    if (dirty) continue;
    for (std::size_t i = t + 1; i < rows && !dirty; ++i) dirty = a[i][t] != 0;
  }
}

/// Replace diag(a, b) at positions (i, i+1) by diag(gcd, lcm·unit) using
/// unimodular operations; assumes the off-diagonal cross is already zero.
void repairPair(Grid& a, Grid& u, Grid& v, std::size_t i) {
  const mpz_class av = a[i][i], bv = a[i + 1][i + 1];
  // col_i += col_{i+1}: puts b into position (i+1, i).
  colPair(a, v, i, i + 1, 1, 1, 0, 1);
  mpz_class g, s, w;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), w.get_mpz_t(), av.get_mpz_t(),
             bv.get_mpz_t());
  rowPair(a, u, i, i + 1, s, w, -(bv / g), av / g);
  // Clear the leftover (i, i+1) entry, which is divisible by the new pivot g.
  mpz_class q = a[i][i + 1] / g;
  colPair(a, v, i, i + 1, 1, 0, -q, 1);
}

/// Division convention with 0 | 0 but 0 ∤ x for x ≠ 0.
bool divides(const mpz_class& a, const mpz_class& b) {
  if (a == 0) return b == 0;
  return b % a == 0;
}

RatMatrix gridToRat(const Grid& g) {
  RatMatrix m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, mpq_class(g[i][j]));
  }
  return m;
}

SmithDecomposition smithOverLambda(const IntMatrix& m,
                                   const InvertedPrimeSet& ring) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Grid a = gridOf(m), u = gridIdentity(rows), v = gridIdentity(cols);
  const std::int64_t p0 = smallestUninvertedPrime(ring);
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n && rows > 0 && cols > 0; ++t) {
    // Pivot: minimal v_{p0}, row-major ties.
    std::size_t bi = rows, bj = cols;
    unsigned best = kInfiniteValuation;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        unsigned val = valuationOrInf(a[i][j], p0);
        if (val < best) {
          best = val;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == kInfiniteValuation) break;  // trailing block is zero
    swapRows(a, t, bi);
    swapRows(u, t, bi);
    swapCols(a, t, bj);
    swapCols(v, t, bj);
    clearCross(a, u, v, t);
  }

  // Enforce the divisibility chain d_i | d_{i+1} (zeros sink to the end).
  bool changed = n > 1;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!divides(a[i][i], a[i + 1][i + 1])) {
        repairPair(a, u, v, i);
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
      for (std::size_t j = 0; j < rows; ++j) u[i][j] = -u[i][j];
    }
  }

  // Strip inverted-prime factors from the diagonal, absorbing them into U.
  RatMatrix ru = gridToRat(u);
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class entry = a[i][i];
    if (entry != 0) {
      mpz_class unit = 1;
      for (std::int64_t p : ring.primes()) {
        mpz_class rest;
        mp_bitcnt_t e =
            mpz_remove(rest.get_mpz_t(), entry.get_mpz_t(), mpz_class(p).get_mpz_t());
        if (e > 0) {
          mpz_class pk;
          mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                        static_cast<unsigned long>(e));
          unit *= pk;
          entry = rest;
        }
      }
      if (unit != 1) {
        for (std::size_t j = 0; j < rows; ++j) {
          ru.set(i, j, ru.at(i, j) / mpq_class(unit));
        }
      }
    }
    d.set(i, i, entry);
  }

  return SmithDecomposition{std::move(ru), std::move(d), gridToRat(v)};
}

SmithDecomposition smithOverPrimePower(const IntMatrix& m,
                                       const InvertedPrimeSet& ring) {
  const std::int64_t p = m.modPrime();
  const unsigned k = m.modExponent();
  if (ring.contains(p)) {
    throw DomainError("smithNormalForm: modulus prime " + std::to_string(p) +
                      " is inverted in " + ring.toString());
  }
  const mpz_class q = m.modulusValue();
  const std::size_t rows = m.rows(), cols = m.cols();
  Grid a = gridOf(m), u = gridIdentity(rows), v = gridIdentity(cols);
  const std::size_t n = std::min(rows, cols);

  auto reduceGrid = [&q](Grid& g) {
    for (auto& row : g) {
      for (auto& e : row) mpz_mod(e.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
    }
  };

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t bi = rows, bj = cols;
    unsigned best = kInfiniteValuation;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        unsigned val = valuationOrInf(a[i][j], p);
        if (val < best) {
          best = val;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == kInfiniteValuation) break;
    swapRows(a, t, bi);
    swapRows(u, t, bi);
    swapCols(a, t, bj);
    swapCols(v, t, bj);

    // Normalize the pivot to exactly p^α by a unit row scaling.
    const unsigned alpha = best;
    mpz_class palpha;
    mpz_ui_pow_ui(palpha.get_mpz_t(), static_cast<unsigned long>(p), alpha);
    mpz_class unit = a[t][t] / palpha;
    mpz_class uinv;
    if (mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), q.get_mpz_t()) == 0) {
      throw InvariantError("smithNormalForm: pivot unit not invertible mod p^k");
    }
    for (std::size_t j = 0; j < cols; ++j) a[t][j] *= uinv;
    for (std::size_t j = 0; j < rows; ++j) u[t][j] *= uinv;
    reduceGrid(a);
    reduceGrid(u);

    // Every other entry of the pivot cross has valuation ≥ α, so one exact
    // quotient step per entry clears it mod p^k.
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      mpz_class f = a[i][t] / palpha;
      rowPair(a, u, t, i, 1, 0, -f, 1);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      mpz_class f = a[t][j] / palpha;
      colPair(a, v, t, j, 1, 0, -f, 1);
    }
    reduceGrid(a);
    reduceGrid(u);
    reduceGrid(v);
  }

  // Ascending p-valuation along the diagonal (zeros last).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t bi = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (valuationOrInf(a[j][j], p) < valuationOrInf(a[bi][bi], p)) bi = j;
    }
    if (bi != i) {
      swapRows(a, i, bi);
      swapRows(u, i, bi);
      swapCols(a, i, bi);
      swapCols(v, i, bi);
    }
  }

  IntMatrix d(rows, cols);
  d.imposeModulus(p, k);
  for (std::size_t i = 0; i < n; ++i) d.set(i, i, a[i][i]);
  return SmithDecomposition{gridToRat(u), std::move(d), gridToRat(v)};
}

void verifyDecomposition(const IntMatrix& m, const InvertedPrimeSet& ring,
                         const SmithDecomposition& s) {
  const RatMatrix lhs = s.U * RatMatrix::fromInt(m) * s.V;
  if (m.hasModulus()) {
    const mpz_class q = m.modulusValue();
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
      for (std::size_t j = 0; j < lhs.cols(); ++j) {
        mpq_class diff = lhs.at(i, j) - mpq_class(s.D.at(i, j));
        if (diff.get_den() != 1 || diff.get_num() % q != 0) {
          throw InvariantError("smithNormalForm: U·M·V ≠ D (mod p^k)");
        }
      }
    }
    for (const RatMatrix* t : {&s.U, &s.V}) {
      mpq_class det = t->determinant();
      if (det.get_den() != 1 ||
          mpz_divisible_ui_p(det.get_num().get_mpz_t(),
                             static_cast<unsigned long>(m.modPrime()))) {
        throw InvariantError("smithNormalForm: transform not a unit mod p^k");
      }
    }
    return;
  }
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      if (lhs.at(i, j) != mpq_class(s.D.at(i, j))) {
        throw InvariantError("smithNormalForm: U·M·V ≠ D");
      }
    }
  }
  for (const RatMatrix* t : {&s.U, &s.V}) {
    if (t->rows() == 0) continue;
    mpq_class det = t->determinant();
    if (det == 0 || !ring.isUnit(det.get_num()) || !ring.isUnit(det.get_den())) {
      throw InvariantError("smithNormalForm: transform determinant " +
                           det.get_str() + " is not a unit of " +
                           ring.toString());
    }
  }
}

}  // namespace

SmithDecomposition smithNormalForm(const IntMatrix& m,
                                   const InvertedPrimeSet& ring) {
  if (m.rows() == 0 || m.cols() == 0) {
    SmithDecomposition s{RatMatrix::identity(m.rows()), m,
                         RatMatrix::identity(m.cols())};
    return s;
  }
  SmithDecomposition s = m.hasModulus() ? smithOverPrimePower(m, ring)
                                        : smithOverLambda(m, ring);
  verifyDecomposition(m, ring, s);
  return s;
}

}  // namespace fdual::arith
