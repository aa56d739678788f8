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
 * @file correspondence.hpp
 * @brief The nilpotent-truncated algebra of multiplication correspondences on
 *        an abelian scheme, and the Beauville projectors cut out of it.
 *
 * The classes Γ[n] of the multiplication-by-n graphs span a commutative
 * algebra under fiberwise convolution, with Γ[m]⋆Γ[n] = Γ[m+n] and
 * (Γ[1]−Γ[0])^{⋆nilIndex} = 0.  Writing t for Γ[1], this algebra is exactly
 * Λ[t, t^{−1}] / ((t−1)^nilIndex), and a CorrespondenceElement stores the
 * reduced representative on the basis {(t−1)^j : j < nilIndex}.
 *
 * Two products coexist and must not be confused:
 *  - star():    the convolution above, Γ[m]⋆Γ[n] = Γ[m+n] (t-multiplication);
 *  - compose(): composition of the underlying maps, Γ[m]∘Γ[n] = Γ[m·n].
 *
 * The linear functionals Φ_j(Σ a_n·Γ[n]) = Σ a_n·n^j for j < nilIndex are
 * well defined on the quotient and jointly injective; they diagonalize
 * compose() and are the tool by which beauvilleProjectors certifies itself.
 */
#ifndef FDUAL_CORRESPONDENCE_HPP
#define FDUAL_CORRESPONDENCE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdual/scalar.hpp"

namespace fdual::chow {

/// An element of Λ[t, t^{−1}]/((t−1)^N), N = nilIndex, with Γ[n] ↦ t^n.
class CorrespondenceElement {
 public:
  /// Zero, over the given coefficient ring.  @throws DomainError if
  /// nilIndex == 0.
  CorrespondenceElement(unsigned nilIndex, arith::InvertedPrimeSet ring);

  /// The class Γ[n] of the multiplication-by-n graph, i.e. t^n reduced to
  /// the shift basis.  n may be negative: (1+s)^n expands exactly because s
  /// is nilpotent, with integer generalized binomial coefficients.
  static CorrespondenceElement gamma(std::int64_t n, unsigned nilIndex,
                                     const arith::InvertedPrimeSet& ring);

  /// The shift-basis monomial (Γ[1]−Γ[0])^{⋆j}.  @throws DomainError if
  /// j ≥ nilIndex.
  static CorrespondenceElement shiftPower(unsigned j, unsigned nilIndex,
                                          const arith::InvertedPrimeSet& ring);

  unsigned nilIndex() const { return static_cast<unsigned>(coef_.size()); }
  const arith::InvertedPrimeSet& ring() const { return ring_; }

  /// Coefficients on the basis {(Γ[1]−Γ[0])^{⋆j}}, index j < nilIndex.
  const std::vector<arith::LambdaScalar>& shiftCoefficients() const {
    return coef_;
  }

  /// The canonical representative Σ_{n=0}^{nilIndex−1} a_n·Γ[n]: every class
  /// is a unique Λ-combination of Γ[0], …, Γ[nilIndex−1].  Zero coefficients
  /// are omitted from the map.
  std::map<std::int64_t, arith::LambdaScalar> gammaSupport() const;

  bool isZero() const;

  CorrespondenceElement operator-() const;
  CorrespondenceElement& operator+=(const CorrespondenceElement& o);
  CorrespondenceElement& operator-=(const CorrespondenceElement& o);
  friend CorrespondenceElement operator+(CorrespondenceElement a,
                                         const CorrespondenceElement& b) {
    return a += b;
  }
  friend CorrespondenceElement operator-(CorrespondenceElement a,
                                         const CorrespondenceElement& b) {
    return a -= b;
  }
  CorrespondenceElement& scale(const arith::LambdaScalar& c);

  /// Convolution: bilinear extension of Γ[m]⋆Γ[n] = Γ[m+n].  On the shift
  /// basis this is plain truncated polynomial multiplication.
  CorrespondenceElement star(const CorrespondenceElement& o) const;
  CorrespondenceElement starPow(unsigned e) const;

  /// Composition: bilinear extension of Γ[m]∘Γ[n] = Γ[m·n], computed on the
  /// canonical Γ-supports and reduced back.  Well defined on the quotient
  /// because P(t) ≡ 0 implies P(t^m) ≡ 0 ((t−1) divides (t^m−1)).
  CorrespondenceElement compose(const CorrespondenceElement& o) const;

  /// Φ_j: evaluate Σ a_n·Γ[n] ↦ Σ a_n·n^j on the canonical support, with the
  /// convention 0^0 = 1.  Only defined for j < nilIndex (higher moments are
  /// not constant on residue classes).  @throws DomainError otherwise.
  arith::LambdaScalar moment(unsigned j) const;

  friend bool operator==(const CorrespondenceElement& a,
                         const CorrespondenceElement& b) {
    return a.coef_ == b.coef_;
  }

  /// Canonical Γ-support rendering, e.g. "G[0] - 2*G[1] + 1/2*G[2]".
  std::string toString() const;

 private:
  std::vector<arith::LambdaScalar> coef_;  // shift basis, size = nilIndex
  arith::InvertedPrimeSet ring_;

  /// @throws DomainError unless nilIndex and ring shape match.
  void requireCompatible(const CorrespondenceElement& o) const;
};

/// log Γ[1] = Σ_{j≥1} (−1)^{j−1}(Γ[1]−Γ[0])^{⋆j}/j, exact in the quotient.
/// The ring must invert every prime ≤ nilIndex−1.
CorrespondenceElement logGammaOne(unsigned nilIndex,
                                  const arith::InvertedPrimeSet& ring);

/// The Beauville projectors π_0, …, π_{2g} of an abelian scheme of relative
/// dimension g over a base of dimension d, as elements of the truncated
/// correspondence algebra with nilIndex = 2g+d+1 over ℤ[1/(2g+d+1)!]:
///
///   π_i = (log Γ[1])^{⋆(2g−i)} / (2g−i)! .
///
/// Before returning, the moment conditions Φ_j(π_i) = [j = 2g−i] for all
/// 0 ≤ i, j ≤ 2g are re-derived from the coefficients; these are the delta
/// relations that make the π_i act as the Künneth projectors.
///
/// @throws DomainError     if g < 1 or nilIndex ≠ 2g+d+1.
/// @throws InvariantError  if a moment condition fails.
std::vector<CorrespondenceElement> beauvilleProjectors(unsigned g, unsigned d,
                                                       unsigned nilIndex);

}  // namespace fdual::chow

#endif  // FDUAL_CORRESPONDENCE_HPP
