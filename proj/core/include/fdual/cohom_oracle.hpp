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
 * @file cohom_oracle.hpp
 * @brief Brute-force cohomological cross-check for the tautological model:
 *        the full exterior algebra H^*(X) of an abelian variety, with the
 *        Fourier transform realized literally as a push–pull integral
 *        transform against exp of the Poincaré class.
 *
 * H^*(X) is the exterior algebra on 2g degree-1 symbols listed in the
 * interleaved order x_1, y_1, …, x_g, y_g, so that the ascending product of
 * all symbols — the monomial integrate() pairs against — coincides with the
 * geometric fundamental form ℓ^g/g! and pushforwards need no orientation
 * correction.  H^* of a product is the algebra on the concatenated lists.  A
 * monomial is a bitmask over the symbol list, and every geometric operation
 * (pullback along a homomorphism, pushforward as its Poincaré adjoint,
 * products, correspondences acting on classes, fiberwise convolution of
 * correspondences) is computed from first principles in that basis.  Nothing
 * here shares code or formulas with taut_model.hpp — this module is the
 * oracle the model's frozen Fourier coefficients were derived from, kept
 * independent so the two can disagree loudly.
 *
 * Sizes are 2^{2g} for X, 2^{4g} for X×X, 2^{6g} for the triple space used
 * by fiberwise convolution; construction refuses g > 3.
 */
#ifndef FDUAL_COHOM_ORACLE_HPP
#define FDUAL_COHOM_ORACLE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fdual/identity.hpp"

namespace fdual::cohom {

/// Shared descriptor of an exterior algebra: an ordered list of degree-1
/// generator names.  Monomials are bitmasks over this list, wedged in
/// ascending index order.
class ExtAlgebra {
 public:
  /// @throws DomainError if the list is empty, exceeds 30 names, or repeats
  /// a name.
  static std::shared_ptr<const ExtAlgebra> make(
      std::vector<std::string> names);

  unsigned count() const { return static_cast<unsigned>(names_.size()); }
  const std::string& name(unsigned i) const { return names_.at(i); }
  std::uint32_t topMask() const {
    return (std::uint32_t{1} << names_.size()) - 1;
  }

 private:
  explicit ExtAlgebra(std::vector<std::string> names)
      : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

/// An exterior-algebra class with exact rational coefficients.
class ExtClass {
 public:
  /// Zero.
  explicit ExtClass(std::shared_ptr<const ExtAlgebra> algebra);

  static ExtClass monomial(std::shared_ptr<const ExtAlgebra> algebra,
                           std::uint32_t mask, const mpq_class& coeff);
  static ExtClass unit(std::shared_ptr<const ExtAlgebra> algebra);
  static ExtClass generator(std::shared_ptr<const ExtAlgebra> algebra,
                            unsigned index);

  const std::shared_ptr<const ExtAlgebra>& algebra() const { return alg_; }
  const std::map<std::uint32_t, mpq_class>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  mpq_class coefficient(std::uint32_t mask) const;

  ExtClass operator-() const;
  ExtClass& operator+=(const ExtClass& o);
  ExtClass& operator-=(const ExtClass& o);
  friend ExtClass operator+(ExtClass a, const ExtClass& b) { return a += b; }
  friend ExtClass operator-(ExtClass a, const ExtClass& b) { return a -= b; }
  /// Wedge product with graded-commutative signs.
  ExtClass operator*(const ExtClass& o) const;
  ExtClass& scale(const mpq_class& c);
  friend ExtClass operator*(const mpq_class& c, ExtClass a) {
    a.scale(c);
    return a;
  }
  ExtClass pow(unsigned e) const;
  ExtClass homogeneousPart(unsigned degree) const;

  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    return a.terms_ == b.terms_;
  }

  std::string toString() const;

 private:
  std::shared_ptr<const ExtAlgebra> alg_;
  std::map<std::uint32_t, mpq_class> terms_;  // no explicit zeros

  void addTerm(std::uint32_t mask, const mpq_class& c);
  /// @throws DomainError if the algebras differ.
  void requireSameAlgebra(const ExtClass& o) const;
};

/// Coefficient of the top monomial (integration over the fundamental class).
mpq_class integrate(const ExtClass& a);

/// A map of spaces f: A → B described by what f^* does to B's degree-1
/// generators.  pullback is the induced ring homomorphism H(B) → H(A);
/// pushforward H(A) → H(B) is its Poincaré adjoint,
/// ∫_B f_*(α)·β = ∫_A α·f^*(β), solved monomial by monomial against the
/// dual basis.  The adjoint table is precomputed eagerly, so a constructed
/// AlgebraMap is immutable and cheap to apply.
class AlgebraMap {
 public:
  /// generatorPullbacks[i] = f^*(i-th generator of `to`), an element of
  /// `from` that must be homogeneous of degree 1 (zero allowed).
  AlgebraMap(std::shared_ptr<const ExtAlgebra> from,
             std::shared_ptr<const ExtAlgebra> to,
             std::vector<ExtClass> generatorPullbacks);

  ExtClass pullback(const ExtClass& b) const;
  ExtClass pushforward(const ExtClass& a) const;

 private:
  std::shared_ptr<const ExtAlgebra> from_;  // H(A), the domain of f
  std::shared_ptr<const ExtAlgebra> to_;    // H(B), the codomain of f
  std::vector<ExtClass> gen_;               // f^* images of B-generators
  // adjoint_[m] = σ(m)^{−1}·f^*(complement of m) for each B-monomial m,
  // where m ∧ complement(m) = σ(m)·top.
  std::vector<ExtClass> adjoint_;
};

/// The oracle proper: X of dimension g with ℓ = Σ x_i∧y_i, the product
/// X×X^t (second factor's symbols primed) carrying the Poincaré class
/// ℘ = Σ (x_i∧y'_i − y_i∧x'_i), and the self-dual identification x'↦x,
/// y'↦y under which the Fourier transform squares.
class CohomologyOracle {
 public:
  /// @throws DomainError unless 1 ≤ g ≤ 3 (the product basis is 2^{4g}).
  explicit CohomologyOracle(unsigned g);

  unsigned g() const { return g_; }
  const std::shared_ptr<const ExtAlgebra>& spaceAlgebra() const {
    return xAlg_;
  }
  const std::shared_ptr<const ExtAlgebra>& productAlgebra() const {
    return prodAlg_;
  }

  ExtClass unitClass() const;
  /// ℓ = Σ x_i∧y_i (principal polarization).
  ExtClass ellClass() const;
  /// [pt] = ℓ^g/g!, the class of a point.
  ExtClass pointClass() const;
  /// ℘ ∈ H²(X×X^t).
  ExtClass poincareClass() const;

  /// F(α) = pr_{2,*}(pr_1^*(α)·exp ℘), landing back in H(X) through the
  /// self-dual identification.
  ExtClass fourier(const ExtClass& a) const;

  /// [n]^* (scales H^1 by n) and its adjoint [n]_*.
  ExtClass multPull(std::int64_t n, const ExtClass& a) const;
  ExtClass multPush(std::int64_t n, const ExtClass& a) const;

  /// Pontryagin product m_*(pr_1^*(a)·pr_2^*(b)) along the group law.
  ExtClass pontryagin(const ExtClass& a, const ExtClass& b) const;

  /// The class in H(X×X) of the multiplication-by-n graph {(z, nz)}.
  ExtClass graphClass(std::int64_t n) const;

  /// A correspondence u ∈ H(X×X) acting on a class: pr_{2,*}(u·pr_1^*(a)).
  ExtClass corrAction(const ExtClass& u, const ExtClass& a) const;

  /// Fiberwise convolution of correspondences over the first factor:
  /// M_*(pr_{12}^*(u)·pr_{13}^*(v)) with M(z,a,b) = (z, a+b).  Works on the
  /// 2^{6g} triple space, so keep g small.
  ExtClass corrStar(const ExtClass& u, const ExtClass& v) const;

 private:
  unsigned g_;
  std::shared_ptr<const ExtAlgebra> xAlg_;     // 2g symbols
  std::shared_ptr<const ExtAlgebra> prodAlg_;  // 4g symbols
  std::unique_ptr<AlgebraMap> pr1_, pr2_, mult_;  // prod → X
  ExtClass expPoincare_;  // exp ℘ ∈ H(X×X^t)

  AlgebraMap multMap(std::int64_t n) const;  // [n]: X → X
};

/// Verifies, inside the oracle for dimension g, the scaled compatibilities
/// of the (2g)!-normalized transform sF = (2g)!·F:
///   (2g)!·sF(x⋆y) = sF(x)·sF(y)          on all pairs of basis monomials,
///   F([n]_* x)    = [n]^* F(x)           for n ∈ {−2, …, 2}, all monomials.
/// The report's residual is the constant polynomial Σ|mismatch|, zero
/// exactly on success.
ident::IdentityReport scaledFourierCheck(unsigned g);

/// Cross-checks the oracle's push–pull Fourier transform against the closed
/// tautological model (taut_model.hpp) on the whole ℓ-line: for every
/// i ≤ g, F_oracle(ℓ^i) must equal Σ_j c_j·ℓ^j where the c_j are the model
/// coefficients of fourier(ℓ^i).  Since the model's table was frozen from
/// this oracle, a nonzero residual means one of the two implementations has
/// drifted.  The residual accumulates |mismatch| over all exterior-algebra
/// coefficients.  @throws DomainError unless 1 ≤ g ≤ 3.
ident::IdentityReport oracleModelAgreement(unsigned g);

/// Decides whether D^{⋆exponent}, D = Γ[1]−Γ[0], acts as zero on every
/// basis monomial of H^*(X): pass reflects the answer and the residual
/// counts the monomials that survive.  The sharp annihilation exponent is
/// 2g+1, one above the top Beauville shift.
/// @throws DomainError unless 1 ≤ g ≤ 2 (each ⋆ runs on the 2^{6g} triple
/// space) and exponent ≥ 1.
ident::IdentityReport shiftNilpotencyCheck(unsigned g, unsigned exponent);

}  // namespace fdual::cohom

#endif  // FDUAL_COHOM_ORACLE_HPP
