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
 * @file taut_model.hpp
 * @brief The tautological subring of the Chow ring of a polarized abelian
 *        variety over a point: the free module on ℓ^0, …, ℓ^g with ℓ^{g+1}=0,
 *        over Λ = ℤ[1/(ν·(2g+1)!)].
 *
 * ℓ is half the pullback of the Poincaré class along (id, θ) for a
 * polarization θ of degree ν², normalized so that ℓ^g = ν·g!·[pt].  The
 * Fourier transform is stored as its action on the basis,
 *
 *   F(ℓ^i/i!) = (−1)^{g−i}·ℓ^{g−i}/(g−i)!   (ν = 1),
 *
 * a coefficient table frozen from the independent cohomology oracle (see
 * cohom_oracle.hpp); the Pontryagin product is then defined through F, and
 * the multiplication operators [n]^*, [n]_* act diagonally with eigenvalues
 * n^{2i} and n^{2(g−i)} on ℓ^i.
 */
#ifndef FDUAL_TAUT_MODEL_HPP
#define FDUAL_TAUT_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdual/identity.hpp"
#include "fdual/polynomial.hpp"
#include "fdual/scalar.hpp"

namespace fdual::chow {

class CorrespondenceElement;  // correspondence.hpp

/// Shape of the model: dimension, polarization degree, coefficient ring.
struct TautModel {
  unsigned g = 1;        ///< dimension of the abelian variety
  unsigned d = 0;        ///< base dimension; a point in this model
  std::int64_t nu = 1;   ///< ν, where the polarization has degree ν²
  arith::InvertedPrimeSet ring;  ///< primes dividing ν·(2g+1)!

  friend bool operator==(const TautModel&, const TautModel&) = default;
};

/// @throws DomainError unless g ≥ 1 and nu ≥ 1.
TautModel buildModel(unsigned g, std::int64_t nu);

/// An element Σ_{i=0}^{g} a_i·ℓ^i of the tautological ring.
class TautClass {
 public:
  /// Zero class.
  explicit TautClass(TautModel model);

  /// From explicit coefficients (a_0, …, a_g); each is re-validated against
  /// the model ring.  @throws DomainError on length or ring mismatch.
  TautClass(TautModel model, std::vector<arith::LambdaScalar> coefficients);

  /// ℓ^i.  @throws DomainError if i > g.
  static TautClass ellPower(const TautModel& model, unsigned i);

  const TautModel& model() const { return model_; }
  const std::vector<arith::LambdaScalar>& coefficients() const {
    return coef_;
  }
  const arith::LambdaScalar& coefficient(unsigned i) const;
  bool isZero() const;

  TautClass operator-() const;
  TautClass& operator+=(const TautClass& o);
  TautClass& operator-=(const TautClass& o);
  friend TautClass operator+(TautClass a, const TautClass& b) {
    return a += b;
  }
  friend TautClass operator-(TautClass a, const TautClass& b) {
    return a -= b;
  }
  TautClass& scale(const arith::LambdaScalar& c);

  /// Intersection product; ℓ^i·ℓ^j = ℓ^{i+j}, zero above degree g.
  TautClass operator*(const TautClass& o) const;

  friend bool operator==(const TautClass& a, const TautClass& b) {
    return a.model_ == b.model_ && a.coef_ == b.coef_;
  }

  /// Render as a graded polynomial in the degree-1 variable "l".
  chern::GradedPolynomial toPolynomial() const;
  std::string toString() const;

 private:
  TautModel model_;
  std::vector<arith::LambdaScalar> coef_;  // size g+1

  /// @throws DomainError unless the models agree.
  void requireSameModel(const TautClass& o) const;
};

/// [pt] = ℓ^g/(ν·g!), the class of a point; the Pontryagin unit.
TautClass pointClass(const TautModel& model);

/// λ = ℓ^{g−1}/(ν·(g−1)!); satisfies F(ℓ) = (−1)^{g−1}·λ when ν = 1.
TautClass lambdaClass(const TautModel& model);

/// exp(sign·ℓ) = Σ_i sign^i·ℓ^i/i!, exact since ℓ^{g+1} = 0.
TautClass expEll(const TautModel& model, int sign = 1);

/// Fourier transform on the basis table above.
/// @throws DomainError unless the model has ν = 1.
TautClass fourier(const TautClass& x);

/// Pontryagin product x⋆y = (−1)^g·[−1]^*F(F(x)·F(y)), i.e. the product that
/// F interchanges with the intersection product.  Closed form:
///   ℓ^i ⋆ ℓ^j = i!·j!·(2g−i−j)! / ((g−i)!·(g−j)!·(i+j−g)!) · ℓ^{i+j−g},
/// zero when i+j < g.  @throws DomainError on model mismatch or ν ≠ 1.
TautClass pontryagin(const TautClass& x, const TautClass& y);

/// [n]^*: ℓ^i ↦ n^{2i}·ℓ^i.
TautClass multPull(std::int64_t n, const TautClass& x);

/// [n]_*: ℓ^i ↦ n^{2(g−i)}·ℓ^i (the adjoint grading).
TautClass multPush(std::int64_t n, const TautClass& x);

/// Pushforward to the base point: Σ a_i·ℓ^i ↦ a_g·ν·g!  (degree of ℓ^g).
arith::LambdaScalar baseIntegral(const TautClass& x);

/// Σ_n a_n·[n]_*(x) for a correspondence Σ_n a_n·Γ[n] in canonical support;
/// this is how a multiplication correspondence acts covariantly on classes.
TautClass applyCorrespondencePush(const CorrespondenceElement& c,
                                  const TautClass& x);

/// Same with [n]^* in place of [n]_* (contravariant action).
TautClass applyCorrespondencePull(const CorrespondenceElement& c,
                                  const TautClass& x);

/// Full verification of the Fourier package on the ν = 1 model of dimension
/// g: F∘F = (−1)^g·[−1]^*, F(x⋆y) = F(x)·F(y) and F(x·y) = (−1)^g·F(x)⋆F(y)
/// on all basis pairs, ℓ^g = ν·g!·[pt], and F(ℓ) = (−1)^{g−1}·λ (which pins
/// λ uniquely in degree g−1).  The report's residual accumulates the
/// absolute values of all mismatched coefficients, so independent failures
/// cannot cancel.
ident::IdentityReport verifyFourierModel(unsigned g);

/// One-sided polarized check, valid for every ν ≥ 1: by the projection
/// formula, pulling the Fourier transform of exp(ℓ) back along the
/// polarization multiplies exp(−ℓ) by the degree π_*(exp ℓ) of the top
/// term, so the relation θ^*F(exp ℓ) = ν·exp(−ℓ) reduces to the model-side
/// identity  baseIntegral(exp ℓ)·exp(−ℓ) = ν·exp(−ℓ).  That reduction is
/// what this verifies.
ident::IdentityReport twistedExponentialCheck(const TautModel& model);

}  // namespace fdual::chow

#endif  // FDUAL_TAUT_MODEL_HPP
