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
 * @file sl2.hpp
 * @brief Integral sl₂ representation theory over Λ = ℤ[1/m] with (2g)! | m:
 *        symmetric powers of the standard representation, the ladder
 *        coefficient calculus, homogeneous splitting, and the isotypic
 *        decomposition algorithm — torsion modules included.
 *
 * A module is stored weight by weight: each piece V_i (i ∈ [−g, g]) is a
 * finitely presented Λ-module Λ^m/⟨relations⟩ whose relation matrix is
 * diagonal — 0 for free generators, p^k for torsion ones, p un-inverted.
 * The ladder maps e: V_i → V_{i+2} and f: V_i → V_{i−2} are matrices over Λ
 * in those generators; h never needs storing, it is multiplication by i on
 * V_i.  Every kernel, image, and isomorphism question reduces to Smith
 * normal form computations from matrix.hpp, so torsion bookkeeping costs no
 * special cases.
 */
#ifndef FDUAL_SL2_HPP
#define FDUAL_SL2_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdual/identity.hpp"
#include "fdual/matrix.hpp"
#include "fdual/scalar.hpp"

namespace fdual::sl2 {

/// One invariant factor ℤ/p^exponent of a piece.
struct TorsionFactor {
  std::int64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const TorsionFactor&, const TorsionFactor&) = default;
  friend auto operator<=>(const TorsionFactor&,
                          const TorsionFactor&) = default;
};

/// The shape of one weight piece: Λ^freeRank ⊕ ⊕_j ℤ/p_j^{k_j}.  Generators
/// are ordered free-first, then torsion factors sorted by (prime, exponent);
/// every matrix touching the piece uses that generator order.
struct PieceShape {
  unsigned freeRank = 0;
  std::vector<TorsionFactor> torsion;

  unsigned generators() const {
    return freeRank + static_cast<unsigned>(torsion.size());
  }
  /// p^k for a torsion generator, 0 for a free one.
  mpz_class annihilator(unsigned index) const;
  bool isTrivial() const { return generators() == 0; }

  friend bool operator==(const PieceShape&, const PieceShape&) = default;

  /// e.g. "free^2 + (Z/25)" — empty shape prints "0".
  std::string toString() const;
};

/// A graded Λ-module with ladder maps, validated on construction:
///  - the ring inverts (2g)! and no torsion prime;
///  - weights lie in [−g, g];
///  - e and f are well defined against the piece annihilators;
///  - (e∘f − f∘e)|_{V_i} = i·id holds per weight as a matrix congruence.
///
/// eMaps/fMaps are keyed by SOURCE weight; a missing key is the zero map.
///
/// @throws DomainError     on shape, ring, or well-definedness violations.
/// @throws InvariantError  if the sl₂ relation fails ("not a representation").
class Sl2Module {
 public:
  Sl2Module(unsigned g, arith::InvertedPrimeSet ring,
            std::map<int, PieceShape> pieces,
            std::map<int, arith::RatMatrix> eMaps,
            std::map<int, arith::RatMatrix> fMaps);

  unsigned g() const { return g_; }
  const arith::InvertedPrimeSet& ring() const { return ring_; }
  const std::map<int, PieceShape>& pieces() const { return pieces_; }
  const std::map<int, arith::RatMatrix>& eMaps() const { return eMaps_; }
  const std::map<int, arith::RatMatrix>& fMaps() const { return fMaps_; }

  /// The piece at a weight; trivial shape when absent.
  const PieceShape& piece(int weight) const;
  /// e restricted to V_weight, materialized with the right dimensions even
  /// when stored implicitly as zero.
  arith::RatMatrix eMap(int weight) const;
  arith::RatMatrix fMap(int weight) const;

  /// Sorted weights carrying a nontrivial piece.
  std::vector<int> weights() const;

 private:
  unsigned g_;
  arith::InvertedPrimeSet ring_;
  std::map<int, PieceShape> pieces_;
  std::map<int, arith::RatMatrix> eMaps_, fMaps_;
};

/// Sym^n of the standard representation: free pieces of rank one at weights
/// −n, −n+2, …, n with e(x_{−n+2i}) = (n−i)·x_{−n+2i+2} and
/// f(x_{−n+2i}) = i·x_{−n+2i−2}.  The result carries g = n.
/// @throws DomainError if (2n)! is not invertible in the ring.
Sl2Module symPower(unsigned n, const arith::InvertedPrimeSet& ring);

/// Same pieces indexed by negated weight, e and f swapped.
Sl2Module dualModule(const Sl2Module& v);

/// Weight-wise direct sum; the rings must agree.  g = max of the bounds.
Sl2Module directSum(const Sl2Module& a, const Sl2Module& b);

/// v ⊗ (ℤ/p^k)^copies: every free generator becomes `copies` torsion ones,
/// maps act blockwise.  @throws DomainError unless p is an un-inverted prime
/// and every piece of v is free (tensoring is applied before scrambling).
Sl2Module tensorWithTorsion(const Sl2Module& v, std::int64_t p, unsigned k,
                            unsigned copies);

/// Conjugate every piece by a random module automorphism (elementary
/// operations legal against the annihilators), deterministically from the
/// seed.  Weights and isomorphism type are preserved; the generator-level
/// description is thoroughly mixed.
Sl2Module scrambleBasis(const Sl2Module& v, std::uint64_t seed);

/// (n−k+l)!·k! / ((n−k)!·(k−l)!) for l ≤ k, else 0 — the coefficient in
/// f^l e^k(v) = coeff·e^{k−l}(v) for a lowest-weight v of weight −n.
/// Always an integer, returned over ℤ.  @throws DomainError if k > n.
arith::LambdaScalar flekCoefficient(unsigned n, unsigned k, unsigned l);

/// A kernel, presented: its abstract shape plus the embedding matrix whose
/// columns express the kernel generators in the ambient piece's generators.
struct KernelResult {
  PieceShape shape;
  arith::RatMatrix embedding;
};

/// V_weight[e] = ker(e: V_weight → V_weight+2), as a presented submodule.
KernelResult kernelOfE(const Sl2Module& v, int weight);
/// V_weight[f] = ker(f: V_weight → V_weight−2).
KernelResult kernelOfF(const Sl2Module& v, int weight);

/// Do the columns of a and b generate the same submodule of the piece?
/// Decided by double containment, each membership solved exactly over Λ.
bool sameSubmodule(const arith::RatMatrix& a, const arith::RatMatrix& b,
                   const PieceShape& piece, const arith::InvertedPrimeSet& r);

/// For every lowest-weight generator v of weight −n, n ≤ maxN: checks
/// f^l e^k(v) = flekCoefficient(n,k,l)·e^{k−l}(v) for all l ≤ k ≤ n,
/// e^{n+1}(v) = 0, and that the kernels V_n[f] at positive weights vanish.
/// The residual counts failed congruences.
ident::IdentityReport verifyFlek(const Sl2Module& v, unsigned maxN);

/// An element of V spread across weights: weight → coordinate vector.
using GradedVector = std::map<int, std::vector<mpq_class>>;

/// One weight component of a splitting, with its certificate: the
/// coefficients c_j expressing the component as Σ_j c_j·h^j(w), which
/// witnesses membership in any h-stable submodule containing w.
struct WeightComponent {
  int weight = 0;
  std::vector<mpq_class> component;
  std::vector<arith::LambdaScalar> certificate;
};

/// Split each generator of a submodule into its weight components via the
/// h-power Vandermonde system (invertible because (2g)! is).  Zero
/// generators yield empty component lists.
/// @throws DomainError on a malformed generator (unknown weight, bad size).
std::vector<std::vector<WeightComponent>> homogeneousSplit(
    const Sl2Module& v, const std::vector<GradedVector>& generators);

/// One isotypic stratum Sym^n(St)⊗M_n of a decomposition.
struct IsotypicComponent {
  unsigned n = 0;
  PieceShape multiplicity;  ///< shape of M_n = V_{−n}[f]
  /// weight −n+2i → matrix embedding Sym^n_{−n+2i}⊗M_n into V, columns
  /// scaled by (n−i)!/n!; present only when M_n is nontrivial.
  std::map<int, arith::RatMatrix> embeddings;
};

/// The full decomposition V ≅ ⊕_n Sym^n(St)⊗M_n with its witness.
struct IsotypicDecomposition {
  std::vector<IsotypicComponent> components;  ///< n = 0 … g, all listed
  /// φ per weight: block columns are the component embeddings, certified to
  /// be an isomorphism of presented modules intertwining e and f.
  std::map<int, arith::RatMatrix> witness;
};

/// Compute M_n = V_{−n}[f] for n = 0..g, assemble φ: ⊕ Sym^n⊗M_n → V with
/// the (n−i)!/n! basis scaling, and certify φ well defined, injective,
/// surjective, and ladder-equivariant weight by weight.
/// @throws InvariantError if certification fails.
IsotypicDecomposition decompose(const Sl2Module& v);

/// The tautological model of beauville-fourier wrapped as an Sl2Module:
/// ℓ^i sits in weight 2i−g, e is multiplication by ℓ, f is Pontryagin
/// convolution with λ.  Construction certifies [e, f] = h against the
/// model's own products; the decomposition must come out as a single
/// Sym^g(St) with free multiplicity one.
struct ChowSl2 {
  Sl2Module module;
  IsotypicDecomposition decomposition;
};

/// @throws DomainError     unless g ≥ 1 and nu = 1.
/// @throws InvariantError  if the ladder relation or the expected
///                         decomposition fails (either would falsify the
///                         underlying theory).
ChowSl2 buildChowSl2(unsigned g, std::int64_t nu = 1);

/// Finite-level shadow of the divisible-torsion statement: on
/// W = Sym^{g−1}(St)⊗(ℤ/p^k)^{2g}, verify that e^{i−1} is injective on the
/// lowest weight piece (weight 1−g) for every i = 1..g.  The residual
/// counts weights at which injectivity fails.
/// @throws DomainError unless p is a prime > 2g+1, k ≥ 1, and g ≥ 1.
ident::IdentityReport torsionInjectivityDemo(unsigned g, std::int64_t p,
                                             unsigned k);

}  // namespace fdual::sl2

#endif  // FDUAL_SL2_HPP
