#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/algebra/bb_space.hpp"
#include "phodge/lefschetz/graded_operator.hpp"
#include "phodge/linalg/subspace.hpp"

namespace phodge::lefschetz {

using linalg::Subspace;

template <ExactField K>
struct Sl2Triple {
  GradedOperator<K> E;  // shift +2
  GradedOperator<K> H;  // shift 0
  GradedOperator<K> F;  // shift −2
};

/// True iff ω^k : H^{2n−k} → H^{2n+k} is an isomorphism for 1 ≤ k ≤ 2n.
template <ExactField F>
bool is_lefschetz_type(const GradedAlgebra& alg, const ClassVector<F>& omega);

/// (L_ω, H, Λ_ω) with H = (deg − 2n) and Λ_ω built from the primitive
/// decomposition: on E^a p with p primitive of weight −k, Λ(E^a p) = a(k−a+1)E^{a−1}p.
/// The three bracket identities are verified before returning.
template <ExactField F>
Sl2Triple<F> lefschetz_triple(const GradedAlgebra& alg, const ClassVector<F>& omega);

/// Names of the sl2 identities that fail; empty when the triple is exact.
template <ExactField F>
std::vector<std::string> sl2_violations(const Sl2Triple<F>& t);

/// Increasing filtration indexed by integers; below `lowest` it is zero, above
/// `lowest + size − 1` it is the whole ambient space.
template <ExactField F>
struct Filtration {
  Filtration() = default;
  Filtration(int lowest_, std::size_t ambient_)
      : lowest(lowest_), ambient(ambient_), bottom(Subspace<F>::zero(ambient_)), top(Subspace<F>::whole(ambient_)) {}

  int lowest = 0;
  std::size_t ambient = 0;
  std::vector<Subspace<F>> pieces;

  int highest() const { return lowest + static_cast<int>(pieces.size()) - 1; }
  const Subspace<F>& at(int m) const {
    if (m < lowest) return bottom;
    if (m > highest()) return top;
    return pieces[static_cast<std::size_t>(m - lowest)];
  }
  std::size_t gr_dim(int m) const { return at(m).dim() - at(m - 1).dim(); }

 private:
  Subspace<F> bottom, top;
};

/// Weight filtration of a nilpotent degree-raising operator, one filtration
/// per degree (all pieces are graded subspaces).
///
/// Convention: W_m = Σ_{k ≥ max(0,−m)} Im N^k ∩ ker N^{k+m+1}, the unique
/// filtration with N·W_m ⊆ W_{m−2} and N^m : Gr_m ≅ Gr_{−m}. A vector at the
/// bottom of an N-string of length ℓ+1 has weight ℓ, its top N^ℓ p weight −ℓ.
template <ExactField F>
struct WeightFiltration {
  int bound = 0;
  std::vector<Filtration<F>> by_degree;

  /// The total-space filtration obtained by stacking degrees.
  Filtration<F> total() const;
  /// dim Gr_m summed over all degrees.
  std::size_t gr_dim(int m) const;
};

/// Throws PreconditionError if N^{bound+1} ≠ 0 or N does not raise degree, and
/// ConsistencyError if the defining postconditions fail on the result.
template <ExactField F>
WeightFiltration<F> weight_filtration(const GradedOperator<F>& N, int bound);

/// Dimension and a basis of the Lie algebra generated by operators of shift
/// −2, 0 or +2. Elements are kept homogeneous per shift; iteration applies
/// ad(generator) to every new element until no rank is added. A nonzero
/// bracket leaving those shifts throws PreconditionError.
template <ExactField F>
struct LieClosure {
  std::size_t dimension = 0;
  std::map<int, std::size_t> dimension_by_shift;
  std::vector<GradedOperator<F>> basis;
};
template <ExactField F>
LieClosure<F> lie_closure(const std::vector<GradedOperator<F>>& generators);

/// A basis of H² made of classes with q ≠ 0: each standard basis vector, or
/// e_k ± e_l for the first partner l that keeps q nonzero and adds rank.
/// Throws PreconditionError if H² admits no such basis (q = 0).
std::vector<Vector<Rational>> lefschetz_spanning_classes(const algebra::BBSpace& bb);

/// Closure of E and F over the triples of lefschetz_spanning_classes. On
/// hyper-Kähler type models it is so(b2 + 2), of dimension (b2+2)(b2+1)/2.
/// Fewer directions give less: five generic ones only reach so(7).
LieClosure<Rational> structure_lie_algebra(const GradedAlgebra& alg, const algebra::BBSpace& bb);

/// Three degree-2 classes in Gaussian-rational coordinates on H².
struct DCirclePoint {
  Vector<GaussianRational> x, y, z;
};

/// Reason the point violates q(x) = q(y) = q(z) ≠ 0 and pairwise orthogonality, if it does.
std::optional<std::string> d_circle_violation(const algebra::BBSpace& bb, const DCirclePoint& p);

/// Deterministic points of D°: hyperbolic-plane triples first, then images of
/// them under seeded products of integral reflections rescaled by Gaussian
/// scalars. Every point is re-verified. Throws PreconditionError when no base
/// point can be constructed.
std::vector<DCirclePoint> sample_d_circle(const algebra::BBSpace& bb, std::size_t count, std::uint64_t seed = 0);

/// Subspaces of the total space indexed by (i, j) ∈ [0, 2n]²; piece (i, j) lies in degree i + j.
template <ExactField F>
struct Bigrading {
  int n = 0;
  std::size_t ambient = 0;
  std::map<std::pair<int, int>, Subspace<F>> pieces;

  const Subspace<F>& piece(int i, int j) const;
  /// dim piece (i, j), rows i, columns j.
  std::vector<std::vector<std::size_t>> dimension_table() const;
};

/// Simultaneous eigenspaces of H and H′ = −i[L_y, Λ_z]; the piece with
/// eigenvalues (i+j−2n, i−j) is labelled (i, j). Throws ConsistencyError when
/// the eigenspaces do not exhaust some degree.
Bigrading<GaussianRational> cartan_bigrading(const GradedAlgebra& alg, const DCirclePoint& p);

/// Degree-2 class from Gaussian coordinates.
inline ClassVector<GaussianRational> gaussian_class(const Vector<GaussianRational>& v) { return {2, v}; }

}  // namespace phodge::lefschetz
