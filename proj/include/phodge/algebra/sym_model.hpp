#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phodge/algebra/bb_space.hpp"
#include "phodge/algebra/graded_algebra.hpp"

namespace phodge::algebra {

/// Monomials of Sym^k of a b-dimensional space, as sorted index tuples in lexicographic order.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t vars, int degree);

  std::size_t size() const { return monomials_.size(); }
  int degree() const { return degree_; }
  const std::vector<std::uint16_t>& operator[](std::size_t i) const { return monomials_[i]; }
  /// Index of a sorted tuple; throws std::out_of_range if absent.
  std::size_t index_of(const std::vector<std::uint16_t>& mono) const { return index_.at(mono); }

 private:
  int degree_;
  std::vector<std::vector<std::uint16_t>> monomials_;
  std::map<std::vector<std::uint16_t>, std::size_t> index_;
};

/// Polarised integration ∫u₁⋯u_{2n} = (c/(2n−1)!!)·Σ_{perfect matchings} Π (u_a, u_b) on basis vectors.
Rational polarized_integral(const BBSpace& bb, std::span<const std::uint16_t> factors);

/// Builds the model algebra generated by H²: Sym^k H² in degree 2k for k ≤ n and
/// the Poincaré dual of Sym^{2n−k} H² above the middle, with integration the
/// polarisation of c·q^n. The degree-2 basis is the standard basis of H².
///
/// Degrees 2k > 2n are stored in dual coordinates: the coordinate of a class x
/// at the monomial m ∈ Sym^{2n−k} is ∫ x·m.
///
/// Throws PreconditionError when no rational isotropic vector exists and
/// ConsistencyError when the induced middle pairing is degenerate or the
/// isotropic (n+1)-st powers fail to vanish.
GradedAlgebra build_sym_model(const BBSpace& bb);

/// Rank of the span of {w^{n+1}} inside Sym^{n+1} H², over line-trick isotropic
/// vectors in rounds of 32, stopping once two consecutive rounds add no rank.
///
/// The rank is certified exactly by two bounds. Below: the rank modulo a large
/// prime never exceeds the rational rank. Above: every sampled power is verified
/// exactly to pair to zero with Sym^{n−1}, so the rational rank is at most the
/// kernel dimension of the pairing Sym^{n+1} → (Sym^{n−1})*.
struct IdealRankReport {
  std::size_t ambient = 0;         // dim Sym^{n+1}
  std::size_t rank = 0;            // rank modulo the prime, a lower bound
  std::size_t upper_bound = 0;     // ambient − rank of the pairing
  std::size_t expected = 0;        // dim Sym^{n+1} − dim Sym^{n−1}
  std::size_t vectors_used = 0;
  bool stabilized = false;
  bool certified() const { return rank == upper_bound; }
  bool matches() const { return stabilized && certified() && rank == expected; }
};
IdealRankReport isotropic_ideal_rank(const BBSpace& bb, std::size_t max_rounds = 400);

/// A degree-2 class in the model from H² coordinates.
template <ExactField F>
ClassVector<F> h2_class(std::span<const F> coords) {
  return {2, Vector<F>(coords.begin(), coords.end())};
}

/// w^k computed in the algebra.
template <ExactField F>
ClassVector<F> power(const GradedAlgebra& alg, const ClassVector<F>& w, int k) {
  ClassVector<F> out = alg.unit<F>();
  for (int i = 0; i < k; ++i) out = alg.multiply(out, w);
  return out;
}

}  // namespace phodge::algebra
