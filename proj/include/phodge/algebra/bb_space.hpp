#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phodge/linalg/matrix.hpp"

namespace phodge::algebra {

using linalg::ExactField;
using linalg::Matrix;
using linalg::Rational;
using linalg::Vector;

/// Quadratic space (H², q, c, n) from which a model cohomology algebra is generated.
struct BBSpace {
  std::size_t b2 = 0;
  Matrix<Rational> gram;
  Rational fujiki{1};
  int n = 1;

  /// Throws InputError unless gram is square, symmetric and nondegenerate, c ≠ 0 and n ≥ 1.
  void validate() const;

  template <ExactField F>
  F pair(std::span<const F> u, std::span<const F> v) const {
    F s(0);
    for (std::size_t a = 0; a < b2; ++a) {
      if (is_zero(u[a])) continue;
      for (std::size_t b = 0; b < b2; ++b) {
        if (is_zero(v[b]) || gram(a, b).is_zero()) continue;
        s += u[a] * v[b] * F(gram(a, b));
      }
    }
    return s;
  }

  template <ExactField F>
  F q(std::span<const F> v) const {
    return pair<F>(v, v);
  }
};

/// Gram matrix of U^hyperbolic ⊕ E8(−1)^e8 ⊕ diag(extra).
Matrix<Rational> lattice_gram(int hyperbolic, int e8, std::span<const std::int64_t> extra_diagonal = {});

/// Built-in spaces: K3 (b2 = 22, c = 1, n = 1), K3^[2] (b2 = 23, c = 3, n = 2), U ⊕ ⟨1⟩ (b2 = 3, c = 1, n = 1).
BBSpace k3_space();
BBSpace k3_hilb2_space();
BBSpace toy_b3_space();

/// Index pairs (e, f) of the standard basis spanning disjoint hyperbolic planes.
std::vector<std::pair<std::size_t, std::size_t>> hyperbolic_pairs(const BBSpace& bb);

/// Some nonzero integral isotropic vector, found by a bounded deterministic search.
std::optional<Vector<Rational>> find_isotropic(const BBSpace& bb);

/// w(v) = 2(e,v)v − q(v)e, isotropic whenever e is.
Vector<Rational> line_trick(const BBSpace& bb, std::span<const Rational> e, std::span<const Rational> v);

/// Deterministic stream of nonzero isotropic vectors obtained by the line trick
/// through a fixed isotropic vector.
class IsotropicStream {
 public:
  IsotropicStream(const BBSpace& bb, std::uint64_t seed = 0);
  Vector<Rational> next();

 private:
  const BBSpace* bb_;
  Vector<Rational> anchor_;
  std::uint64_t state_;
};

}  // namespace phodge::algebra
