#include "phodge/algebra/bb_space.hpp"

#include <random>

#include "phodge/error.hpp"

namespace phodge::algebra {

namespace {

// Cartan matrix of E8 in Bourbaki numbering.
constexpr int kE8[8][8] = {
    {2, 0, -1, 0, 0, 0, 0, 0},  {0, 2, 0, -1, 0, 0, 0, 0},  {-1, 0, 2, -1, 0, 0, 0, 0},
    {0, -1, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
    {0, 0, 0, 0, 0, -1, 2, -1},  {0, 0, 0, 0, 0, 0, -1, 2},
};

}  // namespace

void BBSpace::validate() const {
  if (b2 == 0) throw InputError("BB space: b2 must be positive");
  if (gram.rows() != b2 || gram.cols() != b2) throw InputError("BB space: gram must be b2 x b2");
  for (std::size_t a = 0; a < b2; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (!(gram(a, b) == gram(b, a))) throw InputError("BB space: gram is not symmetric");
  if (linalg::rank(gram) != b2) throw InputError("BB space: gram is degenerate");
  if (fujiki.is_zero()) throw InputError("BB space: fujiki constant must be nonzero");
  if (n < 1) throw InputError("BB space: n must be at least 1");
}

Matrix<Rational> lattice_gram(int hyperbolic, int e8, std::span<const std::int64_t> extra_diagonal) {
  const std::size_t size = static_cast<std::size_t>(2 * hyperbolic + 8 * e8) + extra_diagonal.size();
  Matrix<Rational> g(size, size);
  std::size_t at = 0;
  for (int h = 0; h < hyperbolic; ++h, at += 2) {
    g(at, at + 1) = Rational(1);
    g(at + 1, at) = Rational(1);
  }
  for (int b = 0; b < e8; ++b, at += 8)
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) g(at + i, at + j) = Rational(-kE8[i][j]);
  for (auto x : extra_diagonal) {
    g(at, at) = Rational(x);
    ++at;
  }
  return g;
}

BBSpace k3_space() { return {22, lattice_gram(3, 2), Rational(1), 1}; }

BBSpace k3_hilb2_space() {
  const std::int64_t extra[] = {-2};
  return {23, lattice_gram(3, 2, extra), Rational(3), 2};
}

BBSpace toy_b3_space() {
  const std::int64_t extra[] = {1};
  return {3, lattice_gram(1, 0, extra), Rational(1), 1};
}

std::vector<std::pair<std::size_t, std::size_t>> hyperbolic_pairs(const BBSpace& bb) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::vector<bool> used(bb.b2, false);
  for (std::size_t e = 0; e < bb.b2; ++e) {
    if (used[e] || !bb.gram(e, e).is_zero()) continue;
    for (std::size_t f = e + 1; f < bb.b2; ++f) {
      if (used[f] || !bb.gram(f, f).is_zero() || !bb.gram(e, f).is_one()) continue;
      // the plane must be orthogonal to everything else
      bool isolated = true;
      for (std::size_t k = 0; k < bb.b2 && isolated; ++k)
        if (k != e && k != f && (!bb.gram(e, k).is_zero() || !bb.gram(f, k).is_zero())) isolated = false;
      if (!isolated) continue;
      used[e] = used[f] = true;
      out.emplace_back(e, f);
      break;
    }
  }
  return out;
}

std::optional<Vector<Rational>> find_isotropic(const BBSpace& bb) {
  for (std::size_t a = 0; a < bb.b2; ++a) {
    if (bb.gram(a, a).is_zero()) {
      Vector<Rational> v(bb.b2, Rational(0));
      v[a] = Rational(1);
      return v;
    }
  }
  // v = s·e_a + t·e_b over small coefficients, then three-term combinations.
  const int bound = 6;
  for (std::size_t a = 0; a < bb.b2; ++a)
    for (std::size_t b = a + 1; b < bb.b2; ++b)
      for (int s = 1; s <= bound; ++s)
        for (int t = -bound; t <= bound; ++t) {
          if (t == 0) continue;
          Rational q = Rational(s * s) * bb.gram(a, a) + Rational(2 * s * t) * bb.gram(a, b) +
                       Rational(t * t) * bb.gram(b, b);
          if (!q.is_zero()) continue;
          Vector<Rational> v(bb.b2, Rational(0));
          v[a] = Rational(s);
          v[b] = Rational(t);
          return v;
        }
  const int small = 3;
  for (std::size_t a = 0; a < bb.b2; ++a)
    for (std::size_t b = a + 1; b < bb.b2; ++b)
      for (std::size_t c = b + 1; c < bb.b2; ++c)
        for (int s = 1; s <= small; ++s)
          for (int t = -small; t <= small; ++t)
            for (int u = -small; u <= small; ++u) {
              if (t == 0 || u == 0) continue;
              Vector<Rational> v(bb.b2, Rational(0));
              v[a] = Rational(s);
              v[b] = Rational(t);
              v[c] = Rational(u);
              if (bb.q<Rational>(v).is_zero()) return v;
            }
  return std::nullopt;
}

Vector<Rational> line_trick(const BBSpace& bb, std::span<const Rational> e, std::span<const Rational> v) {
  const Rational ev = bb.pair<Rational>(e, v);
  const Rational qv = bb.q<Rational>(v);
  Vector<Rational> w(bb.b2);
  for (std::size_t k = 0; k < bb.b2; ++k) w[k] = Rational(2) * ev * v[k] - qv * e[k];
  return w;
}

IsotropicStream::IsotropicStream(const BBSpace& bb, std::uint64_t seed) : bb_(&bb), state_(seed) {
  auto e = find_isotropic(bb);
  if (!e) throw PreconditionError("no rational isotropic vector found in the BB space");
  anchor_ = std::move(*e);
}

Vector<Rational> IsotropicStream::next() {
  // Each draw is a pure function of (seed, draw index) so the stream is reproducible.
  for (;;) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (state_++ * 0xbf58476d1ce4e5b9ULL));
    std::uniform_int_distribution<int> entry(-2, 2);
    Vector<Rational> v(bb_->b2);
    for (auto& x : v) x = Rational(entry(rng));
    Vector<Rational> w = line_trick(*bb_, anchor_, v);
    if (!linalg::is_zero_vector<Rational>(w)) return w;
  }
}

}  // namespace phodge::algebra
