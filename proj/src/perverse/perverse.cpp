#include "phodge/perverse/perverse.hpp"

#include <sstream>

#include "phodge/algebra/sym_model.hpp"

namespace phodge::perverse {

namespace {

using lefschetz::GradedOperator;
using Matrix = linalg::Matrix<Rational>;
using Space = Subspace<Rational>;

std::string ij(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Matrix of w^k from H^src.
Matrix power_block(const GradedAlgebra& alg, const ClassVector<Rational>& w, int src, int k) {
  Matrix m = Matrix::identity(alg.dim(src));
  for (int t = 0; t < k; ++t) m = alg.multiplication_block(w, src + t * w.degree) * m;
  return m;
}

// ker w^k on H^d; everything when w^k leaves the algebra.
Space power_kernel(const GradedAlgebra& alg, const ClassVector<Rational>& w, int d, int k) {
  if (d + k * w.degree > alg.top_degree()) return Space::whole(alg.dim(d));
  return linalg::kernel(power_block(alg, w, d, k));
}

Bigrading<Rational> empty_bigrading(const GradedAlgebra& alg) {
  Bigrading<Rational> bg{alg.n(), alg.total_dim(), {}};
  for (int i = 0; i <= 2 * alg.n(); ++i)
    for (int j = 0; j <= 2 * alg.n(); ++j) bg.pieces.emplace(std::pair{i, j}, Space::zero(alg.total_dim()));
  return bg;
}

// Piece (i, j) in the coordinates of its own degree.
Space degree_slice(const GradedAlgebra& alg, const Space& piece, int d) {
  Space s(alg.dim(d));
  for (const auto& v : piece.basis())
    s.add(Vector<Rational>(v.begin() + static_cast<std::ptrdiff_t>(alg.offset(d)),
                           v.begin() + static_cast<std::ptrdiff_t>(alg.offset(d) + alg.dim(d))));
  return s;
}

// Pieces not contained in their own degree are reported; slicing them would hide the error.
void check_placement(const GradedAlgebra& alg, const Bigrading<Rational>& bg, CheckReport& r) {
  for (const auto& [key, piece] : bg.pieces) {
    const int d = key.first + key.second;
    if (piece.dim() == 0) continue;
    if (d > alg.top_degree() || degree_slice(alg, piece, d).dim() != piece.dim() ||
        !piece.contains(degree_slice(alg, piece, d).embed(alg.offset(d), alg.total_dim())))
      r.fail(ij(key.first, key.second) + " is not inside degree " + std::to_string(d));
  }
}

}  // namespace

Vector<Rational> isotropic_relative_ample(const BBSpace& bb, const Vector<Rational>& eta_prime,
                                          const Vector<Rational>& beta) {
  if (eta_prime.size() != bb.b2 || beta.size() != bb.b2)
    throw PreconditionError("isotropic_relative_ample: class length differs from b2");
  if (!bb.q<Rational>(beta).is_zero()) throw PreconditionError("isotropic_relative_ample: q(beta) != 0");
  const Rational eb = bb.pair<Rational>(eta_prime, beta);
  if (eb.is_zero()) throw PreconditionError("isotropic_relative_ample: (eta', beta) = 0, no isotropic point on the line");
  const Rational lambda = -bb.q<Rational>(eta_prime) / (Rational(2) * eb);
  Vector<Rational> eta = eta_prime;
  for (std::size_t k = 0; k < eta.size(); ++k) eta[k] += lambda * beta[k];
  return eta;
}

std::pair<Vector<Rational>, Vector<Rational>> default_classes(const BBSpace& bb) {
  const auto planes = algebra::hyperbolic_pairs(bb);
  if (planes.empty()) throw PreconditionError("default classes: no hyperbolic plane in the Gram matrix");
  Vector<Rational> beta(bb.b2, Rational(0)), eta_prime(bb.b2, Rational(0));
  beta[planes[0].first] = Rational(1);
  for (std::size_t p = 0; p < std::min<std::size_t>(2, planes.size()); ++p) {
    eta_prime[planes[p].first] += Rational(1);
    eta_prime[planes[p].second] += Rational(1);
  }
  return {eta_prime, beta};
}

void check_isotropic_pair(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                          const ClassVector<Rational>& beta) {
  if (eta.degree != 2 || beta.degree != 2) throw PreconditionError("eta and beta must be degree-2 classes");
  const int n = alg.n();
  if (!linalg::is_zero_vector<Rational>(algebra::power(alg, eta, n + 1).coords))
    throw PreconditionError("eta^(n+1) != 0: eta is not isotropic");
  if (!linalg::is_zero_vector<Rational>(algebra::power(alg, beta, n + 1).coords))
    throw PreconditionError("beta^(n+1) != 0: beta is not isotropic");
  if (alg.integrate(alg.multiply(algebra::power(alg, eta, n), algebra::power(alg, beta, n))).is_zero())
    throw PreconditionError("integral of eta^n beta^n vanishes: (eta, beta) = 0");
}

std::map<std::pair<int, int>, Space> primitive_pieces(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                                      const ClassVector<Rational>& beta) {
  check_isotropic_pair(alg, eta, beta);
  const int n = alg.n();
  std::map<std::pair<int, int>, Space> V;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const int d = i + j;
      V.emplace(std::pair{i, j}, linalg::intersect(power_kernel(alg, eta, d, n - i + 1),
                                                   power_kernel(alg, beta, d, n - j + 1)));
    }

  // Every degree must be the direct sum of its strings.
  std::vector<std::size_t> count(static_cast<std::size_t>(alg.top_degree() + 1), 0);
  std::vector<Space> span;
  for (int d = 0; d <= alg.top_degree(); ++d) span.emplace_back(alg.dim(d));
  for (const auto& [key, v] : V) {
    const auto [i, j] = key;
    for (int a = 0; a <= n - i; ++a)
      for (int b = 0; b <= n - j; ++b) {
        const int D = i + j + 2 * a + 2 * b;
        if (D > alg.top_degree()) continue;
        const Matrix m = power_block(alg, eta, i + j + 2 * b, a) * power_block(alg, beta, i + j, b);
        for (const auto& x : v.basis()) {
          span[D].add(m.apply(x));
          ++count[D];
        }
      }
  }
  for (int d = 0; d <= alg.top_degree(); ++d) {
    if (count[d] == alg.dim(d) && span[d].dim() == alg.dim(d)) continue;
    throw ConsistencyError("primitive decomposition fails in degree " + std::to_string(d) + ": " +
                           std::to_string(count[d]) + " string vectors of rank " + std::to_string(span[d].dim()) +
                           " against dimension " + std::to_string(alg.dim(d)) + " (deficit " +
                           std::to_string(alg.dim(d) - span[d].dim()) + ")");
  }
  return V;
}

Bigrading<Rational> bigrading_from_primitives(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                              const ClassVector<Rational>& beta) {
  const auto V = primitive_pieces(alg, eta, beta);
  const int n = alg.n();
  Bigrading<Rational> bg = empty_bigrading(alg);
  for (const auto& [key, v] : V) {
    const auto [i, j] = key;
    for (int a = 0; a <= n - i; ++a)
      for (int b = 0; b <= n - j; ++b) {
        const int D = i + j + 2 * a + 2 * b;
        if (D > alg.top_degree() || v.dim() == 0) continue;
        const Matrix m = power_block(alg, eta, i + j + 2 * b, a) * power_block(alg, beta, i + j, b);
        Space& piece = bg.pieces.at({i + 2 * a, j + 2 * b});
        for (const auto& x : v.basis()) {
          Vector<Rational> total(alg.total_dim(), Rational(0));
          const auto y = m.apply(x);
          std::copy(y.begin(), y.end(), total.begin() + static_cast<std::ptrdiff_t>(alg.offset(D)));
          piece.add(std::move(total));
        }
      }
  }
  return bg;
}

Bigrading<Rational> bigrading_from_weights(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                           const ClassVector<Rational>& beta) {
  check_isotropic_pair(alg, eta, beta);
  const int n = alg.n();
  const auto We = lefschetz::weight_filtration(GradedOperator<Rational>::cup(alg, eta), n);
  const auto Wb = lefschetz::weight_filtration(GradedOperator<Rational>::cup(alg, beta), n);
  Bigrading<Rational> bg = empty_bigrading(alg);
  for (auto& [key, piece] : bg.pieces) {
    const auto [i, j] = key;
    const int d = i + j;
    if (d > alg.top_degree() || alg.dim(d) == 0) continue;
    const Space s = linalg::intersect(We.by_degree[d].at(n - i), Wb.by_degree[d].at(n - j));
    piece = s.embed(alg.offset(d), alg.total_dim());
  }
  return bg;
}

Bigrading<Rational> perverse_bigrading(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                       const ClassVector<Rational>& beta) {
  Bigrading<Rational> a = bigrading_from_primitives(alg, eta, beta);
  const Bigrading<Rational> b = bigrading_from_weights(alg, eta, beta);
  const CheckReport agree = compare_bigradings(a, b);
  if (!agree.pass) throw ConsistencyError("perverse bigrading: the two constructions disagree at " + agree.violations.front());
  return a;
}

PerverseTable perverse_numbers(const Bigrading<Rational>& bg) {
  PerverseTable pt{bg.n, bg.dimension_table()};
  const CheckReport sym = check_table_symmetry(pt.entries);
  if (!sym.pass) throw ConsistencyError("perverse table: " + sym.violations.front());
  return pt;
}

CheckReport compare_hodge(const PerverseTable& pt, const HodgeDiamond& hd) {
  CheckReport r{"compare-hodge"};
  if (pt.n != hd.n || pt.entries.size() != hd.entries.size()) {
    r.fail("half dimensions differ: " + std::to_string(pt.n) + " vs " + std::to_string(hd.n));
    return r;
  }
  for (std::size_t i = 0; i < pt.entries.size(); ++i)
    for (std::size_t j = 0; j < pt.entries[i].size(); ++j)
      if (pt.entries[i][j] != hd.entries[i][j])
        r.fail(ij(static_cast<int>(i), static_cast<int>(j)) + ": " + std::to_string(pt.entries[i][j]) + " vs " +
               std::to_string(hd.entries[i][j]));
  return r;
}

CheckReport check_table_symmetry(const Table& t) {
  CheckReport r{"table-symmetry"};
  const std::size_t m = t.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (t[i][j] != t[m - 1 - i][j])
        r.fail("ph" + ij(static_cast<int>(i), static_cast<int>(j)) + " != ph" + ij(static_cast<int>(m - 1 - i), static_cast<int>(j)));
      if (t[i][j] != t[i][m - 1 - j])
        r.fail("ph" + ij(static_cast<int>(i), static_cast<int>(j)) + " != ph" + ij(static_cast<int>(i), static_cast<int>(m - 1 - j)));
    }
  return r;
}

CheckReport check_transpose_symmetry(const Table& t) {
  CheckReport r{"transpose-symmetry"};
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t[i][j] != t[j][i]) r.fail("ph" + ij(static_cast<int>(i), static_cast<int>(j)) + " != ph" + ij(static_cast<int>(j), static_cast<int>(i)));
  return r;
}

CheckReport check_sum_rule(const Table& t, const std::vector<std::size_t>& betti) {
  CheckReport r{"sum-rule"};
  const std::size_t m = t.size();
  if (betti.size() != 2 * m - 1) {
    r.fail("expected " + std::to_string(2 * m - 1) + " Betti numbers, got " + std::to_string(betti.size()));
    return r;
  }
  for (std::size_t k = 0; k < betti.size(); ++k) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (k >= i && k - i < m) s += t[i][k - i];
    if (s != betti[k]) r.fail("degree " + std::to_string(k) + ": " + std::to_string(s) + " != b = " + std::to_string(betti[k]));
  }
  return r;
}

CheckReport check_base_fiber_pattern(const PerverseTable& pt) {
  CheckReport r{"base-fiber-pattern"};
  for (std::size_t k = 0; k < pt.entries.size(); ++k) {
    const std::size_t want = k % 2 == 0 ? 1 : 0;
    if (pt.entries[0][k] != want) r.fail("ph" + ij(0, static_cast<int>(k)) + " = " + std::to_string(pt.entries[0][k]) + ", expected " + std::to_string(want));
    if (pt.entries[k][0] != want) r.fail("ph" + ij(static_cast<int>(k), 0) + " = " + std::to_string(pt.entries[k][0]) + ", expected " + std::to_string(want));
  }
  return r;
}

CheckReport check_multiplicativity(const GradedAlgebra& alg, const Bigrading<Rational>& bg) {
  CheckReport r{"multiplicativity"};
  check_placement(alg, bg, r);
  if (!r.pass) return r;
  const int m = 2 * bg.n;
  std::map<std::pair<int, int>, Space> slices;
  for (const auto& [key, piece] : bg.pieces)
    if (key.first + key.second <= alg.top_degree())
      slices.emplace(key, degree_slice(alg, piece, key.first + key.second));

  for (const auto& [ka, A] : slices) {
    const int d = ka.first + ka.second;
    std::map<std::pair<int, int>, bool> failed;
    for (const auto& a : A.basis()) {
      const ClassVector<Rational> ca{d, a};
      for (int d2 = 0; d + d2 <= alg.top_degree(); ++d2) {
        if (alg.dim(d2) == 0) continue;
        const Matrix M = alg.multiplication_block(ca, d2);
        for (int i2 = std::max(0, d2 - m); i2 <= std::min(d2, m); ++i2) {
          const std::pair kb{i2, d2 - i2};
          if (failed[kb]) continue;
          const int ti = ka.first + kb.first, tj = ka.second + kb.second;
          const Space* target = (ti <= m && tj <= m) ? &slices.at({ti, tj}) : nullptr;
          for (const auto& b : slices.at(kb).basis()) {
            const auto prod = M.apply(b);
            const bool ok = target ? target->contains(prod) : linalg::is_zero_vector<Rational>(prod);
            if (!ok) {
              failed[kb] = true;
              r.fail(ij(ka.first, ka.second) + " * " + ij(kb.first, kb.second) + " not inside " + ij(ti, tj));
              break;
            }
          }
        }
      }
    }
  }
  return r;
}

CheckReport check_duality(const GradedAlgebra& alg, const Bigrading<Rational>& bg) {
  CheckReport r{"duality"};
  check_placement(alg, bg, r);
  if (!r.pass) return r;
  const int n = bg.n, top = alg.top_degree();
  std::map<int, Matrix> pairing;
  for (const auto& [ka, A] : bg.pieces) {
    const int d = ka.first + ka.second;
    if (d > top || A.dim() == 0) continue;
    if (!pairing.count(d)) pairing.emplace(d, alg.pairing_matrix(d));
    const Space sa = degree_slice(alg, A, d);
    const Matrix left = linalg::Matrix<Rational>::from_columns(alg.dim(d), sa.basis()).transpose() * pairing.at(d);
    for (int i2 = std::max(0, top - d - 2 * n); i2 <= std::min(top - d, 2 * n); ++i2) {
      const std::pair kb{i2, top - d - i2};
      const bool complementary = ka.first + kb.first == 2 * n && ka.second + kb.second == 2 * n;
      const Space sb = degree_slice(alg, bg.piece(kb.first, kb.second), top - d);
      if (sb.dim() == 0) {
        if (complementary) r.fail(ij(ka.first, ka.second) + " has an empty complementary piece");
        continue;
      }
      const Matrix g = left * linalg::Matrix<Rational>::from_columns(alg.dim(top - d), sb.basis());
      if (complementary) {
        if (sa.dim() != sb.dim() || linalg::rank(g) != sa.dim())
          r.fail(ij(ka.first, ka.second) + " x " + ij(kb.first, kb.second) + " pairing is degenerate");
      } else if (!g.is_zero()) {
        r.fail(ij(ka.first, ka.second) + " x " + ij(kb.first, kb.second) + " pairing is nonzero");
      }
    }
  }
  return r;
}

CheckReport check_filtration(const GradedAlgebra& alg, const Bigrading<Rational>& bg,
                             const ClassVector<Rational>& eta, const ClassVector<Rational>& beta) {
  CheckReport r{"perverse-filtration"};
  const int m = 2 * bg.n;
  std::vector<Space> P;
  Space acc(alg.total_dim());
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m; ++j) acc = linalg::sum(acc, bg.piece(k, j));
    P.push_back(acc);
  }
  const auto E = GradedOperator<Rational>::cup(alg, eta);
  const auto B = GradedOperator<Rational>::cup(alg, beta);
  for (int k = 0; k <= m; ++k) {
    const Space& up = P[static_cast<std::size_t>(std::min(k + 2, m))];
    for (const auto& v : P[k].basis()) {
      if (!up.contains(E.apply_total(v))) {
        r.fail("eta * P_" + std::to_string(k) + " not inside P_" + std::to_string(k + 2));
        break;
      }
    }
    for (const auto& v : P[k].basis()) {
      if (!P[k].contains(B.apply_total(v))) {
        r.fail("beta * P_" + std::to_string(k) + " not inside P_" + std::to_string(k));
        break;
      }
    }
  }
  return r;
}

CheckReport compare_bigradings(const Bigrading<Rational>& a, const Bigrading<Rational>& b) {
  CheckReport r{"route-agreement"};
  if (a.n != b.n || a.ambient != b.ambient) {
    r.fail("bigradings live on different spaces");
    return r;
  }
  for (const auto& [key, pa] : a.pieces) {
    const auto& pb = b.piece(key.first, key.second);
    if (!(pa == pb))
      r.fail(ij(key.first, key.second) + " (dimensions " + std::to_string(pa.dim()) + " and " + std::to_string(pb.dim()) + ")");
  }
  return r;
}

std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  for (const auto& row : t) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << '\n';
  }
  return os.str();
}

std::string table_to_markdown(const Table& t, const std::string& corner) {
  std::ostringstream os;
  os << "| " << corner << " |";
  for (std::size_t j = 0; j < t.size(); ++j) os << ' ' << j << " |";
  os << "\n|---|";
  for (std::size_t j = 0; j < t.size(); ++j) os << "---|";
  os << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << "| " << i << " |";
    for (auto x : t[i]) os << ' ' << x << " |";
    os << '\n';
  }
  return os.str();
}

}  // namespace phodge::perverse
