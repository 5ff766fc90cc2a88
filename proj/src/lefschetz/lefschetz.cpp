#include "phodge/lefschetz/lefschetz.hpp"

#include <deque>

namespace phodge::lefschetz {

namespace {

template <ExactField F>
Matrix<F> power_block(const GradedOperator<F>& op, int source, int k) {
  Matrix<F> m = Matrix<F>::identity(op.dim(source));
  for (int i = 0; i < k; ++i) m = op.block(source + i * op.shift()) * m;
  return m;
}

template <ExactField F>
bool in_range(const GradedOperator<F>& op, int d) {
  return d >= 0 && d < op.degrees();
}

}  // namespace

template <ExactField F>
bool is_lefschetz_type(const GradedAlgebra& alg, const ClassVector<F>& omega) {
  if (omega.degree != 2 || linalg::is_zero_vector<F>(omega.coords)) return false;
  const int n = alg.n();
  const auto E = GradedOperator<F>::cup(alg, omega);
  for (int k = 1; k <= 2 * n; ++k) {
    const int src = 2 * n - k;
    if (alg.dim(src) != alg.dim(2 * n + k)) return false;
    if (alg.dim(src) == 0) continue;
    if (linalg::rank(power_block(E, src, k)) != alg.dim(src)) return false;
  }
  return true;
}

template <ExactField F>
Sl2Triple<F> lefschetz_triple(const GradedAlgebra& alg, const ClassVector<F>& omega) {
  if (!is_lefschetz_type(alg, omega)) throw PreconditionError("lefschetz_triple: class is not of Lefschetz type");
  const int n = alg.n();
  const int top = alg.top_degree();
  Sl2Triple<F> t{GradedOperator<F>::cup(alg, omega), GradedOperator<F>::degree_scaling(alg.graded_dims(), 2 * n),
                 GradedOperator<F>(alg.graded_dims(), -2)};

  // primitives of weight −k live in degree 2n − k
  std::vector<linalg::Subspace<F>> prim(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) {
    const int src = 2 * n - k;
    if (src + 2 * (k + 1) > top) {
      prim[k] = linalg::Subspace<F>::whole(alg.dim(src));
    } else {
      prim[k] = linalg::kernel(power_block(t.E, src, k + 1));
    }
  }

  for (int d = 2; d <= top; ++d) {
    const std::size_t dim = alg.dim(d);
    if (dim == 0) continue;
    std::vector<Vector<F>> basis, image;
    for (int k = std::abs(d - 2 * n); k <= 2 * n; k += 2) {
      const int a = (d - 2 * n + k) / 2;
      if (a == 0) {
        for (const auto& p : prim[k].basis()) {
          basis.push_back(p);
          image.emplace_back(alg.dim(d - 2), F(0));
        }
        continue;
      }
      const int src = 2 * n - k;
      const Matrix<F> up = power_block(t.E, src, a);
      const Matrix<F> up1 = power_block(t.E, src, a - 1);
      const F coeff(static_cast<std::int64_t>(a * (k - a + 1)));
      for (const auto& p : prim[k].basis()) {
        basis.push_back(up.apply(p));
        Vector<F> y = up1.apply(p);
        for (auto& x : y) x *= coeff;
        image.push_back(std::move(y));
      }
    }
    if (basis.size() != dim) throw ConsistencyError("lefschetz_triple: primitive strings do not span degree " + std::to_string(d));
    const Matrix<F> M = Matrix<F>::from_columns(dim, basis);
    auto inv = linalg::inverse(M);
    if (!inv) throw ConsistencyError("lefschetz_triple: primitive strings are dependent in degree " + std::to_string(d));
    t.F.set_block(d, Matrix<F>::from_columns(alg.dim(d - 2), image) * *inv);
  }

  auto bad = sl2_violations(t);
  if (!bad.empty()) throw ConsistencyError("lefschetz_triple: " + bad.front() + " fails");
  return t;
}

template <ExactField F>
std::vector<std::string> sl2_violations(const Sl2Triple<F>& t) {
  std::vector<std::string> out;
  if (!(bracket(t.H, t.E) == F(2) * t.E)) out.emplace_back("[H,E] = 2E");
  if (!(bracket(t.H, t.F) == F(-2) * t.F)) out.emplace_back("[H,F] = -2F");
  if (!(bracket(t.E, t.F) == t.H)) out.emplace_back("[E,F] = H");
  return out;
}

template <ExactField F>
Filtration<F> WeightFiltration<F>::total() const {
  std::vector<std::size_t> off(by_degree.size() + 1, 0);
  for (std::size_t d = 0; d < by_degree.size(); ++d) off[d + 1] = off[d] + by_degree[d].ambient;
  Filtration<F> f(-bound, off.back());
  for (int m = -bound; m <= bound; ++m) {
    Subspace<F> s(off.back());
    for (std::size_t d = 0; d < by_degree.size(); ++d) {
      const Subspace<F> placed = by_degree[d].at(m).embed(off[d], off.back());
      for (const auto& v : placed.basis()) s.add(v);
    }
    f.pieces.push_back(std::move(s));
  }
  return f;
}

template <ExactField F>
std::size_t WeightFiltration<F>::gr_dim(int m) const {
  std::size_t s = 0;
  for (const auto& f : by_degree) s += f.gr_dim(m);
  return s;
}

template <ExactField F>
WeightFiltration<F> weight_filtration(const GradedOperator<F>& N, int bound) {
  const int s = N.shift();
  if (s <= 0) throw PreconditionError("weight_filtration: operator must raise degree");
  if (bound < 0) throw PreconditionError("weight_filtration: bound must be nonnegative");
  if (!N.power(bound + 1).is_zero())
    throw PreconditionError("weight_filtration: N^" + std::to_string(bound + 1) + " is not zero");

  const int degrees = N.degrees();
  // Im N^k and ker N^k inside degree d
  auto image = [&](int d, int k) {
    if (k == 0) return Subspace<F>::whole(N.dim(d));
    const int src = d - k * s;
    if (!in_range(N, src) || N.dim(src) == 0) return Subspace<F>::zero(N.dim(d));
    return Subspace<F>::column_space(power_block(N, src, k));
  };
  auto kern = [&](int d, int k) {
    if (!in_range(N, d + k * s) || N.dim(d + k * s) == 0) return Subspace<F>::whole(N.dim(d));
    return linalg::kernel(power_block(N, d, k));
  };

  WeightFiltration<F> w{bound, {}};
  for (int d = 0; d < degrees; ++d) {
    Filtration<F> f(-bound, N.dim(d));
    for (int m = -bound; m <= bound; ++m) {
      Subspace<F> piece(N.dim(d));
      for (int k = std::max(0, -m); k <= bound; ++k) {
        const int j = k + m + 1;
        Subspace<F> term = j > bound ? image(d, k) : linalg::intersect(image(d, k), kern(d, j));
        piece = linalg::sum(piece, term);
      }
      f.pieces.push_back(std::move(piece));
    }
    w.by_degree.push_back(std::move(f));
  }

  // Postconditions, checked directly on the result.
  for (int d = 0; d < degrees; ++d) {
    const auto& f = w.by_degree[d];
    if (f.at(bound).dim() != N.dim(d)) throw ConsistencyError("weight_filtration: top piece is not everything");
    for (int m = -bound; m <= bound; ++m) {
      if (!f.at(m).contains(f.at(m - 1))) throw ConsistencyError("weight_filtration: pieces are not nested");
      const int t = d + s;
      if (in_range(N, t) && N.dim(t) > 0) {
        const auto& g = w.by_degree[t];
        for (const auto& v : f.at(m).basis())
          if (!g.at(m - 2).contains(N.block(d).apply(v)))
            throw ConsistencyError("weight_filtration: N W_m is not inside W_{m-2}");
      }
    }
    for (int m = 1; m <= bound; ++m) {
      const int t = d + m * s;
      const std::size_t gr = f.gr_dim(m);
      if (!in_range(N, t)) {
        if (gr != 0) throw ConsistencyError("weight_filtration: Gr_m has no partner degree");
        continue;
      }
      const auto& g = w.by_degree[t];
      if (g.gr_dim(-m) != gr) throw ConsistencyError("weight_filtration: dim Gr_m differs from dim Gr_-m");
      if (gr == 0) continue;
      Subspace<F> reached = g.at(-m - 1);
      const Matrix<F> Nm = power_block(N, d, m);
      for (const auto& v : f.at(m).basis()) reached.add(Nm.apply(v));
      if (!reached.contains(g.at(-m))) throw ConsistencyError("weight_filtration: N^m is not onto Gr_-m");
    }
  }
  return w;
}

template <ExactField F>
LieClosure<F> lie_closure(const std::vector<GradedOperator<F>>& generators) {
  LieClosure<F> out;
  if (generators.empty()) return out;
  const auto dims = generators.front().dims();
  std::map<int, linalg::EchelonBasis<F>> spans;
  for (int s : {-2, 0, 2}) spans.emplace(s, linalg::EchelonBasis<F>(GradedOperator<F>(dims, s).flat_size()));

  std::deque<GradedOperator<F>> queue;
  std::vector<GradedOperator<F>> gens;
  auto admit = [&](const GradedOperator<F>& op) -> std::optional<GradedOperator<F>> {
    auto it = spans.find(op.shift());
    if (it == spans.end()) {
      if (!op.is_zero())
        throw PreconditionError("lie_closure: bracket of shift " + std::to_string(op.shift()) + " is nonzero");
      return std::nullopt;
    }
    Vector<F> r = it->second.reduce(op.flatten());
    if (linalg::is_zero_vector<F>(r)) return std::nullopt;
    it->second.insert(r);
    return GradedOperator<F>::unflatten(dims, op.shift(), r);
  };

  for (const auto& g : generators) {
    if (g.dims() != dims) throw PreconditionError("lie_closure: generators act on different spaces");
    if (auto r = admit(g)) {
      gens.push_back(*r);
      queue.push_back(*r);
      out.basis.push_back(std::move(*r));
    }
  }
  while (!queue.empty()) {
    GradedOperator<F> x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      if (auto r = admit(bracket(g, x))) {
        queue.push_back(*r);
        out.basis.push_back(std::move(*r));
      }
    }
  }
  for (const auto& [s, span] : spans) {
    out.dimension_by_shift[s] = span.dim();
    out.dimension += span.dim();
  }
  return out;
}

template <ExactField F>
const Subspace<F>& Bigrading<F>::piece(int i, int j) const {
  auto it = pieces.find({i, j});
  if (it == pieces.end()) throw PreconditionError("bigrading: no piece (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

template <ExactField F>
std::vector<std::vector<std::size_t>> Bigrading<F>::dimension_table() const {
  std::vector<std::vector<std::size_t>> t(static_cast<std::size_t>(2 * n + 1),
                                          std::vector<std::size_t>(static_cast<std::size_t>(2 * n + 1), 0));
  for (const auto& [ij, s] : pieces) t[ij.first][ij.second] = s.dim();
  return t;
}

Bigrading<GaussianRational> cartan_bigrading(const GradedAlgebra& alg, const DCirclePoint& p) {
  using G = GaussianRational;
  const int n = alg.n();
  const auto Ly = GradedOperator<G>::cup(alg, gaussian_class(p.y));
  const auto Lambda_z = lefschetz_triple(alg, gaussian_class(p.z)).F;
  const GradedOperator<G> Hp = -G::i() * bracket(Ly, Lambda_z);

  Bigrading<G> bg{n, alg.total_dim(), {}};
  for (int i = 0; i <= 2 * n; ++i)
    for (int j = 0; j <= 2 * n; ++j) bg.pieces.emplace(std::pair{i, j}, Subspace<G>::zero(alg.total_dim()));

  for (int d = 0; d <= alg.top_degree(); ++d) {
    const std::size_t dim = alg.dim(d);
    if (dim == 0) continue;
    std::size_t found = 0;
    for (int i = std::max(0, d - 2 * n); i <= std::min(d, 2 * n); ++i) {
      const int j = d - i;
      Matrix<G> shifted = Hp.block(d) - Matrix<G>::identity(dim) * G(i - j);
      Subspace<G> eig = linalg::kernel(shifted);
      found += eig.dim();
      bg.pieces.at({i, j}) = eig.embed(alg.offset(d), alg.total_dim());
    }
    if (found != dim)
      throw ConsistencyError("cartan_bigrading: eigenspaces of H' cover " + std::to_string(found) + " of " +
                             std::to_string(dim) + " dimensions in degree " + std::to_string(d));
  }
  return bg;
}

std::vector<Vector<Rational>> lefschetz_spanning_classes(const algebra::BBSpace& bb) {
  std::vector<Vector<Rational>> out;
  linalg::EchelonBasis<Rational> span(bb.b2);
  auto unit = [&](std::size_t k) {
    Vector<Rational> v(bb.b2, Rational(0));
    v[k] = Rational(1);
    return v;
  };
  auto take = [&](const Vector<Rational>& v) {
    if (bb.q<Rational>(v).is_zero() || span.contains(v)) return false;
    span.insert(v);
    out.push_back(v);
    return true;
  };
  for (std::size_t k = 0; k < bb.b2; ++k) {
    if (take(unit(k))) continue;
    for (std::size_t l = 0; l < bb.b2; ++l) {
      if (l == k) continue;
      Vector<Rational> plus = unit(k), minus = unit(k);
      plus[l] += Rational(1);
      minus[l] -= Rational(1);
      if (take(plus) || take(minus)) break;
    }
  }
  if (out.size() != bb.b2)
    throw PreconditionError("lefschetz_spanning_classes: found only " + std::to_string(out.size()) + " of " +
                            std::to_string(bb.b2) + " directions");
  return out;
}

LieClosure<Rational> structure_lie_algebra(const GradedAlgebra& alg, const algebra::BBSpace& bb) {
  std::vector<GradedOperator<Rational>> ops;
  for (const auto& v : lefschetz_spanning_classes(bb)) {
    auto t = lefschetz_triple(alg, ClassVector<Rational>{2, v});
    ops.push_back(std::move(t.E));
    ops.push_back(std::move(t.F));
  }
  return lie_closure(ops);
}

#define PHODGE_INSTANTIATE(F)                                                              \
  template bool is_lefschetz_type<F>(const GradedAlgebra&, const ClassVector<F>&);       \
  template Sl2Triple<F> lefschetz_triple<F>(const GradedAlgebra&, const ClassVector<F>&); \
  template std::vector<std::string> sl2_violations<F>(const Sl2Triple<F>&);              \
  template struct WeightFiltration<F>;                                                   \
  template WeightFiltration<F> weight_filtration<F>(const GradedOperator<F>&, int);      \
  template LieClosure<F> lie_closure<F>(const std::vector<GradedOperator<F>>&);          \
  template struct Bigrading<F>;

PHODGE_INSTANTIATE(Rational)
PHODGE_INSTANTIATE(GaussianRational)

#undef PHODGE_INSTANTIATE

}  // namespace phodge::lefschetz
