#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "phodge/linalg/matrix.hpp"

namespace phodge::linalg {

/// Incrementally maintained reduced row echelon basis.
///
/// Rows are kept sorted by pivot column, normalised to 1 at the pivot, and
/// every pivot column is zero in all other rows. Insertion order never
/// affects the final rows.
template <ExactField F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after eliminating every pivot column.
  Vector<F> reduce(Vector<F> v) const {
    check_length(v);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (is_zero(v[pivots_[k]])) continue;
      const F f = v[pivots_[k]];
      for (std::size_t c : support_[k]) v[c] -= f * rows_[k][c];
    }
    return v;
  }

  bool contains(std::span<const F> v) const {
    return is_zero_vector<F>(reduce(Vector<F>(v.begin(), v.end())));
  }

  /// Adds v to the span; returns false when v was already dependent.
  bool insert(Vector<F> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < v.size() && is_zero(v[p])) ++p;
    if (p == v.size()) return false;
    const F inv = F(1) / v[p];
    for (std::size_t c = p; c < v.size(); ++c)
      if (!is_zero(v[c])) v[c] *= inv;
    std::vector<std::size_t> supp = support_of(v);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (is_zero(rows_[k][p])) continue;
      const F f = rows_[k][p];
      for (std::size_t c : supp) rows_[k][c] -= f * v[c];
      support_[k] = support_of(rows_[k]);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    support_.insert(support_.begin() + pos, std::move(supp));
    return true;
  }

 private:
  void check_length(std::span<const F> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("EchelonBasis: vector length mismatch");
  }

  static std::vector<std::size_t> support_of(const Vector<F>& v) {
    std::vector<std::size_t> s;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!is_zero(v[c])) s.push_back(c);
    return s;
  }

  std::size_t ambient_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::size_t>> support_;
};

/// A linear subspace of F^ambient in canonical (reduced echelon) form.
template <ExactField F>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : basis_(ambient) {}

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  static Subspace whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t k = 0; k < ambient; ++k) {
      Vector<F> e(ambient, F(0));
      e[k] = F(1);
      s.basis_.insert(std::move(e));
    }
    return s;
  }

  static Subspace span(std::size_t ambient, std::span<const Vector<F>> vectors) {
    Subspace s(ambient);
    for (const auto& v : vectors) s.basis_.insert(v);
    return s;
  }

  /// Column space of m.
  static Subspace column_space(const Matrix<F>& m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) s.basis_.insert(m.column(c));
    return s;
  }

  std::size_t ambient_dim() const { return basis_.ambient_dim(); }
  std::size_t dim() const { return basis_.dim(); }
  const std::vector<Vector<F>>& basis() const { return basis_.rows(); }
  const std::vector<std::size_t>& pivots() const { return basis_.pivots(); }

  /// Basis vectors as matrix columns (reduced column echelon form).
  Matrix<F> basis_matrix() const { return Matrix<F>::from_columns(ambient_dim(), basis()); }

  bool contains(std::span<const F> v) const { return basis_.contains(v); }
  bool contains(const Subspace& o) const {
    check_ambient(o);
    for (const auto& v : o.basis())
      if (!contains(v)) return false;
    return true;
  }
  Vector<F> reduce(Vector<F> v) const { return basis_.reduce(std::move(v)); }

  /// Adds a vector in place; returns false if it was already contained.
  bool add(Vector<F> v) { return basis_.insert(std::move(v)); }

  /// Places this subspace of F^n at coordinates [offset, offset+n) of F^ambient.
  Subspace embed(std::size_t offset, std::size_t ambient) const {
    if (offset + ambient_dim() > ambient) throw std::invalid_argument("Subspace::embed: out of range");
    Subspace s(ambient);
    for (const auto& v : basis()) {
      Vector<F> w(ambient, F(0));
      std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(offset));
      s.basis_.insert(std::move(w));
    }
    return s;
  }

  /// Intersection with the coordinate block [offset, offset+len), in block coordinates.
  Subspace restrict_block(std::size_t offset, std::size_t len) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim() == b.ambient_dim() && a.pivots() == b.pivots() && a.basis() == b.basis();
  }

  void check_ambient(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw std::invalid_argument("Subspace: ambient dimension mismatch");
  }

 private:
  EchelonBasis<F> basis_;
};

/// Null space {v : m·v = 0}.
template <ExactField F>
Subspace<F> kernel(const Matrix<F>& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Subspace<F>::whole(n);
  auto e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector<F>> vecs;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<F> v(n, F(0));
    v[f] = F(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    vecs.push_back(std::move(v));
  }
  return Subspace<F>::span(n, vecs);
}

template <ExactField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  Subspace<F> s = a;
  for (const auto& v : b.basis()) s.add(v);
  return s;
}

template <ExactField F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace<F>::zero(n);
  if (a.dim() == n) return b;
  if (b.dim() == n) return a;
  // (x, y) in ker [A | B]  <=>  A·x = −B·y lies in both.
  Matrix<F> m = hstack(a.basis_matrix(), b.basis_matrix());
  Subspace<F> k = kernel(m);
  Subspace<F> out(n);
  for (const auto& v : k.basis()) {
    Vector<F> w(n, F(0));
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (is_zero(v[i])) continue;
      const auto& ai = a.basis()[i];
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(ai[c])) w[c] += v[i] * ai[c];
    }
    out.add(std::move(w));
  }
  return out;
}

/// dim(a) − dim(b) for b ⊆ a.
template <ExactField F>
std::size_t quotient_dim(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  if (!a.contains(b)) throw std::invalid_argument("quotient_dim: subspace is not contained");
  return a.dim() - b.dim();
}

template <ExactField F>
Subspace<F> Subspace<F>::restrict_block(std::size_t offset, std::size_t len) const {
  if (offset + len > ambient_dim()) throw std::invalid_argument("restrict_block: out of range");
  // Combinations of basis vectors whose coordinates outside the block vanish.
  const std::size_t n = ambient_dim();
  Matrix<F> outside(n - len, dim());
  for (std::size_t b = 0; b < dim(); ++b) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (c >= offset && c < offset + len) continue;
      outside(r++, b) = basis()[b][c];
    }
  }
  Subspace<F> combos = kernel(outside);
  Subspace<F> out(len);
  for (const auto& x : combos.basis()) {
    Vector<F> w(len, F(0));
    for (std::size_t b = 0; b < dim(); ++b) {
      if (is_zero(x[b])) continue;
      for (std::size_t k = 0; k < len; ++k)
        if (!is_zero(basis()[b][offset + k])) w[k] += x[b] * basis()[b][offset + k];
    }
    out.add(std::move(w));
  }
  return out;
}

}  // namespace phodge::linalg
