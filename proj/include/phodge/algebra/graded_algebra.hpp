#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phodge/error.hpp"
#include "phodge/linalg/matrix.hpp"

namespace phodge::algebra {

using linalg::ExactField;
using linalg::Matrix;
using linalg::Rational;
using linalg::Vector;

/// A homogeneous cohomology class.
template <ExactField F>
struct ClassVector {
  int degree = 0;
  Vector<F> coords;
};

/// Outcome of checking the Frobenius algebra axioms; one flag per axiom.
struct FrobeniusReport {
  bool palindromic = true;
  bool commutative = true;
  bool associative = true;
  bool unit = true;
  bool pairing = true;
  std::vector<std::string> failures;

  bool ok() const { return palindromic && commutative && associative && unit && pairing; }
};

/// Finite-dimensional graded-commutative algebra with an integration
/// functional on the top degree 4n.
///
/// Basis vectors are indexed per degree; structure constants are stored
/// sparsely (one term list per ordered pair of basis vectors) for every
/// degree pair whose sum does not exceed the top degree.
class GradedAlgebra {
 public:
  struct Term {
    std::uint32_t index;
    Rational value;
  };

  /// Mutable staging area for structure constants.
  class Builder {
   public:
    Builder(int n, std::vector<std::size_t> graded_dims);

    int n() const { return n_; }
    const std::vector<std::size_t>& dims() const { return dims_; }

    /// Records e_i(deg d) · e_j(deg d2) += value · e_k(deg d + d2).
    void add(int d, int d2, std::size_t i, std::size_t j, std::size_t k, const Rational& value);
    bool has_pair(int d, int d2) const;
    /// Fills products with the unit e_0 ∈ H^0 for degree pairs not given explicitly.
    void add_unit_products();
    /// Fills (d2, d, j, i) from (d, d2, i, j) with the Koszul sign when (d2, d) is absent.
    void complete_by_commutativity();
    void set_integration(Vector<Rational> integration);

    GradedAlgebra build() &&;

   private:
    friend class GradedAlgebra;
    std::size_t slot(int d, int d2) const;

    int n_;
    std::vector<std::size_t> dims_;
    // per degree pair: (i * dim(d2) + j) -> accumulated terms
    std::vector<std::vector<std::vector<Term>>> staged_;
    std::vector<bool> given_;
    Vector<Rational> integration_;
  };

  int n() const { return n_; }
  int top_degree() const { return 4 * n_; }
  std::size_t dim(int d) const { return d < 0 || d > top_degree() ? 0 : dims_[static_cast<std::size_t>(d)]; }
  const std::vector<std::size_t>& graded_dims() const { return dims_; }
  std::size_t total_dim() const { return offsets_.back(); }
  /// Position of degree d inside a total-space vector.
  std::size_t offset(int d) const { return offsets_[static_cast<std::size_t>(d)]; }
  const Vector<Rational>& integration() const { return integration_; }

  /// Structure constants of e_i(deg d) · e_j(deg d2).
  std::span<const Term> terms(int d, int d2, std::size_t i, std::size_t j) const;

  template <ExactField F>
  ClassVector<F> multiply(const ClassVector<F>& a, const ClassVector<F>& b) const;

  template <ExactField F>
  F integrate(const ClassVector<F>& a) const;

  /// Matrix of cup-by-w from H^d to H^{d + deg w}.
  template <ExactField F>
  Matrix<F> multiplication_block(const ClassVector<F>& w, int source_degree) const;

  template <ExactField F = Rational>
  ClassVector<F> zero(int degree) const {
    check_degree(degree);
    return {degree, Vector<F>(dim(degree), F(0))};
  }
  template <ExactField F = Rational>
  ClassVector<F> basis_vector(int degree, std::size_t i) const {
    auto v = zero<F>(degree);
    v.coords.at(i) = F(1);
    return v;
  }
  template <ExactField F = Rational>
  ClassVector<F> unit() const {
    return basis_vector<F>(0, 0);
  }
  /// The top-degree class with integral 1.
  ClassVector<Rational> fundamental_class() const;

  /// Embeds a homogeneous class into the total space.
  template <ExactField F>
  Vector<F> to_total(const ClassVector<F>& a) const {
    Vector<F> v(total_dim(), F(0));
    std::copy(a.coords.begin(), a.coords.end(), v.begin() + static_cast<std::ptrdiff_t>(offset(a.degree)));
    return v;
  }
  /// Degree-d component of a total-space vector.
  template <ExactField F>
  ClassVector<F> component(std::span<const F> total, int d) const {
    return {d, Vector<F>(total.begin() + static_cast<std::ptrdiff_t>(offset(d)),
                         total.begin() + static_cast<std::ptrdiff_t>(offset(d) + dim(d)))};
  }

  /// Gram matrix ⟨e_i, e_j⟩ = ∫ e_i·e_j between H^d (rows) and H^{4n−d} (columns).
  Matrix<Rational> pairing_matrix(int d) const;

  FrobeniusReport validate_frobenius() const;

  void check_degree(int d) const {
    if (d < 0 || d > top_degree()) throw PreconditionError("degree " + std::to_string(d) + " out of range");
  }

 private:
  friend class Builder;
  GradedAlgebra() = default;
  std::size_t slot(int d, int d2) const {
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(top_degree() + 1) + static_cast<std::size_t>(d2);
  }

  struct PairTable {
    std::vector<std::uint32_t> start;  // CSR row starts, size dim(d)*dim(d2)+1
    std::vector<Term> terms;
  };

  int n_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<PairTable> tables_;
  Vector<Rational> integration_;
};

template <ExactField F>
ClassVector<F> GradedAlgebra::multiply(const ClassVector<F>& a, const ClassVector<F>& b) const {
  check_degree(a.degree);
  check_degree(b.degree);
  if (a.degree + b.degree > top_degree())
    throw PreconditionError("multiply: degree " + std::to_string(a.degree + b.degree) + " exceeds top degree");
  if (a.coords.size() != dim(a.degree) || b.coords.size() != dim(b.degree))
    throw PreconditionError("multiply: coordinate length does not match graded dimension");
  ClassVector<F> out = zero<F>(a.degree + b.degree);
  if (out.coords.empty()) return out;
  const PairTable& t = tables_[slot(a.degree, b.degree)];
  const std::size_t nb = dim(b.degree);
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (is_zero(a.coords[i])) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (is_zero(b.coords[j])) continue;
      const F ab = a.coords[i] * b.coords[j];
      const std::size_t cell = i * nb + j;
      for (std::uint32_t p = t.start[cell]; p < t.start[cell + 1]; ++p)
        out.coords[t.terms[p].index] += ab * F(t.terms[p].value);
    }
  }
  return out;
}

template <ExactField F>
F GradedAlgebra::integrate(const ClassVector<F>& a) const {
  if (a.degree != top_degree()) throw PreconditionError("integrate: class is not of top degree");
  F s(0);
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (!is_zero(a.coords[i]) && !integration_[i].is_zero()) s += a.coords[i] * F(integration_[i]);
  return s;
}

template <ExactField F>
Matrix<F> GradedAlgebra::multiplication_block(const ClassVector<F>& w, int source_degree) const {
  const int target = source_degree + w.degree;
  Matrix<F> m(dim(target), dim(source_degree));
  if (m.empty()) return m;
  const PairTable& t = tables_[slot(w.degree, source_degree)];
  const std::size_t ns = dim(source_degree);
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    if (is_zero(w.coords[i])) continue;
    for (std::size_t j = 0; j < ns; ++j) {
      const std::size_t cell = i * ns + j;
      for (std::uint32_t p = t.start[cell]; p < t.start[cell + 1]; ++p)
        m(t.terms[p].index, j) += w.coords[i] * F(t.terms[p].value);
    }
  }
  return m;
}

}  // namespace phodge::algebra
