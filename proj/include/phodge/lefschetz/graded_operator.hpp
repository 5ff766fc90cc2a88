#pragma once

#include <string>
#include <vector>

#include "phodge/algebra/graded_algebra.hpp"
#include "phodge/error.hpp"

namespace phodge::lefschetz {

using algebra::ClassVector;
using algebra::GradedAlgebra;
using linalg::ExactField;
using linalg::GaussianRational;
using linalg::Matrix;
using linalg::Rational;
using linalg::Vector;

/// Linear endomorphism of a graded space that moves degree d to d + shift.
///
/// block(d) maps H^d → H^{d+shift}; it is an empty matrix of the right shape
/// whenever either side is zero-dimensional or out of range.
template <ExactField F>
class GradedOperator {
 public:
  GradedOperator() = default;
  GradedOperator(std::vector<std::size_t> dims, int shift) : dims_(std::move(dims)), shift_(shift) {
    blocks_.reserve(dims_.size());
    for (int d = 0; d < degrees(); ++d) blocks_.emplace_back(dim(d + shift_), dim(d));
  }

  /// Cup product with a homogeneous class.
  static GradedOperator cup(const GradedAlgebra& alg, const ClassVector<F>& w) {
    GradedOperator op(alg.graded_dims(), w.degree);
    for (int d = 0; d < op.degrees(); ++d)
      if (d + w.degree <= alg.top_degree()) op.blocks_[d] = alg.multiplication_block(w, d);
    return op;
  }

  /// Scales H^d by (d − centre).
  static GradedOperator degree_scaling(std::vector<std::size_t> dims, int centre) {
    GradedOperator op(std::move(dims), 0);
    for (int d = 0; d < op.degrees(); ++d) op.blocks_[d] = Matrix<F>::identity(op.dim(d)) * F(d - centre);
    return op;
  }

  int shift() const { return shift_; }
  int degrees() const { return static_cast<int>(dims_.size()); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(int d) const { return d < 0 || d >= degrees() ? 0 : dims_[static_cast<std::size_t>(d)]; }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto x : dims_) s += x;
    return s;
  }

  const Matrix<F>& block(int d) const { return blocks_.at(static_cast<std::size_t>(d)); }
  void set_block(int d, Matrix<F> m) {
    if (m.rows() != dim(d + shift_) || m.cols() != dim(d))
      throw PreconditionError("GradedOperator: block " + std::to_string(d) + " has the wrong shape");
    blocks_.at(static_cast<std::size_t>(d)) = std::move(m);
  }

  ClassVector<F> apply(const ClassVector<F>& v) const {
    if (v.degree < 0 || v.degree >= degrees()) throw PreconditionError("GradedOperator: degree out of range");
    return {v.degree + shift_, block(v.degree).apply(v.coords)};
  }

  /// Action on a total-space vector laid out degree by degree.
  Vector<F> apply_total(std::span<const F> v) const {
    if (v.size() != total_dim()) throw PreconditionError("GradedOperator: total vector length mismatch");
    std::vector<std::size_t> off = offsets();
    Vector<F> out(total_dim(), F(0));
    for (int d = 0; d < degrees(); ++d) {
      const int t = d + shift_;
      if (dim(d) == 0 || dim(t) == 0) continue;
      auto y = block(d).apply(v.subspan(off[d], dim(d)));
      std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(off[t]));
    }
    return out;
  }

  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> off(dims_.size() + 1, 0);
    for (std::size_t d = 0; d < dims_.size(); ++d) off[d + 1] = off[d] + dims_[d];
    return off;
  }

  bool is_zero() const {
    for (const auto& b : blocks_)
      if (!b.is_zero()) return false;
    return true;
  }

  GradedOperator& operator+=(const GradedOperator& o) {
    check_compatible(o);
    for (int d = 0; d < degrees(); ++d) blocks_[d] += o.blocks_[d];
    return *this;
  }
  GradedOperator& operator-=(const GradedOperator& o) {
    check_compatible(o);
    for (int d = 0; d < degrees(); ++d) blocks_[d] -= o.blocks_[d];
    return *this;
  }
  GradedOperator& operator*=(const F& s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }
  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  friend GradedOperator operator*(const F& s, GradedOperator a) { return a *= s; }

  /// a ∘ b.
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    if (a.dims_ != b.dims_) throw PreconditionError("GradedOperator: composing operators on different spaces");
    GradedOperator out(a.dims_, a.shift_ + b.shift_);
    for (int d = 0; d < out.degrees(); ++d) {
      const int mid = d + b.shift_;
      if (out.blocks_[d].empty() || b.dim(mid) == 0) continue;
      out.blocks_[d] = a.block(mid) * b.block(d);
    }
    return out;
  }

  friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
    return a.dims_ == b.dims_ && a.shift_ == b.shift_ && a.blocks_ == b.blocks_;
  }

  GradedOperator power(int k) const {
    GradedOperator out = identity(dims_);
    for (int i = 0; i < k; ++i) out = *this * out;
    return out;
  }

  static GradedOperator identity(std::vector<std::size_t> dims) {
    GradedOperator op(std::move(dims), 0);
    for (int d = 0; d < op.degrees(); ++d) op.blocks_[d] = Matrix<F>::identity(op.dim(d));
    return op;
  }

  /// Concatenated block entries, degree by degree, row-major.
  Vector<F> flatten() const {
    Vector<F> v;
    v.reserve(flat_size());
    for (const auto& b : blocks_)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (const auto& x : b.row(r)) v.push_back(x);
    return v;
  }
  std::size_t flat_size() const {
    std::size_t s = 0;
    for (int d = 0; d < degrees(); ++d) s += dim(d) * dim(d + shift_);
    return s;
  }
  static GradedOperator unflatten(std::vector<std::size_t> dims, int shift, std::span<const F> v) {
    GradedOperator op(std::move(dims), shift);
    if (v.size() != op.flat_size()) throw PreconditionError("GradedOperator: flat vector length mismatch");
    std::size_t at = 0;
    for (auto& b : op.blocks_)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (auto& x : b.row(r)) x = v[at++];
    return op;
  }

 private:
  void check_compatible(const GradedOperator& o) const {
    if (dims_ != o.dims_ || shift_ != o.shift_)
      throw PreconditionError("GradedOperator: adding operators of different shape or shift");
  }

  std::vector<std::size_t> dims_;
  int shift_ = 0;
  std::vector<Matrix<F>> blocks_;
};

/// [a, b] = ab − ba.
template <ExactField F>
GradedOperator<F> bracket(const GradedOperator<F>& a, const GradedOperator<F>& b) {
  return a * b - b * a;
}

}  // namespace phodge::lefschetz
