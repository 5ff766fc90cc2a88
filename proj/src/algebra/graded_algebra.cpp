#include "phodge/algebra/graded_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace phodge::algebra {

namespace {

std::string basis_name(int d, std::size_t i) {
  return "e" + std::to_string(i) + "@deg" + std::to_string(d);
}

}  // namespace

GradedAlgebra::Builder::Builder(int n, std::vector<std::size_t> graded_dims) : n_(n), dims_(std::move(graded_dims)) {
  if (n < 1) throw InputError("algebra: n must be at least 1");
  if (dims_.size() != static_cast<std::size_t>(4 * n + 1))
    throw InputError("algebra: graded_dims must have 4n+1 entries");
  const std::size_t slots = dims_.size() * dims_.size();
  staged_.resize(slots);
  given_.assign(slots, false);
  for (int d = 0; d <= 4 * n; ++d)
    for (int d2 = 0; d + d2 <= 4 * n; ++d2) staged_[slot(d, d2)].resize(dims_[d] * dims_[d2]);
}

std::size_t GradedAlgebra::Builder::slot(int d, int d2) const {
  return static_cast<std::size_t>(d) * dims_.size() + static_cast<std::size_t>(d2);
}

void GradedAlgebra::Builder::add(int d, int d2, std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  const int top = 4 * n_;
  if (d < 0 || d2 < 0 || d + d2 > top)
    throw InputError("mult entry (" + std::to_string(d) + "," + std::to_string(d2) + ") exceeds the top degree");
  if (i >= dims_[d] || j >= dims_[d2] || k >= dims_[d + d2])
    throw InputError("mult entry index out of range for degrees (" + std::to_string(d) + "," + std::to_string(d2) +
                     ")");
  given_[slot(d, d2)] = true;
  if (value.is_zero()) return;
  auto& cell = staged_[slot(d, d2)][i * dims_[d2] + j];
  for (auto& t : cell) {
    if (t.index == k) {
      t.value += value;
      return;
    }
  }
  cell.push_back({static_cast<std::uint32_t>(k), value});
}

bool GradedAlgebra::Builder::has_pair(int d, int d2) const { return given_[slot(d, d2)]; }

void GradedAlgebra::Builder::add_unit_products() {
  if (dims_[0] == 0) return;
  for (int d = 0; d <= 4 * n_; ++d) {
    if (!has_pair(0, d))
      for (std::size_t j = 0; j < dims_[d]; ++j) add(0, d, 0, j, j, Rational(1));
    if (d != 0 && !has_pair(d, 0))
      for (std::size_t j = 0; j < dims_[d]; ++j) add(d, 0, j, 0, j, Rational(1));
  }
}

void GradedAlgebra::Builder::complete_by_commutativity() {
  for (int d = 0; d <= 4 * n_; ++d) {
    for (int d2 = 0; d + d2 <= 4 * n_; ++d2) {
      if (d == d2 || has_pair(d2, d) || !has_pair(d, d2)) continue;
      const Rational sign((d * d2) % 2 == 0 ? 1 : -1);
      for (std::size_t i = 0; i < dims_[d]; ++i)
        for (std::size_t j = 0; j < dims_[d2]; ++j)
          for (const auto& t : staged_[slot(d, d2)][i * dims_[d2] + j]) add(d2, d, j, i, t.index, sign * t.value);
      given_[slot(d2, d)] = true;
    }
  }
}

void GradedAlgebra::Builder::set_integration(Vector<Rational> integration) {
  if (integration.size() != dims_.back()) throw InputError("integration vector length must equal graded_dims[4n]");
  integration_ = std::move(integration);
}

GradedAlgebra GradedAlgebra::Builder::build() && {
  if (integration_.size() != dims_.back()) throw InputError("integration functional not set");
  GradedAlgebra a;
  a.n_ = n_;
  a.dims_ = dims_;
  a.offsets_.assign(dims_.size() + 1, 0);
  for (std::size_t d = 0; d < dims_.size(); ++d) a.offsets_[d + 1] = a.offsets_[d] + dims_[d];
  a.integration_ = std::move(integration_);
  a.tables_.resize(dims_.size() * dims_.size());
  for (int d = 0; d <= 4 * n_; ++d) {
    for (int d2 = 0; d + d2 <= 4 * n_; ++d2) {
      auto& staged = staged_[slot(d, d2)];
      PairTable& t = a.tables_[a.slot(d, d2)];
      t.start.reserve(staged.size() + 1);
      t.start.push_back(0);
      for (auto& cell : staged) {
        std::sort(cell.begin(), cell.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
        for (auto& term : cell)
          if (!term.value.is_zero()) t.terms.push_back(std::move(term));
        t.start.push_back(static_cast<std::uint32_t>(t.terms.size()));
      }
      staged.clear();
      staged.shrink_to_fit();
    }
  }
  return a;
}

std::span<const GradedAlgebra::Term> GradedAlgebra::terms(int d, int d2, std::size_t i, std::size_t j) const {
  check_degree(d);
  check_degree(d2);
  if (d + d2 > top_degree()) throw PreconditionError("terms: degree overflow");
  const PairTable& t = tables_[slot(d, d2)];
  const std::size_t cell = i * dim(d2) + j;
  return {t.terms.data() + t.start[cell], t.terms.data() + t.start[cell + 1]};
}

ClassVector<Rational> GradedAlgebra::fundamental_class() const {
  const int top = top_degree();
  for (std::size_t i = 0; i < dim(top); ++i) {
    if (integration_[i].is_zero()) continue;
    auto v = zero<Rational>(top);
    v.coords[i] = Rational(1) / integration_[i];
    return v;
  }
  throw ConsistencyError("integration functional vanishes identically");
}

Matrix<Rational> GradedAlgebra::pairing_matrix(int d) const {
  check_degree(d);
  const int e = top_degree() - d;
  Matrix<Rational> m(dim(d), dim(e));
  for (std::size_t i = 0; i < dim(d); ++i)
    for (std::size_t j = 0; j < dim(e); ++j) {
      Rational s(0);
      for (const auto& t : terms(d, e, i, j)) s += t.value * integration_[t.index];
      m(i, j) = s;
    }
  return m;
}

FrobeniusReport GradedAlgebra::validate_frobenius() const {
  FrobeniusReport r;
  const int top = top_degree();
  auto note = [&r](std::string msg) {
    if (r.failures.size() < 20) r.failures.push_back(std::move(msg));
  };

  for (int d = 0; d <= top; ++d) {
    if (dim(d) != dim(top - d)) {
      r.palindromic = false;
      note("graded_dims not palindromic at degree " + std::to_string(d));
    }
  }

  auto product = [this](int d, std::size_t i, int d2, std::size_t j) {
    Vector<Rational> v(dim(d + d2), Rational(0));
    for (const auto& t : terms(d, d2, i, j)) v[t.index] += t.value;
    return v;
  };

  for (int d = 0; d <= top; ++d) {
    for (int d2 = d; d + d2 <= top; ++d2) {
      const Rational sign((d * d2) % 2 == 0 ? 1 : -1);
      for (std::size_t i = 0; i < dim(d); ++i)
        for (std::size_t j = 0; j < dim(d2); ++j) {
          auto ab = product(d, i, d2, j);
          auto ba = product(d2, j, d, i);
          for (auto& x : ba) x *= sign;
          if (ab != ba) {
            r.commutative = false;
            note("commutativity fails for (" + basis_name(d, i) + ", " + basis_name(d2, j) + ")");
          }
        }
    }
  }

  if (dim(0) == 0) {
    r.unit = false;
    note("degree 0 is empty; no unit");
  } else {
    for (int d = 0; d <= top; ++d)
      for (std::size_t j = 0; j < dim(d); ++j) {
        Vector<Rational> e(dim(d), Rational(0));
        e[j] = Rational(1);
        if (product(0, 0, d, j) != e || product(d, j, 0, 0) != e) {
          r.unit = false;
          note("unit law fails for " + basis_name(d, j));
        }
      }
  }

  for (int d1 = 0; d1 <= top; ++d1) {
    for (int d2 = 0; d1 + d2 <= top; ++d2) {
      for (int d3 = 0; d1 + d2 + d3 <= top; ++d3) {
        if (dim(d1) == 0 || dim(d2) == 0 || dim(d3) == 0 || dim(d1 + d2 + d3) == 0) continue;
        const std::size_t out_dim = dim(d1 + d2 + d3);
        for (std::size_t i = 0; i < dim(d1); ++i)
          for (std::size_t j = 0; j < dim(d2); ++j) {
            const auto ab = terms(d1, d2, i, j);
            for (std::size_t k = 0; k < dim(d3); ++k) {
              Vector<Rational> left(out_dim, Rational(0));
              for (const auto& t : ab)
                for (const auto& u : terms(d1 + d2, d3, t.index, k)) left[u.index] += t.value * u.value;
              Vector<Rational> right(out_dim, Rational(0));
              for (const auto& t : terms(d2, d3, j, k))
                for (const auto& u : terms(d1, d2 + d3, i, t.index)) right[u.index] += t.value * u.value;
              if (left != right) {
                r.associative = false;
                note("associativity fails for (" + basis_name(d1, i) + ", " + basis_name(d2, j) + ", " +
                     basis_name(d3, k) + ")");
              }
            }
          }
      }
    }
  }

  for (int d = 0; d <= top; ++d) {
    if (dim(d) != dim(top - d)) {
      r.pairing = false;
      continue;
    }
    if (dim(d) == 0) continue;
    if (linalg::rank(pairing_matrix(d)) != dim(d)) {
      r.pairing = false;
      note("Poincaré pairing degenerate between degrees " + std::to_string(d) + " and " + std::to_string(top - d));
    }
  }
  return r;
}

}  // namespace phodge::algebra
