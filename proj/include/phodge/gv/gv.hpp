#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phodge/perverse/perverse.hpp"

namespace phodge::gv {

using perverse::HodgeDiamond;
using perverse::PerverseTable;

/// Integer Laurent polynomial in y. Zero coefficients are never stored.
/// Arithmetic throws ConsistencyError on int64 overflow.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exponent, std::int64_t coefficient = 1);
  /// (y + 2 + 1/y)^g.
  static LaurentPoly plus_basis(int g);
  /// (−1)^g (y − 2 + 1/y)^g.
  static LaurentPoly signed_basis(int g);

  std::int64_t operator[](int exponent) const;
  void add(int exponent, std::int64_t c);
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  bool is_palindromic() const;
  const std::map<int, std::int64_t>& coefficients() const { return coeffs_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(std::int64_t s, const LaurentPoly& a);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// e.g. "3y^-2 - 42y^-1 + 234 - 42y + 3y^2".
  std::string to_string() const;

 private:
  std::map<int, std::int64_t> coeffs_;
};

/// n_{g,h} for 0 ≤ g ≤ h, where β² = 2h − 2.
struct GVTable {
  int h = 0;
  std::vector<std::int64_t> n;
  friend bool operator==(const GVTable&, const GVTable&) = default;
};

/// Hodge diamond of the Hilbert scheme of n points on a K3 surface, from the
/// generating series Σ_n h(S^[n]) t^n = Π_{k≥1} Π_{p,q} (1 − x^{p+k−1} y^{q+k−1} t^k)^{−h^{p,q}(S)},
/// which for K3 needs no signs since h^{p,q}(S) vanishes for odd p + q.
/// Entries are h^{p,q} with rows p. Throws PreconditionError unless 1 ≤ n ≤ 10.
HodgeDiamond goettsche_hodge(int n);

/// Φ(y) = Σ_i χ_i y^{i−n} with χ_i = Σ_j (−1)^{j−n} ph^{i,j}.
LaurentPoly chi_polynomial(const PerverseTable& table);

/// Φ peeled from the top in the basis (y + 2 + 1/y)^g. Throws PreconditionError
/// when the table is not (2n+1)-square, ConsistencyError when Φ is not
/// palindromic or leaves a remainder.
GVTable refined_gv(const PerverseTable& table, int n);
GVTable refined_gv(const HodgeDiamond& diamond, int n);

/// Σ_g n_g (y + 2 + 1/y)^g.
LaurentPoly reconstruct(const GVTable& t);

/// Expands Π_{m≥1} 1/((1 − q^m)^20 (1 − y q^m)^2 (1 − y^{−1} q^m)^2) to order
/// q^{h_max} and decomposes each coefficient in the basis (−1)^g (y − 2 + 1/y)^g.
/// Entry h of the result is the table for that h. Throws PreconditionError unless 0 ≤ h_max ≤ 8.
std::vector<GVTable> kkv_oracle(int h_max);

/// The q^h coefficient of the product above.
std::vector<LaurentPoly> kkv_series(int h_max);

/// h = β²/2 + 1. Everything downstream depends on β only through this number.
/// Throws PreconditionError for odd β² or β² < −2.
int half_degree(std::int64_t beta_squared);

}  // namespace phodge::gv
