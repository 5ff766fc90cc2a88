#include "phodge/gv/gv.hpp"

#include <sstream>

#include "phodge/error.hpp"

namespace phodge::gv {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ConsistencyError("integer overflow in series arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ConsistencyError("integer overflow in series arithmetic");
  return r;
}

// Peels p from the top against a family whose g-th member has leading term lead(g)·y^g.
template <class Basis>
std::vector<std::int64_t> peel(LaurentPoly rest, int top, Basis basis, const std::string& what) {
  std::vector<std::int64_t> n(static_cast<std::size_t>(top + 1), 0);
  for (int g = top; g >= 0; --g) {
    const LaurentPoly b = basis(g);
    const std::int64_t lead = b[g];
    if (rest[g] % lead != 0) throw ConsistencyError(what + ": non-integer coefficient at genus " + std::to_string(g));
    n[static_cast<std::size_t>(g)] = rest[g] / lead;
    rest -= n[static_cast<std::size_t>(g)] * b;
  }
  if (!rest.is_zero()) throw ConsistencyError(what + ": remainder " + rest.to_string() + " after peeling");
  return n;
}

}  // namespace

LaurentPoly LaurentPoly::monomial(int e, std::int64_t c) {
  LaurentPoly p;
  p.add(e, c);
  return p;
}

LaurentPoly LaurentPoly::plus_basis(int g) {
  LaurentPoly step = monomial(1), out = monomial(0);
  step.add(0, 2);
  step.add(-1, 1);
  for (int k = 0; k < g; ++k) out = out * step;
  return out;
}

LaurentPoly LaurentPoly::signed_basis(int g) {
  LaurentPoly step = monomial(1, -1), out = monomial(0);
  step.add(0, 2);
  step.add(-1, -1);
  for (int k = 0; k < g; ++k) out = out * step;
  return out;
}

std::int64_t LaurentPoly::operator[](int e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? 0 : it->second;
}

void LaurentPoly::add(int e, std::int64_t c) {
  const std::int64_t v = checked_add((*this)[e], c);
  if (v == 0)
    coeffs_.erase(e);
  else
    coeffs_[e] = v;
}

int LaurentPoly::min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPoly::max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

bool LaurentPoly::is_palindromic() const {
  for (const auto& [e, c] : coeffs_)
    if ((*this)[-e] != c) return false;
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) add(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) add(e, checked_mul(-1, c));
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) r.add(ea + eb, checked_mul(ca, cb));
  return r;
}

LaurentPoly operator*(std::int64_t s, const LaurentPoly& a) {
  LaurentPoly r;
  if (s == 0) return r;
  for (const auto& [e, c] : a.coeffs_) r.coeffs_[e] = checked_mul(s, c);
  return r;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    const std::int64_t mag = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0 || mag != 1) os << mag;
    if (e == 1) os << "y";
    if (e != 0 && e != 1) os << "y^" << e;
  }
  return os.str();
}

HodgeDiamond goettsche_hodge(int n) {
  if (n < 1 || n > 10) throw PreconditionError("goettsche_hodge: n must lie in [1, 10]");
  const std::vector<std::vector<std::int64_t>> surface{{1, 0, 1}, {0, 20, 0}, {1, 0, 1}};
  const int side = 2 * n + 1;
  // series[t][a][b]: coefficient of t^t x^a y^b, exponents a, b ≤ 2t
  std::vector<std::vector<std::vector<std::int64_t>>> series(
      static_cast<std::size_t>(n + 1),
      std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(side), std::vector<std::int64_t>(static_cast<std::size_t>(side), 0)));
  series[0][0][0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 2; ++q) {
        const int da = p + k - 1, db = q + k - 1;
        // divide h^{p,q} times by 1 − x^da y^db t^k, in increasing t so the update is a prefix sum
        for (std::int64_t rep = 0; rep < surface[p][q]; ++rep)
          for (int t = k; t <= n; ++t)
            for (int a = da; a < side; ++a)
              for (int b = db; b < side; ++b)
                series[t][a][b] = checked_add(series[t][a][b], series[t - k][a - da][b - db]);
      }
  HodgeDiamond d{n, perverse::Table(static_cast<std::size_t>(side), std::vector<std::size_t>(static_cast<std::size_t>(side), 0))};
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) d.entries[a][b] = static_cast<std::size_t>(series[n][a][b]);
  return d;
}

LaurentPoly chi_polynomial(const PerverseTable& t) {
  LaurentPoly phi;
  const int n = t.n;
  for (int i = 0; i <= 2 * n; ++i) {
    std::int64_t chi = 0;
    for (int j = 0; j <= 2 * n; ++j) {
      const auto v = static_cast<std::int64_t>(t.entries[i][j]);
      chi = checked_add(chi, (j - n) % 2 == 0 ? v : -v);
    }
    phi.add(i - n, chi);
  }
  return phi;
}

GVTable refined_gv(const PerverseTable& t, int n) {
  if (n < 0 || t.n != n || t.entries.size() != static_cast<std::size_t>(2 * n + 1))
    throw PreconditionError("refined_gv: table is not (2n+1)-square for n = " + std::to_string(n));
  for (const auto& row : t.entries)
    if (row.size() != t.entries.size()) throw PreconditionError("refined_gv: table is not square");
  const LaurentPoly phi = chi_polynomial(t);
  if (!phi.is_palindromic()) throw ConsistencyError("refined_gv: " + phi.to_string() + " is not palindromic");
  return {n, peel(phi, n, LaurentPoly::plus_basis, "refined_gv")};
}

GVTable refined_gv(const HodgeDiamond& d, int n) { return refined_gv(PerverseTable{d.n, d.entries}, n); }

LaurentPoly reconstruct(const GVTable& t) {
  LaurentPoly p;
  for (std::size_t g = 0; g < t.n.size(); ++g) p += t.n[g] * LaurentPoly::plus_basis(static_cast<int>(g));
  return p;
}

std::vector<LaurentPoly> kkv_series(int h_max) {
  if (h_max < 0 || h_max > 8) throw PreconditionError("kkv_oracle: h_max must lie in [0, 8]");
  std::vector<LaurentPoly> s(static_cast<std::size_t>(h_max + 1));
  s[0] = LaurentPoly::monomial(0);
  const std::pair<int, int> factors[] = {{0, 20}, {1, 2}, {-1, 2}};
  for (int m = 1; m <= h_max; ++m)
    for (auto [ey, mult] : factors)
      for (int rep = 0; rep < mult; ++rep)
        for (int q = m; q <= h_max; ++q) s[q] += LaurentPoly::monomial(ey) * s[q - m];
  return s;
}

std::vector<GVTable> kkv_oracle(int h_max) {
  std::vector<GVTable> out;
  const auto s = kkv_series(h_max);
  for (int h = 0; h <= h_max; ++h) out.push_back({h, peel(s[h], h, LaurentPoly::signed_basis, "kkv_oracle")});
  return out;
}

int half_degree(std::int64_t beta_squared) {
  if (beta_squared < -2 || beta_squared % 2 != 0)
    throw PreconditionError("half_degree: beta^2 must be even and at least -2");
  return static_cast<int>(beta_squared / 2 + 1);
}

}  // namespace phodge::gv
