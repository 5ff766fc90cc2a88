#include "phodge/algebra/sym_model.hpp"

#include <algorithm>

#include "phodge/error.hpp"
#include "phodge/linalg/subspace.hpp"

namespace phodge::algebra {

namespace {

void enumerate(std::size_t vars, int remaining, std::uint16_t start, std::vector<std::uint16_t>& cur,
               std::vector<std::vector<std::uint16_t>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = start; v < vars; ++v) {
    cur.push_back(static_cast<std::uint16_t>(v));
    enumerate(vars, remaining - 1, static_cast<std::uint16_t>(v), cur, out);
    cur.pop_back();
  }
}

Rational matching_sum(const BBSpace& bb, std::vector<std::uint16_t>& rest) {
  if (rest.empty()) return Rational(1);
  const std::uint16_t first = rest.front();
  Rational total(0);
  for (std::size_t k = 1; k < rest.size(); ++k) {
    const Rational& g = bb.gram(first, rest[k]);
    if (g.is_zero()) continue;
    std::vector<std::uint16_t> sub;
    sub.reserve(rest.size() - 2);
    for (std::size_t t = 1; t < rest.size(); ++t)
      if (t != k) sub.push_back(rest[t]);
    total += g * matching_sum(bb, sub);
  }
  return total;
}

std::vector<std::uint16_t> merge(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) {
  std::vector<std::uint16_t> m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

// mu / nu as multisets, if nu divides mu.
std::optional<std::vector<std::uint16_t>> divide(const std::vector<std::uint16_t>& mu,
                                                 const std::vector<std::uint16_t>& nu) {
  std::vector<std::uint16_t> rest;
  std::size_t j = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (j < nu.size() && mu[i] == nu[j]) {
      ++j;
    } else {
      if (j < nu.size() && nu[j] < mu[i]) return std::nullopt;
      rest.push_back(mu[i]);
    }
  }
  if (j != nu.size()) return std::nullopt;
  return rest;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coordinates of w^k in the monomial basis of Sym^k.
Vector<Rational> symmetric_power(const Vector<Rational>& w, const MonomialBasis& basis) {
  Vector<Rational> out(basis.size(), Rational(0));
  // coefficient of x^α in (Σ w_i x_i)^k is k!/α! · Π w_i^{α_i}
  const int k = basis.degree();
  Rational kfact(1);
  for (int i = 2; i <= k; ++i) kfact *= Rational(i);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const auto& mono = basis[m];
    Rational c = kfact;
    std::size_t run = 0;
    for (std::size_t t = 0; t < mono.size(); ++t) {
      c *= w[mono[t]];
      if (c.is_zero()) break;
      run = (t > 0 && mono[t] == mono[t - 1]) ? run + 1 : 1;
      c /= Rational(static_cast<std::int64_t>(run));
    }
    out[m] = c;
  }
  return out;
}

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 − 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t to_mod(const Rational& x) {
  const mpq_class q = x.to_mpq();
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (den == 0) throw ConsistencyError("ideal rank: denominator divisible by the modulus");
  return mul_mod(num, pow_mod(den, kPrime - 2));
}

// Echelon rows over Z/p keyed by pivot; enough for a rank count.
class ModularEchelon {
 public:
  bool insert(std::vector<std::uint64_t> v) {
    for (const auto& [p, row] : rows_) {
      if (v[p] == 0) continue;
      const std::uint64_t f = kPrime - v[p];
      for (std::size_t c = p; c < v.size(); ++c)
        if (row[c]) v[c] = (v[c] + mul_mod(f, row[c])) % kPrime;
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    const std::uint64_t inv = pow_mod(v[p], kPrime - 2);
    for (std::size_t c = p; c < v.size(); ++c) v[c] = mul_mod(v[c], inv);
    rows_.emplace(p, std::move(v));
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<std::size_t, std::vector<std::uint64_t>> rows_;
};

}  // namespace

MonomialBasis::MonomialBasis(std::size_t vars, int degree) : degree_(degree) {
  std::vector<std::uint16_t> cur;
  enumerate(vars, degree, 0, cur, monomials_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

Rational polarized_integral(const BBSpace& bb, std::span<const std::uint16_t> factors) {
  if (factors.size() != static_cast<std::size_t>(2 * bb.n))
    throw PreconditionError("polarized_integral: need exactly 2n factors");
  std::vector<std::uint16_t> rest(factors.begin(), factors.end());
  Rational s = matching_sum(bb, rest);
  if (s.is_zero()) return s;
  Rational dfact(1);
  for (int k = 2 * bb.n - 1; k > 1; k -= 2) dfact *= Rational(k);
  return bb.fujiki * s / dfact;
}

GradedAlgebra build_sym_model(const BBSpace& bb) {
  bb.validate();
  if (!find_isotropic(bb)) throw PreconditionError("sym model: no rational isotropic vector found");
  const int n = bb.n;
  const int top_sym = 2 * n;

  std::vector<MonomialBasis> mono;
  for (int k = 0; k <= n; ++k) mono.emplace_back(bb.b2, k);
  // Sym-degree k is represented by monomials of degree rep(k) (dual coordinates when k > n).
  auto rep = [n, top_sym](int k) { return k <= n ? k : top_sym - k; };

  std::vector<std::size_t> dims(static_cast<std::size_t>(4 * n + 1), 0);
  for (int k = 0; k <= top_sym; ++k) dims[static_cast<std::size_t>(2 * k)] = mono[rep(k)].size();

  GradedAlgebra::Builder builder(n, dims);
  for (int a = 0; a <= top_sym; ++a) {
    for (int b = 0; a + b <= top_sym; ++b) {
      const int d = 2 * a, d2 = 2 * b;
      const auto& ma = mono[rep(a)];
      const auto& mb = mono[rep(b)];
      if (a + b <= n) {
        const auto& target = mono[a + b];
        for (std::size_t i = 0; i < ma.size(); ++i)
          for (std::size_t j = 0; j < mb.size(); ++j)
            builder.add(d, d2, i, j, target.index_of(merge(ma[i], mb[j])), Rational(1));
      } else if (a <= n && b <= n) {
        const auto& dual = mono[top_sym - a - b];
        for (std::size_t i = 0; i < ma.size(); ++i)
          for (std::size_t j = 0; j < mb.size(); ++j) {
            const auto ab = merge(ma[i], mb[j]);
            for (std::size_t m = 0; m < dual.size(); ++m) {
              const auto full = merge(ab, dual[m]);
              Rational v = polarized_integral(bb, full);
              if (!v.is_zero()) builder.add(d, d2, i, j, m, v);
            }
          }
      } else {
        // One factor in dual coordinates: (δ_μ · ν)(m) = [ν·m = μ].
        const bool a_dual = a > n;
        const auto& dual_side = a_dual ? ma : mb;
        const auto& sym_side = a_dual ? mb : ma;
        const auto& target = mono[top_sym - a - b];
        for (std::size_t s = 0; s < dual_side.size(); ++s)
          for (std::size_t t = 0; t < sym_side.size(); ++t) {
            auto quotient = divide(dual_side[s], sym_side[t]);
            if (!quotient) continue;
            const std::size_t k = target.index_of(*quotient);
            if (a_dual) {
              builder.add(d, d2, s, t, k, Rational(1));
            } else {
              builder.add(d, d2, t, s, k, Rational(1));
            }
          }
      }
    }
  }
  builder.set_integration(Vector<Rational>{Rational(1)});
  GradedAlgebra alg = std::move(builder).build();

  if (linalg::rank(alg.pairing_matrix(2 * n)) != alg.dim(2 * n))
    throw ConsistencyError("sym model: induced middle-degree pairing is degenerate");

  // The top-degree part of the isotropic ideal must be killed by integration.
  IsotropicStream stream(bb);
  for (int s = 0; s < 32; ++s) {
    Vector<Rational> w = stream.next();
    ClassVector<Rational> wp = power(alg, h2_class<Rational>(w), n + 1);
    if (!linalg::is_zero_vector<Rational>(wp.coords))
      throw ConsistencyError("sym model: integration does not vanish on w^(n+1) for an isotropic w");
  }
  return alg;
}

IdealRankReport isotropic_ideal_rank(const BBSpace& bb, std::size_t max_rounds) {
  const int n = bb.n;
  MonomialBasis basis(bb.b2, n + 1);
  MonomialBasis low(bb.b2, n - 1);
  IdealRankReport r;
  r.ambient = basis.size();
  r.expected = basis.size() - binomial(bb.b2 + static_cast<std::size_t>(n) - 2, static_cast<std::size_t>(n) - 1);

  // pairing(y, x) = ∫ x·y for x ∈ Sym^{n+1}, y ∈ Sym^{n−1}
  Matrix<Rational> pairing(low.size(), basis.size());
  for (std::size_t y = 0; y < low.size(); ++y)
    for (std::size_t x = 0; x < basis.size(); ++x) pairing(y, x) = polarized_integral(bb, merge(basis[x], low[y]));
  r.upper_bound = basis.size() - linalg::rank(pairing);

  IsotropicStream stream(bb);
  ModularEchelon span;
  std::size_t quiet_rounds = 0;
  for (std::size_t round = 0; round < max_rounds && quiet_rounds < 2; ++round) {
    const std::size_t before = span.rank();
    for (int k = 0; k < 32; ++k) {
      const Vector<Rational> v = symmetric_power(stream.next(), basis);
      if (!linalg::is_zero_vector<Rational>(pairing.apply(v)))
        throw ConsistencyError("ideal rank: an isotropic power pairs nontrivially with Sym^(n-1)");
      std::vector<std::uint64_t> m(v.size());
      for (std::size_t c = 0; c < v.size(); ++c) m[c] = to_mod(v[c]);
      span.insert(std::move(m));
      ++r.vectors_used;
    }
    quiet_rounds = span.rank() == before ? quiet_rounds + 1 : 0;
  }
  r.rank = span.rank();
  r.stabilized = quiet_rounds >= 2;
  return r;
}

}  // namespace phodge::algebra
