#include <random>

#include "phodge/lefschetz/lefschetz.hpp"

namespace phodge::lefschetz {

namespace {

using G = GaussianRational;
using algebra::BBSpace;

Vector<G> unit_combo(std::size_t b2, std::initializer_list<std::pair<std::size_t, G>> terms) {
  Vector<G> v(b2, G(0));
  for (const auto& [k, c] : terms) v[k] += c;
  return v;
}

Vector<G> scaled(Vector<G> v, const G& s) {
  for (auto& x : v) x *= s;
  return v;
}

// s_r(v) = v − 2(v,r)/q(r)·r
Vector<G> reflect(const BBSpace& bb, const Vector<G>& v, const Vector<G>& r) {
  const G f = G(2) * bb.pair<G>(v, r) / bb.q<G>(r);
  Vector<G> out = v;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!r[k].is_zero()) out[k] -= f * r[k];
  return out;
}

std::vector<DCirclePoint> base_points(const BBSpace& bb) {
  const auto planes = algebra::hyperbolic_pairs(bb);
  const std::size_t b2 = bb.b2;
  const G one(1), i = G::i();
  std::vector<DCirclePoint> out;
  if (planes.size() >= 3) {
    const auto [e1, f1] = planes[0];
    const auto [e2, f2] = planes[1];
    const auto [e3, f3] = planes[2];
    Vector<G> x = unit_combo(b2, {{e1, one}, {f1, one}});
    Vector<G> y = unit_combo(b2, {{e2, one}, {f2, one}});
    out.push_back({x, y, unit_combo(b2, {{e3, one}, {f3, one}})});
    out.push_back({x, y, unit_combo(b2, {{e3, i}, {f3, -i}})});
    return out;
  }
  if (planes.empty()) return out;
  // One hyperbolic plane (e, f) and a non-isotropic basis vector w orthogonal to it:
  // (w, e + (a/2)f, i(e − (a/2)f)) with a = q(w).
  const auto [e, f] = planes.front();
  for (std::size_t k = 0; k < b2; ++k) {
    if (k == e || k == f || bb.gram(k, k).is_zero()) continue;
    if (!bb.gram(k, e).is_zero() || !bb.gram(k, f).is_zero()) continue;
    const G half(bb.gram(k, k) / Rational(2));
    Vector<G> w = unit_combo(b2, {{k, one}});
    out.push_back({w, unit_combo(b2, {{e, one}, {f, half}}), unit_combo(b2, {{e, i}, {f, -i * half}})});
    out.push_back({w, unit_combo(b2, {{e, i}, {f, -i * half}}), scaled(unit_combo(b2, {{e, one}, {f, half}}), -one)});
    return out;
  }
  return out;
}

}  // namespace

std::optional<std::string> d_circle_violation(const BBSpace& bb, const DCirclePoint& p) {
  for (const auto* v : {&p.x, &p.y, &p.z})
    if (v->size() != bb.b2) return "coordinate length differs from b2";
  const G qx = bb.q<G>(p.x), qy = bb.q<G>(p.y), qz = bb.q<G>(p.z);
  if (qx.is_zero()) return "q(x) = 0";
  if (!(qx == qy) || !(qy == qz)) return "q(x), q(y), q(z) are not equal: " + qx.to_string() + ", " + qy.to_string() + ", " + qz.to_string();
  if (!bb.pair<G>(p.x, p.y).is_zero()) return "(x,y) != 0";
  if (!bb.pair<G>(p.y, p.z).is_zero()) return "(y,z) != 0";
  if (!bb.pair<G>(p.z, p.x).is_zero()) return "(z,x) != 0";
  return std::nullopt;
}

std::vector<DCirclePoint> sample_d_circle(const BBSpace& bb, std::size_t count, std::uint64_t seed) {
  bb.validate();
  std::vector<DCirclePoint> bases = base_points(bb);
  if (bases.empty()) throw PreconditionError("sample_d_circle: no hyperbolic plane to build a base point from");
  std::vector<DCirclePoint> out;
  for (const auto& p : bases) {
    if (out.size() == count) break;
    out.push_back(p);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-1, 1);
  std::uniform_int_distribution<int> reflections(1, 3);
  std::uniform_int_distribution<int> scalar(1, 2);
  const std::size_t budget = 1000 * (count + 1);
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt == budget) throw PreconditionError("sample_d_circle: search budget exhausted");
    DCirclePoint p = bases[attempt % bases.size()];
    const int m = reflections(rng);
    for (int t = 0; t < m; ++t) {
      Vector<G> r(bb.b2, G(0));
      for (auto& x : r) x = G(entry(rng));
      if (bb.q<G>(r).is_zero()) continue;
      p = {reflect(bb, p.x, r), reflect(bb, p.y, r), reflect(bb, p.z, r)};
    }
    const G lambda(Rational(scalar(rng)), Rational(entry(rng)));
    p = {scaled(p.x, lambda), scaled(p.y, lambda), scaled(p.z, lambda)};
    if (d_circle_violation(bb, p)) continue;
    out.push_back(std::move(p));
  }
  for (const auto& p : out)
    if (auto why = d_circle_violation(bb, p)) throw ConsistencyError("sample_d_circle: produced invalid point: " + *why);
  return out;
}

}  // namespace phodge::lefschetz
