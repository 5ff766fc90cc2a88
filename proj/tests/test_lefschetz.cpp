#include <doctest.h>

#include "phodge/algebra/description.hpp"
#include "phodge/lefschetz/lefschetz.hpp"
#include "test_models.hpp"

using namespace phodge;
using namespace phodge::lefschetz;
using algebra::h2_class;
using G = GaussianRational;

namespace {

Vector<Rational> h2(std::size_t b2, std::initializer_list<std::pair<std::size_t, int>> terms) {
  Vector<Rational> v(b2, Rational(0));
  for (auto [k, c] : terms) v[k] += Rational(c);
  return v;
}

ClassVector<Rational> cls(std::size_t b2, std::initializer_list<std::pair<std::size_t, int>> terms) {
  return {2, h2(b2, terms)};
}

std::vector<GradedOperator<G>> point_generators(const GradedAlgebra& alg, const DCirclePoint& p) {
  std::vector<GradedOperator<G>> ops;
  for (const auto* v : {&p.x, &p.y, &p.z}) {
    auto t = lefschetz_triple(alg, gaussian_class(*v));
    ops.push_back(t.E);
    ops.push_back(t.H);
    ops.push_back(t.F);
  }
  return ops;
}

// sl2 acting on one coordinate of a graded space with dims (2, 0, 2, 0, 2).
Sl2Triple<Rational> string_triple(std::size_t slot) {
  const std::vector<std::size_t> dims{2, 0, 2, 0, 2};
  Matrix<Rational> e(2, 2), f2(2, 2);
  e(slot, slot) = Rational(1);
  f2(slot, slot) = Rational(2);
  Sl2Triple<Rational> t{GradedOperator<Rational>(dims, 2), GradedOperator<Rational>(dims, 0),
                        GradedOperator<Rational>(dims, -2)};
  t.E.set_block(0, e);
  t.E.set_block(2, e);
  t.F.set_block(2, f2);
  t.F.set_block(4, f2);
  for (int d = 0; d <= 4; d += 2) {
    Matrix<Rational> h(2, 2);
    h(slot, slot) = Rational(d - 2);
    t.H.set_block(d, h);
  }
  return t;
}

}  // namespace

TEST_CASE("is_lefschetz_type") {
  const auto& k3 = test::k3().algebra;
  CHECK_FALSE(is_lefschetz_type(k3, cls(22, {{0, 1}})));
  CHECK(is_lefschetz_type(k3, cls(22, {{0, 1}, {1, 1}})));
  CHECK_FALSE(is_lefschetz_type(k3, k3.zero(2)));
  CHECK_FALSE(is_lefschetz_type(k3, k3.unit()));
  const auto& h = test::k3hilb2().algebra;
  CHECK(is_lefschetz_type(h, cls(23, {{0, 1}, {1, 1}})));
  CHECK(is_lefschetz_type(h, cls(23, {{22, 1}})));  // q = −2
  CHECK_FALSE(is_lefschetz_type(h, cls(23, {{0, 1}, {2, 1}})));
}

TEST_CASE("Lefschetz triples") {
  const auto& k3 = test::k3().algebra;
  auto w = cls(22, {{0, 1}, {1, 1}});
  auto t = lefschetz_triple(k3, w);
  CHECK(sl2_violations(t).empty());
  CHECK(t.F.apply(w).coords == Vector<Rational>{Rational(2)});
  CHECK(linalg::is_zero_vector<Rational>(t.F.apply(k3.unit()).coords));
  CHECK_THROWS_AS(lefschetz_triple(k3, cls(22, {{0, 1}})), PreconditionError);

  const auto& h = test::k3hilb2().algebra;
  auto th = lefschetz_triple(h, cls(23, {{0, 1}, {1, 2}, {22, 1}}));
  CHECK(bracket(th.E, th.F) == th.H);
  CHECK(bracket(th.H, th.E) == Rational(2) * th.E);
  CHECK(bracket(th.H, th.F) == Rational(-2) * th.F);
  // F lowers degree; on H^0 it lands in the zero space H^{-2}.
  CHECK(th.F.apply(h.unit()).coords.empty());
}

TEST_CASE("weight filtration: trivial and single-string cases") {
  const auto& k3 = test::k3().algebra;
  GradedOperator<Rational> zero(k3.graded_dims(), 2);
  auto w0 = weight_filtration(zero, 1);
  auto total0 = w0.total();
  CHECK(total0.at(-1).dim() == 0);
  CHECK(total0.at(0).dim() == 24);

  nlohmann::json desc = {{"n", 1}, {"graded_dims", {1, 0, 1, 0, 1}}, {"mult", {{2, 2, 0, 0, 0, 1}}}, {"integration", {1}}};
  auto tpoly = algebra::build_from_description(desc);
  auto N = GradedOperator<Rational>::cup(tpoly, tpoly.basis_vector(2, 0));
  auto ws = weight_filtration(N, 2);
  CHECK(ws.gr_dim(-2) == 1);
  CHECK(ws.gr_dim(-1) == 0);
  CHECK(ws.gr_dim(0) == 1);
  CHECK(ws.gr_dim(1) == 0);
  CHECK(ws.gr_dim(2) == 1);
  // the unit starts the string, so it carries the highest weight
  CHECK(ws.by_degree[0].at(1).dim() == 0);
  CHECK_THROWS_AS(weight_filtration(N, 1), PreconditionError);
}

TEST_CASE("weight filtration of an isotropic class on K3") {
  const auto& k3 = test::k3().algebra;
  auto N = GradedOperator<Rational>::cup(k3, cls(22, {{0, 1}}));
  auto w = weight_filtration(N, 1);
  CHECK(w.gr_dim(-1) == 2);
  CHECK(w.gr_dim(0) == 20);
  CHECK(w.gr_dim(1) == 2);

  // Independent re-check on the stacked filtration.
  auto total = w.total();
  for (int m = -1; m <= 1; ++m)
    for (const auto& v : total.at(m).basis()) CHECK(total.at(m - 2).contains(N.apply_total(v)));
  CHECK_THROWS_AS(weight_filtration(GradedOperator<Rational>::cup(k3, cls(22, {{0, 1}, {1, 1}})), 1),
                  PreconditionError);
}

TEST_CASE("weight filtration properties on K3^[2] for isotropic classes") {
  const auto& h = test::k3hilb2().algebra;
  for (auto w : {cls(23, {{0, 1}}), cls(23, {{1, 1}}), cls(23, {{0, -1}, {1, 1}, {2, 1}, {3, 1}})}) {
    auto N = GradedOperator<Rational>::cup(h, w);
    auto wf = weight_filtration(N, 2);
    std::size_t total = 0;
    for (int m = -2; m <= 2; ++m) {
      CHECK(wf.gr_dim(m) == wf.gr_dim(-m));
      total += wf.gr_dim(m);
    }
    CHECK(total == 324);
  }
}

TEST_CASE("Lie closure of small systems") {
  auto t1 = string_triple(0), t2 = string_triple(1);
  CHECK(sl2_violations(t1).empty());
  CHECK(lie_closure<Rational>({t1.E, t1.H, t1.F}).dimension == 3);
  CHECK(lie_closure<Rational>({t1.E, t1.F}).dimension == 3);
  auto both = lie_closure<Rational>({t1.E, t1.H, t1.F, t2.E, t2.H, t2.F});
  CHECK(both.dimension == 6);
  CHECK(both.dimension_by_shift.at(0) == 2);
  CHECK(lie_closure<Rational>({}).dimension == 0);
}

TEST_CASE("D° sampling") {
  auto bb = algebra::k3_space();
  auto pts = sample_d_circle(bb, 5, 0);
  REQUIRE(pts.size() == 5);
  CHECK(bb.q<G>(pts[0].x) == G(2));
  for (const auto& p : pts) CHECK_FALSE(d_circle_violation(bb, p).has_value());
  CHECK_FALSE(pts[1].z[4].is_real());

  DCirclePoint bad{pts[0].x, pts[0].x, pts[0].z};
  auto why = d_circle_violation(bb, bad);
  REQUIRE(why.has_value());
  CHECK(why->find("(x,y)") != std::string::npos);

  auto again = sample_d_circle(bb, 5, 0);
  for (std::size_t k = 0; k < 5; ++k) CHECK(again[k].y == pts[k].y);

  auto bbh = algebra::k3_hilb2_space();
  bool gaussian = false;
  for (const auto& p : sample_d_circle(bbh, 4, 7)) {
    CHECK_FALSE(d_circle_violation(bbh, p).has_value());
    for (const auto& c : p.z) gaussian = gaussian || !c.is_real();
  }
  CHECK(gaussian);

  auto toy = algebra::toy_b3_space();
  for (const auto& p : sample_d_circle(toy, 4, 1)) CHECK_FALSE(d_circle_violation(toy, p).has_value());

  algebra::BBSpace definite{3, Matrix<Rational>::identity(3), Rational(1), 1};
  CHECK_THROWS_AS(sample_d_circle(definite, 1), PreconditionError);
}

TEST_CASE("so(5) from the three triples of a D° point") {
  for (const auto* m : {&test::k3(), &test::toy_b3()}) {
    for (const auto& p : sample_d_circle(m->bb, 3, 0)) {
      auto c = lie_closure(point_generators(m->algebra, p));
      CHECK(c.dimension == 10);
    }
  }
}

TEST_CASE("Cartan bigrading on K3") {
  const auto& m = test::k3();
  auto pts = sample_d_circle(m.bb, 3, 0);
  auto bg = cartan_bigrading(m.algebra, pts[0]);
  auto table = bg.dimension_table();
  CHECK(table == std::vector<std::vector<std::size_t>>{{1, 0, 1}, {0, 20, 0}, {1, 0, 1}});
  auto unit = linalg::lift<G>(Matrix<Rational>::identity(24)).column(0);
  CHECK(bg.piece(0, 0).contains(unit));
  for (std::size_t k = 1; k < pts.size(); ++k) CHECK(cartan_bigrading(m.algebra, pts[k]).dimension_table() == table);
}

TEST_CASE("structure Lie algebra of K3 is so(24)") {
  const auto& k3 = test::k3().algebra;
  std::vector<GradedOperator<Rational>> ops;
  auto add = [&](ClassVector<Rational> w) {
    auto t = lefschetz_triple(k3, w);
    ops.push_back(t.E);
    ops.push_back(t.F);
  };
  for (std::size_t p = 0; p < 3; ++p) {
    add(cls(22, {{2 * p, 1}, {2 * p + 1, 1}}));
    add(cls(22, {{2 * p, 1}, {2 * p + 1, -1}}));
  }
  for (std::size_t k = 6; k < 22; ++k) add(cls(22, {{k, 1}}));
  auto c = lie_closure(ops);
  CHECK(c.dimension == 276);
  CHECK(c.dimension_by_shift.at(2) == 22);
  CHECK(c.dimension_by_shift.at(-2) == 22);

  auto classes = lefschetz_spanning_classes(test::k3().bb);
  REQUIRE(classes.size() == 22);
  CHECK(classes[0] == h2(22, {{0, 1}, {1, 1}}));
  CHECK(classes[1] == h2(22, {{0, -1}, {1, 1}}));
  CHECK(structure_lie_algebra(k3, test::k3().bb).dimension == 276);
}

TEST_CASE("too few Lefschetz directions give a smaller algebra") {
  const auto& k3 = test::k3().algebra;
  std::vector<GradedOperator<Rational>> ops;
  for (auto w : {cls(22, {{0, 1}, {1, 1}}), cls(22, {{0, 1}, {1, -1}}), cls(22, {{2, 1}, {3, 1}}),
                 cls(22, {{2, 1}, {3, -1}}), cls(22, {{6, 1}})}) {
    auto t = lefschetz_triple(k3, w);
    ops.push_back(t.E);
    ops.push_back(t.F);
  }
  CHECK(lie_closure(ops).dimension == 21);  // so(7)
  CHECK(structure_lie_algebra(test::toy_b3().algebra, test::toy_b3().bb).dimension == 10);
}

TEST_CASE("K3^[2]: so(5), Cartan diamond and so(25)") {
  const auto& m = test::k3hilb2();
  auto pts = sample_d_circle(m.bb, 2, 0);
  std::vector<std::vector<std::size_t>> diamond{
      {1, 0, 1, 0, 1}, {0, 21, 0, 21, 0}, {1, 0, 232, 0, 1}, {0, 21, 0, 21, 0}, {1, 0, 1, 0, 1}};
  for (const auto& p : pts) {
    CHECK(lie_closure(point_generators(m.algebra, p)).dimension == 10);
    CHECK(cartan_bigrading(m.algebra, p).dimension_table() == diamond);
  }
  std::vector<GradedOperator<Rational>> ops;
  auto add = [&](ClassVector<Rational> w) {
    auto t = lefschetz_triple(m.algebra, w);
    ops.push_back(t.E);
    ops.push_back(t.F);
  };
  for (std::size_t p = 0; p < 3; ++p) {
    add(cls(23, {{2 * p, 1}, {2 * p + 1, 1}}));
    add(cls(23, {{2 * p, 1}, {2 * p + 1, -1}}));
  }
  for (std::size_t k = 6; k < 23; ++k) add(cls(23, {{k, 1}}));
  CHECK(lie_closure(ops).dimension == 300);
}
