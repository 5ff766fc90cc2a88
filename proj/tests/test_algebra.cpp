#include <doctest.h>

#include <random>

#include "phodge/algebra/description.hpp"
#include "phodge/algebra/sym_model.hpp"
#include "test_models.hpp"

using namespace phodge;
using namespace phodge::algebra;
using nlohmann::json;

namespace {

json truncated_poly(int n, const json& mult) {
  json dims = json::array();
  for (int d = 0; d <= 4 * n; ++d) dims.push_back(d % 2 == 0 ? 1 : 0);
  return {{"n", n}, {"graded_dims", dims}, {"mult", mult}, {"integration", {1}}};
}

Vector<Rational> random_h2(std::mt19937_64& rng, std::size_t b2) {
  std::uniform_int_distribution<int> entry(-3, 3);
  Vector<Rational> v(b2);
  for (auto& x : v) x = Rational(entry(rng));
  return v;
}

Rational pow(Rational x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("truncated polynomial ring Q[t]/(t^3)") {
  GradedAlgebra alg = build_from_description(truncated_poly(1, {{2, 2, 0, 0, 0, 1}}));
  CHECK(alg.total_dim() == 3);
  CHECK(alg.validate_frobenius().ok());
  auto t = alg.basis_vector(2, 0);
  CHECK(alg.integrate(alg.multiply(t, t)) == Rational(1));
  CHECK_THROWS_AS(alg.multiply(alg.multiply(t, t), t), PreconditionError);
}

TEST_CASE("non-associative description names the triple") {
  // t·t = t², t·t² = t³, t²·t² = t⁴ but t·t³ = 2t⁴.
  json mult = {{2, 2, 0, 0, 0, 1}, {2, 4, 0, 0, 0, 1}, {4, 4, 0, 0, 0, 1}, {2, 6, 0, 0, 0, 2}};
  try {
    build_from_description(truncated_poly(2, mult));
    FAIL("expected a ConsistencyError");
  } catch (const ConsistencyError& e) {
    std::string msg = e.what();
    CHECK(msg.find("associativity fails") != std::string::npos);
    CHECK(msg.find("e0@deg2") != std::string::npos);
  }
}

TEST_CASE("description errors name the field") {
  json doc = truncated_poly(1, {{2, 2, 0, 0, 0, 1}});
  doc.erase("integration");
  CHECK_THROWS_WITH_AS(build_from_description(doc), "missing field 'integration'", InputError);
  json bad = truncated_poly(1, {{2, 2, 0, 0, 0, "1/x"}});
  CHECK_THROWS_AS(build_from_description(bad), InputError);
  json oob = truncated_poly(1, {{2, 2, 0, 3, 0, 1}});
  CHECK_THROWS_AS(build_from_description(oob), InputError);
}

TEST_CASE("H*(K3) from its Gram matrix") {
  BBSpace bb = k3_space();
  GradedAlgebra desc = build_from_description(k3_cohomology_description(bb));
  CHECK(desc.total_dim() == 24);
  CHECK(desc.graded_dims() == std::vector<std::size_t>{1, 0, 22, 0, 1});
  CHECK(desc.pairing_matrix(2) == bb.gram);
}

TEST_CASE("sym model graded dimensions") {
  const auto& k3 = test::k3();
  CHECK(k3.algebra.graded_dims() == std::vector<std::size_t>{1, 0, 22, 0, 1});
  const auto& k3h = test::k3hilb2();
  CHECK(k3h.algebra.graded_dims() == std::vector<std::size_t>{1, 0, 23, 0, 276, 0, 23, 0, 1});
  CHECK(k3h.algebra.total_dim() == 324);
  const auto& toy = test::toy_b3();
  CHECK(toy.algebra.graded_dims() == std::vector<std::size_t>{1, 0, 3, 0, 1});
}

TEST_CASE("sym model products and integration") {
  const auto& m = test::k3();
  const auto& alg = m.algebra;
  auto x = alg.basis_vector(2, 5);
  CHECK(alg.multiply(alg.unit(), x).coords == x.coords);

  // e = basis vector 0 is isotropic: e·e = 0.
  auto e = alg.basis_vector(2, 0);
  CHECK(linalg::is_zero_vector<Rational>(alg.multiply(e, e).coords));

  std::mt19937_64 rng(3);
  for (int s = 0; s < 10; ++s) {
    auto u = random_h2(rng, 22), v = random_h2(rng, 22);
    CHECK(alg.integrate(alg.multiply(h2_class<Rational>(u), h2_class<Rational>(v))) == m.bb.pair<Rational>(u, v));
  }

  CHECK(alg.integrate(alg.zero(4)) == Rational(0));
  Vector<Rational> w(22, Rational(0));
  w[0] = w[1] = Rational(1);  // e1 + f1, q = 2
  auto wc = h2_class<Rational>(w);
  CHECK(alg.integrate(alg.multiply(wc, wc)) == Rational(2));
  CHECK_THROWS_AS(alg.integrate(wc), PreconditionError);

  const auto& h = test::k3hilb2();
  Vector<Rational> w2(23, Rational(0));
  w2[0] = w2[1] = Rational(1);
  CHECK(h.algebra.integrate(power(h.algebra, h2_class<Rational>(w2), 4)) == Rational(12));
}

TEST_CASE("pairing matrices") {
  const auto& m = test::k3();
  auto p0 = m.algebra.pairing_matrix(0);
  CHECK(p0.rows() == 1);
  CHECK(p0.cols() == 1);
  CHECK(p0(0, 0) == Rational(1));
  CHECK(m.algebra.pairing_matrix(2) == m.bb.gram);
  for (int d = 0; d <= 8; d += 2) {
    auto p = test::k3hilb2().algebra.pairing_matrix(d);
    CHECK(linalg::rank(p) == p.rows());
  }
}

TEST_CASE("validate_frobenius") {
  CHECK(test::k3().algebra.validate_frobenius().ok());
  CHECK(test::toy_b3().algebra.validate_frobenius().ok());
  auto report = test::k3hilb2().algebra.validate_frobenius();
  CHECK(report.ok());
  CHECK(build_from_description(truncated_poly(1, {{2, 2, 0, 0, 0, 1}})).validate_frobenius().ok());

  GradedAlgebra::Builder b(1, {1, 0, 1, 0, 1});
  b.add(2, 2, 0, 0, 0, Rational(1));
  b.add_unit_products();
  b.set_integration({Rational(0)});
  auto zeroed = std::move(b).build().validate_frobenius();
  CHECK_FALSE(zeroed.pairing);
  CHECK(zeroed.associative);
  CHECK(zeroed.commutative);
  CHECK(zeroed.unit);
}

TEST_CASE("Fujiki identity and Bogomolov vanishing on every built-in model") {
  for (const auto* m : {&test::k3(), &test::k3hilb2(), &test::toy_b3()}) {
    const int n = m->bb.n;
    std::mt19937_64 rng(42);
    for (int s = 0; s < 50; ++s) {
      auto w = random_h2(rng, m->bb.b2);
      auto top = power(m->algebra, h2_class<Rational>(w), 2 * n);
      CHECK(m->algebra.integrate(top) == m->bb.fujiki * pow(m->bb.q<Rational>(w), n));
    }
    IsotropicStream iso(m->bb, 99);
    for (int s = 0; s < 50; ++s) {
      auto w = iso.next();
      REQUIRE(m->bb.q<Rational>(w).is_zero());
      CHECK(linalg::is_zero_vector<Rational>(power(m->algebra, h2_class<Rational>(w), n + 1).coords));
    }
  }
}

TEST_CASE("sym model of K3 is isomorphic to the direct description") {
  const auto& sym = test::k3().algebra;
  GradedAlgebra desc = build_from_description(k3_cohomology_description(k3_space()));
  // Candidate isomorphism: identity on H^0 and H^2, and on H^4 the scalar fixed by ∫.
  const Rational scale = sym.integration()[0] / desc.integration()[0];
  for (std::size_t i = 0; i < 22; ++i)
    for (std::size_t j = 0; j < 22; ++j) {
      auto a = sym.multiply(sym.basis_vector(2, i), sym.basis_vector(2, j));
      auto b = desc.multiply(desc.basis_vector(2, i), desc.basis_vector(2, j));
      CHECK(a.coords[0] == scale * b.coords[0]);
    }
}

TEST_CASE("isotropic ideal rank stabilises at the expected codimension") {
  auto k3 = isotropic_ideal_rank(k3_space());
  CHECK(k3.ambient == 253);
  CHECK(k3.expected == 252);
  CHECK(k3.upper_bound == 252);
  CHECK(k3.certified());
  CHECK(k3.matches());
  auto toy = isotropic_ideal_rank(toy_b3_space());
  CHECK(toy.expected == 5);
  CHECK(toy.matches());
}

TEST_CASE("BB space validation and JSON round trip") {
  BBSpace bb = toy_b3_space();
  BBSpace back = bb_space_from_json(bb_space_to_json(bb));
  CHECK(back.gram == bb.gram);
  CHECK(back.fujiki == bb.fujiki);

  BBSpace degenerate = bb;
  degenerate.gram(2, 2) = Rational(0);
  CHECK_THROWS_AS(degenerate.validate(), InputError);
  BBSpace no_c = bb;
  no_c.fujiki = Rational(0);
  CHECK_THROWS_AS(no_c.validate(), InputError);

  // A definite form has no rational isotropic vector.
  BBSpace definite{3, Matrix<Rational>::identity(3), Rational(1), 1};
  CHECK_FALSE(find_isotropic(definite).has_value());
  CHECK_THROWS_AS(build_sym_model(definite), PreconditionError);
}
