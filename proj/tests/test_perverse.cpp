#include <doctest.h>

#include <random>

#include "phodge/algebra/description.hpp"
#include "phodge/perverse/perverse.hpp"
#include "test_models.hpp"

using namespace phodge;
using namespace phodge::perverse;
using algebra::h2_class;

namespace {

// Hodge diamonds frozen from an independent series expansion (see tests/oracles).
const Table kK3Diamond{{1, 0, 1}, {0, 20, 0}, {1, 0, 1}};
const Table kK3Hilb2Diamond{
    {1, 0, 1, 0, 1}, {0, 21, 0, 21, 0}, {1, 0, 232, 0, 1}, {0, 21, 0, 21, 0}, {1, 0, 1, 0, 1}};

struct Pair {
  ClassVector<Rational> eta, beta;
};

Pair default_pair(const test::Model& m) {
  auto [eta_prime, beta] = default_classes(m.bb);
  return {h2_class<Rational>(isotropic_relative_ample(m.bb, eta_prime, beta)), h2_class<Rational>(beta)};
}

Vector<Rational> vec(std::size_t b2, std::initializer_list<std::pair<std::size_t, int>> terms) {
  Vector<Rational> v(b2, Rational(0));
  for (auto [k, c] : terms) v[k] += Rational(c);
  return v;
}

const Bigrading<Rational>& k3_bigrading() {
  static const auto bg = [] {
    auto p = default_pair(test::k3());
    return perverse_bigrading(test::k3().algebra, p.eta, p.beta);
  }();
  return bg;
}

const Bigrading<Rational>& k3hilb2_bigrading() {
  static const auto bg = [] {
    auto p = default_pair(test::k3hilb2());
    return perverse_bigrading(test::k3hilb2().algebra, p.eta, p.beta);
  }();
  return bg;
}

}  // namespace

TEST_CASE("isotropic relative ample class") {
  const auto bb = algebra::k3_space();
  // q(η′) = 0 already
  auto beta = vec(22, {{0, 1}});
  CHECK(isotropic_relative_ample(bb, vec(22, {{1, 1}}), beta) == vec(22, {{1, 1}}));
  // q(η′) = 4, (η′,β) = 1: λ = −2
  auto eta = isotropic_relative_ample(bb, vec(22, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}), beta);
  CHECK(eta == vec(22, {{0, -1}, {1, 1}, {2, 1}, {3, 1}}));
  CHECK(bb.q<Rational>(eta).is_zero());
  // η′ = e + f, β = f: λ = −1, η = e
  CHECK(isotropic_relative_ample(bb, vec(22, {{0, 1}, {1, 1}}), vec(22, {{1, 1}})) == vec(22, {{0, 1}}));
  CHECK_THROWS_AS(isotropic_relative_ample(bb, vec(22, {{2, 1}}), beta), PreconditionError);
  CHECK_THROWS_AS(isotropic_relative_ample(bb, vec(22, {{1, 1}}), vec(22, {{0, 1}, {1, 1}})), PreconditionError);

  auto [ep, b] = default_classes(bb);
  CHECK(b == beta);
  CHECK(ep == vec(22, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
}

TEST_CASE("primitive pieces") {
  for (const auto* m : {&test::k3(), &test::k3hilb2(), &test::toy_b3()}) {
    auto p = default_pair(*m);
    auto V = primitive_pieces(m->algebra, p.eta, p.beta);
    CHECK(V.at({0, 0}).dim() == 1);
    CHECK(V.at({0, 0}).contains(m->algebra.unit().coords));
  }
  auto p = default_pair(test::k3());
  auto V = primitive_pieces(test::k3().algebra, p.eta, p.beta);
  CHECK(V.at({1, 1}).dim() == 20);
  CHECK(V.at({0, 1}).dim() == 0);
  CHECK(V.at({1, 0}).dim() == 0);

  auto ph = default_pair(test::k3hilb2());
  auto Vh = primitive_pieces(test::k3hilb2().algebra, ph.eta, ph.beta);
  CHECK(Vh.at({1, 1}).dim() == 21);
  // ph^{2,2} = dim V^{2,2} + dim ηβ V^{0,0}
  CHECK(Vh.at({2, 2}).dim() == 231);
  CHECK(Vh.at({2, 0}).dim() == 0);
}

TEST_CASE("primitive decomposition failure is reported with the deficit") {
  // Degree 4 carries a second class that no η,β-string reaches.
  algebra::GradedAlgebra::Builder b(1, {1, 0, 2, 0, 2});
  b.add(2, 2, 0, 1, 0, Rational(1));
  b.add(2, 2, 1, 0, 0, Rational(1));
  b.add_unit_products();
  b.set_integration({Rational(1), Rational(0)});
  auto alg = std::move(b).build();
  auto s = alg.basis_vector(2, 0), t = alg.basis_vector(2, 1);
  try {
    primitive_pieces(alg, s, t);
    FAIL("expected a ConsistencyError");
  } catch (const ConsistencyError& e) {
    std::string msg = e.what();
    CHECK(msg.find("degree 4") != std::string::npos);
    CHECK(msg.find("deficit 1") != std::string::npos);
  }
}

TEST_CASE("precondition failures abort before any rank computation") {
  nlohmann::json desc = {{"n", 1}, {"graded_dims", {1, 0, 1, 0, 1}}, {"mult", {{2, 2, 0, 0, 0, 1}}}, {"integration", {1}}};
  auto tpoly = algebra::build_from_description(desc);
  auto t = tpoly.basis_vector(2, 0);
  CHECK_THROWS_AS(perverse_bigrading(tpoly, t, t), PreconditionError);

  const auto& k3 = test::k3();
  auto e1 = h2_class<Rational>(vec(22, {{0, 1}}));
  auto e2 = h2_class<Rational>(vec(22, {{2, 1}}));
  CHECK_THROWS_AS(perverse_bigrading(k3.algebra, e1, e2), PreconditionError);  // (η,β) = 0
  CHECK_THROWS_AS(perverse_bigrading(k3.algebra, h2_class<Rational>(vec(22, {{0, 1}, {1, 1}})), e1), PreconditionError);
}

TEST_CASE("K3 perverse table and route agreement") {
  const auto& m = test::k3();
  auto p = default_pair(m);
  auto a = bigrading_from_primitives(m.algebra, p.eta, p.beta);
  auto b = bigrading_from_weights(m.algebra, p.eta, p.beta);
  CHECK(compare_bigradings(a, b).pass);
  auto pt = perverse_numbers(k3_bigrading());
  CHECK(pt.entries == kK3Diamond);
  CHECK(table_to_csv(pt.entries) == "1,0,1\n0,20,0\n1,0,1\n");

  const auto& bg = k3_bigrading();
  CHECK(bg.piece(0, 0).contains(m.algebra.to_total(m.algebra.unit())));
  CHECK(bg.piece(2, 2).contains(m.algebra.to_total(m.algebra.fundamental_class())));
  CHECK(bg.piece(2, 0).contains(m.algebra.to_total(p.eta)));
  CHECK(bg.piece(0, 2).contains(m.algebra.to_total(p.beta)));
}

TEST_CASE("K3^[2] perverse table equals the Hilbert-scheme Hodge diamond") {
  const auto& m = test::k3hilb2();
  auto pt = perverse_numbers(k3hilb2_bigrading());
  CHECK(pt.entries == kK3Hilb2Diamond);
  CHECK(compare_hodge(pt, {2, kK3Hilb2Diamond}).pass);
  CHECK(check_sum_rule(pt.entries, m.algebra.graded_dims()).pass);
  CHECK(check_base_fiber_pattern(pt).pass);
  CHECK(check_transpose_symmetry(pt.entries).pass);
}

TEST_CASE("toy model table") {
  const auto& m = test::toy_b3();
  auto p = default_pair(m);
  auto pt = perverse_numbers(perverse_bigrading(m.algebra, p.eta, p.beta));
  CHECK(pt.entries == Table{{1, 0, 1}, {0, 1, 0}, {1, 0, 1}});
}

TEST_CASE("compare_hodge and the base/fiber pattern") {
  PerverseTable k3{1, kK3Diamond};
  CHECK(compare_hodge(k3, {1, kK3Diamond}).pass);
  PerverseTable res{1, {{1, 0, 1}, {0, 8, 0}, {1, 0, 1}}};
  auto r = compare_hodge(res, {1, {{1, 0, 1}, {0, 10, 0}, {1, 0, 1}}});
  CHECK_FALSE(r.pass);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0] == "(1,1): 8 vs 10");
  CHECK(check_base_fiber_pattern(k3).pass);
  CHECK(check_base_fiber_pattern(res).pass);
  CHECK_FALSE(check_base_fiber_pattern({1, {{1, 0, 1}, {1, 20, 0}, {1, 0, 1}}}).pass);
  CHECK_FALSE(compare_hodge(k3, {2, kK3Hilb2Diamond}).pass);
}

TEST_CASE("table property checks") {
  CHECK(check_table_symmetry(kK3Hilb2Diamond).pass);
  CHECK_FALSE(check_table_symmetry({{1, 0, 1}, {0, 20, 1}, {1, 0, 1}}).pass);
  CHECK(check_sum_rule(kK3Diamond, {1, 0, 22, 0, 1}).pass);
  CHECK_FALSE(check_sum_rule(kK3Diamond, {1, 0, 21, 0, 1}).pass);
  CHECK(table_to_markdown({{1, 0}, {0, 1}}) == "| i\\j | 0 | 1 |\n|---|---|---|\n| 0 | 1 | 0 |\n| 1 | 0 | 1 |\n");
}

TEST_CASE("multiplicativity, duality and filtration on K3 and K3^[2]") {
  {
    const auto& m = test::k3();
    auto p = default_pair(m);
    CHECK(check_multiplicativity(m.algebra, k3_bigrading()).violations.empty());
    CHECK(check_duality(m.algebra, k3_bigrading()).violations.empty());
    CHECK(check_filtration(m.algebra, k3_bigrading(), p.eta, p.beta).pass);
  }
  {
    const auto& m = test::k3hilb2();
    auto p = default_pair(m);
    CHECK(check_multiplicativity(m.algebra, k3hilb2_bigrading()).violations.empty());
    CHECK(check_duality(m.algebra, k3hilb2_bigrading()).violations.empty());
    CHECK(check_filtration(m.algebra, k3hilb2_bigrading(), p.eta, p.beta).pass);
  }
}

TEST_CASE("corrupted bigradings are caught") {
  const auto& m = test::k3();
  auto p = default_pair(m);
  // Exchanging (2,0) and (0,2) is the bigrading of the swapped pair: multiplicative,
  // but not adapted to the filtration of η.
  auto swapped = k3_bigrading();
  std::swap(swapped.pieces.at({2, 0}), swapped.pieces.at({0, 2}));
  CHECK(check_multiplicativity(m.algebra, swapped).pass);
  CHECK_FALSE(check_filtration(m.algebra, swapped, p.eta, p.beta).pass);

  auto shifted = k3_bigrading();
  std::swap(shifted.pieces.at({0, 0}), shifted.pieces.at({2, 0}));
  CHECK_FALSE(check_multiplicativity(m.algebra, shifted).pass);
  CHECK_FALSE(compare_bigradings(swapped, k3_bigrading()).pass);

  // Moving the point class into (1,1) breaks orthogonality with (1,1) itself.
  auto moved = k3_bigrading();
  std::swap(moved.pieces.at({2, 2}), moved.pieces.at({0, 0}));
  CHECK_FALSE(check_duality(m.algebra, moved).pass);
}

TEST_CASE("swapping eta and beta transposes the table") {
  const auto& m = test::k3hilb2();
  auto p = default_pair(m);
  auto swapped = perverse_numbers(perverse_bigrading(m.algebra, p.beta, p.eta));
  auto straight = perverse_numbers(k3hilb2_bigrading());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(swapped.entries[i][j] == straight.entries[j][i]);
}

TEST_CASE("perverse numbers do not depend on the isotropic pair") {
  const auto& m = test::k3();
  algebra::IsotropicStream iso(m.bb, 11);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-2, 2);
  int tried = 0;
  while (tried < 6) {
    auto beta = iso.next();
    Vector<Rational> eta_prime(22);
    for (auto& x : eta_prime) x = Rational(entry(rng));
    if (m.bb.pair<Rational>(eta_prime, beta).is_zero()) continue;
    auto eta = isotropic_relative_ample(m.bb, eta_prime, beta);
    auto bg = perverse_bigrading(m.algebra, h2_class<Rational>(eta), h2_class<Rational>(beta));
    CHECK(perverse_numbers(bg).entries == kK3Diamond);
    ++tried;
  }
}
