#include <cctype>
#include <map>
#include <mutex>
#include <random>

#include "app.hpp"
#include "phodge/algebra/sym_model.hpp"
#include "phodge/error.hpp"

namespace phodge::app {

using algebra::ClassVector;
using linalg::Vector;

algebra::BBSpace builtin_space(const std::string& name) {
  if (name == "k3") return algebra::k3_space();
  if (name == "k3hilb2") return algebra::k3_hilb2_space();
  if (name == "toy-b3") return algebra::toy_b3_space();
  throw InputError("--model: unknown built-in model '" + name + "' (expected k3, k3hilb2 or toy-b3)");
}

const Model& builtin_model(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, Model> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto bb = builtin_space(name);
    auto alg = algebra::build_sym_model(bb);
    it = cache.emplace(name, Model{name, std::move(bb), std::move(alg)}).first;
  }
  return it->second;
}

Vector<Rational> parse_class(const std::string& text, std::size_t b2, const algebra::BBSpace* bb) {
  const bool named = text.find_first_of("ef") != std::string::npos;
  Vector<Rational> v(b2, Rational(0));
  if (!named) {
    std::vector<std::string> tokens(1);
    for (char ch : text) {
      if (ch == ',')
        tokens.emplace_back();
      else if (!std::isspace(static_cast<unsigned char>(ch)))
        tokens.back() += ch;
    }
    if (tokens.size() != b2)
      throw InputError("class '" + text + "' has " + std::to_string(tokens.size()) + " coordinates, b2 is " +
                       std::to_string(b2));
    for (std::size_t k = 0; k < b2; ++k) {
      try {
        v[k] = Rational::parse(tokens[k]);
      } catch (const std::exception&) {
        throw InputError("class '" + text + "': malformed rational '" + tokens[k] + "'");
      }
    }
    return v;
  }
  if (bb == nullptr) throw InputError("class '" + text + "': named generators need a quadratic-space model");
  const auto planes = algebra::hyperbolic_pairs(*bb);
  // terms: [sign][coefficient](e|f)index
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { return InputError("class '" + text + "': " + why); };
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') sign = text[pos++] == '-' ? -1 : 1;
    std::string coeff;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) coeff += text[pos++];
    if (pos >= text.size() || (text[pos] != 'e' && text[pos] != 'f')) throw fail("expected e<k> or f<k>");
    const bool is_e = text[pos++] == 'e';
    std::string index;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) index += text[pos++];
    if (index.empty()) throw fail("missing plane index");
    const std::size_t k = std::stoul(index);
    if (k < 1 || k > planes.size())
      throw fail("plane " + index + " does not exist; the model has " + std::to_string(planes.size()));
    Rational c = coeff.empty() ? Rational(1) : Rational::parse(coeff);
    if (sign < 0) c = -c;
    v[is_e ? planes[k - 1].first : planes[k - 1].second] += c;
  }
  return v;
}

ClassPair default_pair(const algebra::BBSpace& bb) {
  auto [eta_prime, beta] = perverse::default_classes(bb);
  return {{2, perverse::isotropic_relative_ample(bb, eta_prime, beta)}, {2, beta}};
}

CheckReport fujiki_check(const Model& m, std::uint64_t seed, int samples) {
  CheckReport r{"fujiki"};
  if (!m.bb) return r;
  const auto& bb = *m.bb;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int s = 0; s < samples; ++s) {
    Vector<Rational> w(bb.b2, Rational(0));
    for (auto& x : w) x = Rational(entry(rng));
    const auto top = algebra::power(m.algebra, ClassVector<Rational>{2, w}, 2 * bb.n);
    Rational want = bb.fujiki;
    for (int k = 0; k < bb.n; ++k) want *= bb.q<Rational>(w);
    const Rational got = m.algebra.integrate(top);
    if (got != want) r.fail("sample " + std::to_string(s) + ": " + got.to_string() + " != " + want.to_string());
  }
  return r;
}

CheckReport bogomolov_check(const Model& m, std::uint64_t seed, int samples) {
  CheckReport r{"bogomolov"};
  if (!m.bb) return r;
  algebra::IsotropicStream iso(*m.bb, seed);
  for (int s = 0; s < samples; ++s) {
    const auto w = iso.next();
    if (!m.bb->q<Rational>(w).is_zero()) r.fail("sample " + std::to_string(s) + " is not isotropic");
    if (!linalg::is_zero_vector<Rational>(algebra::power(m.algebra, ClassVector<Rational>{2, w}, m.bb->n + 1).coords))
      r.fail("sample " + std::to_string(s) + ": w^(n+1) != 0");
  }
  return r;
}

PerverseRun perverse_run(const algebra::GradedAlgebra& alg, const ClassPair& pair) {
  PerverseRun out;
  const auto weights = perverse::bigrading_from_weights(alg, pair.eta, pair.beta);
  out.weights_table = {alg.n(), weights.dimension_table()};
  try {
    auto primitives = perverse::bigrading_from_primitives(alg, pair.eta, pair.beta);
    const auto cmp = perverse::compare_bigradings(primitives, weights);
    out.agreement.pass = cmp.pass;
    out.agreement.violations = cmp.violations;
    out.table = {alg.n(), primitives.dimension_table()};
    out.bigrading = std::move(primitives);
  } catch (const ConsistencyError& e) {
    out.agreement.fail(e.what());
  }
  return out;
}

}  // namespace phodge::app
