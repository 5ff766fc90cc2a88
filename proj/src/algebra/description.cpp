#include "phodge/algebra/description.hpp"

#include <fstream>

#include "phodge/algebra/sym_model.hpp"
#include "phodge/error.hpp"

namespace phodge::algebra {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* field) {
  if (!doc.is_object() || !doc.contains(field)) throw InputError(std::string("missing field '") + field + "'");
  return doc.at(field);
}

std::int64_t integer_field(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw InputError("field '" + field + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Rational rational_from_json(const json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("field '" + field + "' holds a malformed rational '" + value.get<std::string>() + "'");
    }
  }
  throw InputError("field '" + field + "' must be an integer or a \"p/q\" string");
}

json rational_to_json(const Rational& r) {
  if (r.is_integer()) {
    try {
      return r.to_int64();
    } catch (const std::overflow_error&) {
    }
  }
  return r.to_string();
}

BBSpace bb_space_from_json(const json& doc) {
  BBSpace bb;
  const std::int64_t b2 = integer_field(require(doc, "b2"), "b2");
  if (b2 <= 0) throw InputError("field 'b2' must be positive");
  bb.b2 = static_cast<std::size_t>(b2);
  const json& gram = require(doc, "gram");
  if (!gram.is_array() || gram.size() != bb.b2) throw InputError("field 'gram' must be a b2 x b2 array");
  bb.gram = Matrix<Rational>(bb.b2, bb.b2);
  for (std::size_t r = 0; r < bb.b2; ++r) {
    if (!gram[r].is_array() || gram[r].size() != bb.b2) throw InputError("field 'gram' must be a b2 x b2 array");
    for (std::size_t c = 0; c < bb.b2; ++c) bb.gram(r, c) = rational_from_json(gram[r][c], "gram");
  }
  bb.fujiki = doc.contains("fujiki") ? rational_from_json(doc.at("fujiki"), "fujiki") : Rational(1);
  bb.n = static_cast<int>(integer_field(require(doc, "n"), "n"));
  bb.validate();
  return bb;
}

json bb_space_to_json(const BBSpace& bb) {
  json gram = json::array();
  for (std::size_t r = 0; r < bb.b2; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < bb.b2; ++c) row.push_back(rational_to_json(bb.gram(r, c)));
    gram.push_back(row);
  }
  return {{"b2", bb.b2}, {"gram", gram}, {"fujiki", rational_to_json(bb.fujiki)}, {"n", bb.n}};
}

GradedAlgebra build_from_description(const json& doc) {
  const int n = static_cast<int>(integer_field(require(doc, "n"), "n"));
  if (n < 1) throw InputError("field 'n' must be at least 1");
  const json& gd = require(doc, "graded_dims");
  if (!gd.is_array() || gd.size() != static_cast<std::size_t>(4 * n + 1))
    throw InputError("field 'graded_dims' must list 4n+1 dimensions");
  std::vector<std::size_t> dims;
  for (const auto& x : gd) {
    const auto v = integer_field(x, "graded_dims");
    if (v < 0) throw InputError("field 'graded_dims' must be nonnegative");
    dims.push_back(static_cast<std::size_t>(v));
  }
  GradedAlgebra::Builder builder(n, dims);
  const json& mult = require(doc, "mult");
  if (!mult.is_array()) throw InputError("field 'mult' must be an array");
  for (const auto& e : mult) {
    if (!e.is_array() || e.size() != 6) throw InputError("field 'mult' entries must be [d, d', i, j, k, value]");
    const auto d = integer_field(e[0], "mult"), d2 = integer_field(e[1], "mult");
    const auto i = integer_field(e[2], "mult"), j = integer_field(e[3], "mult"), k = integer_field(e[4], "mult");
    if (d < 0 || d2 < 0 || i < 0 || j < 0 || k < 0) throw InputError("field 'mult' has a negative index");
    builder.add(static_cast<int>(d), static_cast<int>(d2), static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                static_cast<std::size_t>(k), rational_from_json(e[5], "mult"));
  }
  builder.add_unit_products();
  builder.complete_by_commutativity();
  const json& integ = require(doc, "integration");
  if (!integ.is_array()) throw InputError("field 'integration' must be an array");
  Vector<Rational> iv;
  for (const auto& x : integ) iv.push_back(rational_from_json(x, "integration"));
  builder.set_integration(std::move(iv));
  GradedAlgebra alg = std::move(builder).build();

  FrobeniusReport report = alg.validate_frobenius();
  if (!report.ok()) {
    std::string msg = "algebra description violates the Frobenius axioms:";
    for (const auto& f : report.failures) msg += "\n  " + f;
    throw ConsistencyError(msg);
  }
  return alg;
}

json describe(const GradedAlgebra& alg) {
  json mult = json::array();
  const int top = alg.top_degree();
  for (int d = 0; d <= top; ++d)
    for (int d2 = 0; d + d2 <= top; ++d2)
      for (std::size_t i = 0; i < alg.dim(d); ++i)
        for (std::size_t j = 0; j < alg.dim(d2); ++j)
          for (const auto& t : alg.terms(d, d2, i, j))
            mult.push_back({d, d2, i, j, t.index, rational_to_json(t.value)});
  json integ = json::array();
  for (const auto& x : alg.integration()) integ.push_back(rational_to_json(x));
  return {{"n", alg.n()}, {"graded_dims", alg.graded_dims()}, {"mult", mult}, {"integration", integ}};
}

json k3_cohomology_description(const BBSpace& bb) {
  json mult = json::array();
  for (std::size_t i = 0; i < bb.b2; ++i)
    for (std::size_t j = 0; j < bb.b2; ++j)
      if (!bb.gram(i, j).is_zero()) mult.push_back({2, 2, i, j, 0, rational_to_json(bb.gram(i, j))});
  return {{"n", 1}, {"graded_dims", {1, 0, bb.b2, 0, 1}}, {"mult", mult}, {"integration", {1}},
          {"gram", bb_space_to_json(bb)["gram"]}, {"fujiki", 1}};
}

LoadedModel load_model_json(const json& doc) {
  if (!doc.is_object()) throw InputError("model file must hold a JSON object");
  if (doc.contains("graded_dims")) {
    LoadedModel m{build_from_description(doc), std::nullopt};
    if (doc.contains("gram")) {
      json bbdoc = {{"b2", m.algebra.dim(2)}, {"gram", doc.at("gram")}, {"n", m.algebra.n()}};
      if (doc.contains("fujiki")) bbdoc["fujiki"] = doc.at("fujiki");
      m.bb = bb_space_from_json(bbdoc);
    }
    return m;
  }
  BBSpace bb = bb_space_from_json(doc);
  return {build_sym_model(bb), bb};
}

LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return load_model_json(doc);
}

}  // namespace phodge::algebra
