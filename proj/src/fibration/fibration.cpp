#include "phodge/fibration/fibration.hpp"

#include <string>

#include "phodge/error.hpp"

namespace phodge::fibration {

namespace {

using nlohmann::json;

std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw InputError("field '" + field + "' must be an integer");
  return v.get<std::int64_t>();
}

std::size_t entry(std::int64_t v, const char* what, int i, int j) {
  if (v < 0)
    throw InputError(std::string(what) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                     std::to_string(v) + " is negative; the fibration data are inconsistent");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::int64_t SurfaceFibrationData::reducible_excess() const {
  std::int64_t s = 0;
  for (auto c : fiber_components) s += c - 1;
  return s;
}

void validate(const SurfaceFibrationData& d) {
  if (d.base_genus < 0) throw InputError("base_genus must be nonnegative");
  for (auto b : d.betti)
    if (b < 0) throw InputError("betti: Betti numbers must be nonnegative");
  if (d.betti[0] != 1 || d.betti[4] != 1) throw InputError("betti: b0 and b4 must equal 1");
  if (d.betti[1] != d.betti[3]) throw InputError("betti: b1 and b3 differ");
  for (auto c : d.fiber_components)
    if (c < 1) throw InputError("fiber_components: every fiber has at least one component");
  if (d.invariant_rank < 0) throw InputError("invariant_rank must be nonnegative");
}

SurfaceFibrationData fibration_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("fibration data must be a JSON object");
  for (const char* f : {"base_genus", "betti"})
    if (!doc.contains(f)) throw InputError(std::string("missing field '") + f + "'");
  SurfaceFibrationData d;
  d.base_genus = static_cast<int>(integer(doc.at("base_genus"), "base_genus"));
  const json& b = doc.at("betti");
  if (!b.is_array() || b.size() != 5) throw InputError("field 'betti' must list five integers");
  for (std::size_t k = 0; k < 5; ++k) d.betti[k] = integer(b[k], "betti");
  if (doc.contains("fiber_components")) {
    const json& f = doc.at("fiber_components");
    if (!f.is_array()) throw InputError("field 'fiber_components' must be an array");
    for (const auto& c : f) d.fiber_components.push_back(integer(c, "fiber_components"));
  }
  if (doc.contains("invariant_rank")) d.invariant_rank = integer(doc.at("invariant_rank"), "invariant_rank");
  validate(d);
  return d;
}

json fibration_to_json(const SurfaceFibrationData& d) {
  return {{"base_genus", d.base_genus},
          {"betti", d.betti},
          {"fiber_components", d.fiber_components},
          {"invariant_rank", d.invariant_rank}};
}

PerverseTable perverse_numbers_surface(const SurfaceFibrationData& d) {
  validate(d);
  const std::int64_t g2 = 2 * d.base_genus;
  const std::array<std::int64_t, 3> outer{1, g2, 1};
  PerverseTable pt{1, Table(3, std::vector<std::size_t>(3, 0))};
  for (int j = 0; j < 3; ++j) pt.entries[0][j] = pt.entries[2][j] = static_cast<std::size_t>(outer[j]);
  for (int j = 0; j < 3; ++j) {
    const std::int64_t above = j + 1 <= 2 ? outer[j + 1] : 0;
    const std::int64_t below = j - 1 >= 0 ? outer[j - 1] : 0;
    pt.entries[1][j] = entry(d.betti[j + 1] - above - below, "perverse", 1, j);
  }
  return pt;
}

MiddleDecomposition middle_decomposition(const SurfaceFibrationData& d) {
  const auto pt = perverse_numbers_surface(d);
  const auto row = pt.entries[1];
  if (static_cast<std::int64_t>(row[0]) != d.invariant_rank)
    throw InputError("invariant_rank = " + std::to_string(d.invariant_rank) + " but the Betti numbers force ph(1,0) = " +
                     std::to_string(row[0]));
  MiddleDecomposition m;
  m.h0 = m.h2 = d.invariant_rank;
  m.skyscraper = d.reducible_excess();
  m.h1 = static_cast<std::int64_t>(row[1]) - m.skyscraper;
  if (m.h1 < 0)
    throw InputError("fiber_components: sum of (n_y - 1) = " + std::to_string(m.skyscraper) + " exceeds ph(1,1) = " +
                     std::to_string(row[1]));
  return m;
}

Table leray_numbers_surface(const SurfaceFibrationData& d) {
  validate(d);
  const std::int64_t g2 = 2 * d.base_genus, excess = d.reducible_excess();
  Table t(3, std::vector<std::size_t>(3, 0));
  t[0] = {1, static_cast<std::size_t>(g2), 1};
  t[2] = {entry(1 + excess, "Leray", 2, 0), static_cast<std::size_t>(g2), 1};
  t[1][0] = entry(d.betti[1] - g2, "Leray", 1, 0);
  t[1][1] = entry(d.betti[2] - 1 - (1 + excess), "Leray", 1, 1);
  t[1][2] = entry(d.betti[3] - g2, "Leray", 1, 2);
  return t;
}

}  // namespace phodge::fibration
