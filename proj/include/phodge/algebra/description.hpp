#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "phodge/algebra/bb_space.hpp"
#include "phodge/algebra/graded_algebra.hpp"

namespace phodge::algebra {

/// Parses an exact rational from a JSON integer or a "p/q" string.
Rational rational_from_json(const nlohmann::json& value, const std::string& field);
nlohmann::json rational_to_json(const Rational& r);

/// Reads {"b2", "gram", "fujiki", "n"}.
BBSpace bb_space_from_json(const nlohmann::json& doc);
nlohmann::json bb_space_to_json(const BBSpace& bb);

/// Builds and validates an algebra from
/// {"n", "graded_dims", "mult": [[d, d', i, j, k, value], ...], "integration": [...]}.
///
/// Products with the unit e_0 ∈ H^0 may be omitted, as may the mirrored
/// ordering (d', d) of any degree pair given only once. Throws InputError for
/// malformed fields and ConsistencyError naming the offending basis tuple
/// when an algebra axiom fails.
GradedAlgebra build_from_description(const nlohmann::json& doc);

/// Writes every nonzero structure constant; the inverse of build_from_description.
nlohmann::json describe(const GradedAlgebra& alg);

/// Description of H*(K3) read off a Gram matrix: (e_i·e_j) = (e_i, e_j)·pt, ∫pt = 1.
nlohmann::json k3_cohomology_description(const BBSpace& bb);

struct LoadedModel {
  GradedAlgebra algebra;
  std::optional<BBSpace> bb;
};

/// Reads a description or BB-space file; the presence of "graded_dims" selects the former.
LoadedModel load_model_json(const nlohmann::json& doc);
LoadedModel load_model_file(const std::string& path);

}  // namespace phodge::algebra
