#pragma once

#include <array>
#include <cstdint>
#include <json.hpp>
#include <vector>

#include "phodge/perverse/perverse.hpp"

namespace phodge::fibration {

using perverse::PerverseTable;
using perverse::Table;

/// An elliptic surface X over a genus-g curve Y, seen through the data the
/// decomposition theorem consumes: Betti numbers of X, the component counts n_y
/// of the singular fibers and h⁰(Y, j_*R¹).
struct SurfaceFibrationData {
  int base_genus = 0;
  std::array<std::int64_t, 5> betti{};
  std::vector<std::int64_t> fiber_components;
  std::int64_t invariant_rank = 0;

  /// Σ_y (n_y − 1).
  std::int64_t reducible_excess() const;
};

/// Throws InputError naming the field unless g ≥ 0, b₀ = b₄ = 1, b₁ = b₃,
/// every n_y ≥ 1 and the invariant rank is nonnegative.
void validate(const SurfaceFibrationData& data);

/// Reads {"base_genus", "betti", "fiber_components", "invariant_rank"}; the last two default to empty and 0.
SurfaceFibrationData fibration_from_json(const nlohmann::json& doc);
nlohmann::json fibration_to_json(const SurfaceFibrationData& data);

/// The middle row split along Rπ_*ℚ = ℚ_Y ⊕ j_*R¹[−1] ⊕ ℚ_Y[−2] ⊕ ⊕_y ℚ_y^{n_y−1}[−2]:
/// ph^{1,j} = h^j(Y, j_*R¹), plus Σ(n_y − 1) at j = 1.
struct MiddleDecomposition {
  std::int64_t h0 = 0, h1 = 0, h2 = 0;
  std::int64_t skyscraper = 0;
};

/// Rows i = 0, 2 are (1, 2g, 1); row 1 is forced by the Betti numbers.
/// Throws InputError on a negative entry.
PerverseTable perverse_numbers_surface(const SurfaceFibrationData& data);

/// h² is taken equal to h⁰ (the local system is self-dual), h¹ is what the middle
/// entry leaves after the skyscraper part. Throws InputError when h¹ would be
/// negative or when the invariant rank disagrees with ph^{1,0}.
MiddleDecomposition middle_decomposition(const SurfaceFibrationData& data);

/// ℓh^{0,•} = (1, 2g, 1), ℓh^{2,•} = (1 + Σ(n_y − 1), 2g, 1), row 1 from the sum
/// rule. Not symmetric in general. Throws InputError on a negative entry.
Table leray_numbers_surface(const SurfaceFibrationData& data);

}  // namespace phodge::fibration
