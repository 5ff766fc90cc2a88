#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phodge/algebra/bb_space.hpp"
#include "phodge/lefschetz/lefschetz.hpp"

namespace phodge::perverse {

using algebra::BBSpace;
using algebra::ClassVector;
using algebra::GradedAlgebra;
using lefschetz::Bigrading;
using linalg::Rational;
using linalg::Subspace;
using linalg::Vector;

using Table = std::vector<std::vector<std::size_t>>;

/// η = η′ + λβ with λ = −q(η′)/(2(η′,β)), the unique isotropic point on the line.
/// Throws PreconditionError unless q(β) = 0 and (η′,β) ≠ 0.
Vector<Rational> isotropic_relative_ample(const BBSpace& bb, const Vector<Rational>& eta_prime,
                                          const Vector<Rational>& beta);

/// β = e of the first hyperbolic plane, η′ = Σ (e_k + f_k) over the first two planes
/// (or the only one). Throws PreconditionError when the Gram matrix shows no hyperbolic plane.
std::pair<Vector<Rational>, Vector<Rational>> default_classes(const BBSpace& bb);

/// Throws PreconditionError unless η, β have degree 2, η^{n+1} = β^{n+1} = 0 and ∫η^nβ^n ≠ 0.
/// For classes in a sym model these are equivalent to q(η) = q(β) = 0 and (η,β) ≠ 0.
void check_isotropic_pair(const GradedAlgebra& alg, const ClassVector<Rational>& eta, const ClassVector<Rational>& beta);

/// V^{i,j} = ker η^{n−i+1} ∩ ker β^{n−j+1} inside H^{i+j}, for 0 ≤ i, j ≤ n, in
/// degree coordinates. Throws ConsistencyError naming the degree and the
/// deficit when the strings η^a β^b V^{i,j} fail to be independent or to span.
std::map<std::pair<int, int>, Subspace<Rational>> primitive_pieces(const GradedAlgebra& alg,
                                                                   const ClassVector<Rational>& eta,
                                                                   const ClassVector<Rational>& beta);

/// Piece (i+2a, j+2b) = η^a β^b V^{i,j}.
Bigrading<Rational> bigrading_from_primitives(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                              const ClassVector<Rational>& beta);

/// Piece (i, j) = W_{n−i}(η) ∩ W_{n−j}(β) ∩ H^{i+j}, weight filtrations in the
/// convention of lefschetz::weight_filtration.
Bigrading<Rational> bigrading_from_weights(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                           const ClassVector<Rational>& beta);

/// Both constructions; throws ConsistencyError naming the first piece on which they differ.
Bigrading<Rational> perverse_bigrading(const GradedAlgebra& alg, const ClassVector<Rational>& eta,
                                       const ClassVector<Rational>& beta);

/// ph^{i,j} with rows i; entries are (2n+1)×(2n+1).
struct PerverseTable {
  int n = 0;
  Table entries;
};

struct HodgeDiamond {
  int n = 0;
  Table entries;
};

/// Dimensions of the pieces. Throws ConsistencyError when ph^{i,j} = ph^{2n−i,j} = ph^{i,2n−j} fails.
PerverseTable perverse_numbers(const Bigrading<Rational>& bg);

/// Outcome of a report-valued check; `violations` holds human-readable findings in index order.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string check) : name(std::move(check)) {}

  std::string name;
  bool pass = true;
  std::vector<std::string> violations;
  void fail(std::string why) {
    pass = false;
    violations.push_back(std::move(why));
  }
};

/// Entrywise comparison; one violation per mismatching entry, formatted "(i,j): p vs h".
CheckReport compare_hodge(const PerverseTable& pt, const HodgeDiamond& hd);

/// Symmetries in both indices; reported rather than thrown.
CheckReport check_table_symmetry(const Table& t);
/// ph^{i,j} = ph^{j,i}.
CheckReport check_transpose_symmetry(const Table& t);
/// Σ_{i+j=k} t^{i,j} = betti[k].
CheckReport check_sum_rule(const Table& t, const std::vector<std::size_t>& betti);
/// Row i = 0 and column j = 0 read 1, 0, 1, 0, …, 1.
CheckReport check_base_fiber_pattern(const PerverseTable& pt);

/// Every product of basis vectors of pieces (i,j) and (i′,j′) lies in piece (i+i′, j+j′).
CheckReport check_multiplicativity(const GradedAlgebra& alg, const Bigrading<Rational>& bg);

/// ∫ab = 0 for a ∈ (i,j), b ∈ (i′,j′) unless (i+i′, j+j′) = (2n,2n); nondegenerate on complementary pairs.
CheckReport check_duality(const GradedAlgebra& alg, const Bigrading<Rational>& bg);

/// P_k = ⊕_{i ≤ k} piece (i, ·) satisfies η·P_k ⊆ P_{k+2} and β·P_k ⊆ P_k.
CheckReport check_filtration(const GradedAlgebra& alg, const Bigrading<Rational>& bg,
                             const ClassVector<Rational>& eta, const ClassVector<Rational>& beta);

/// Subspace-by-subspace comparison of two bigradings.
CheckReport compare_bigradings(const Bigrading<Rational>& a, const Bigrading<Rational>& b);

/// Rows i separated by newlines, entries by commas.
std::string table_to_csv(const Table& t);
std::string table_to_markdown(const Table& t, const std::string& corner = "i\\j");

}  // namespace phodge::perverse
