#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/algebra/bb_space.hpp"
#include "phodge/algebra/graded_algebra.hpp"
#include "phodge/perverse/perverse.hpp"

namespace phodge::app {

using linalg::Rational;
using perverse::CheckReport;

inline constexpr const char* kToolVersion = "phodge 1.0.0";

enum class Format { json, csv, markdown };

struct RunConfig {
  std::string command;  // "model build", "perverse", "compare-hodge", "surface", "gv", "lie", "selftest"
  std::string model;
  std::string model_file;
  std::optional<std::size_t> b2;
  std::optional<int> n;
  std::string gram_file;
  std::string fujiki;
  std::string eta;   // η′ for quadratic-space models, η itself for description files
  std::string beta;
  std::string hodge_file;
  std::string data_file;
  std::uint64_t seed = 0;
  Format format = Format::json;
  int hmax = 2;
  int points = 3;
  bool deep = false;
  bool timings = false;

  /// Every field that influences the result; the digest is taken over this and the files it names.
  nlohmann::json to_json() const;
};

/// Rows may be ragged; missing cells render empty.
struct ReportTable {
  std::string name;
  std::string corner;
  std::vector<std::vector<std::int64_t>> rows;
};

struct Report {
  std::string command;
  std::string digest;
  std::vector<CheckReport> checks;
  std::vector<ReportTable> tables;
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::pair<std::string, double>> timings;
  std::optional<std::string> input_error;

  bool passed() const;
  /// 0 when every check passes, 1 on a failed check, 2 on an input error.
  int exit_code() const;
};

Report run(const RunConfig& config);
std::string render(const Report& report, Format format, bool with_timings);

/// Parses the command line, runs, prints the report to `out` and returns the exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Building blocks shared by the subcommands and the acceptance suite.

struct Model {
  std::string label;
  std::optional<algebra::BBSpace> bb;  // present for models generated from a quadratic space
  algebra::GradedAlgebra algebra;
};

/// `k3`, `k3hilb2` or `toy-b3`, built once per process. Throws InputError for other names.
const Model& builtin_model(const std::string& name);
algebra::BBSpace builtin_space(const std::string& name);

/// Comma-separated exact rationals of length b2, or a signed sum of named
/// hyperbolic generators such as "e1+f1-2e2" (plane k holds e_k, f_k).
linalg::Vector<Rational> parse_class(const std::string& text, std::size_t b2, const algebra::BBSpace* bb);

struct ClassPair {
  algebra::ClassVector<Rational> eta, beta;
};

/// Defaults from the hyperbolic planes, with η made isotropic along β.
ClassPair default_pair(const algebra::BBSpace& bb);

/// ∫w^{2n} = c·q(w)^n on seeded random integral classes.
CheckReport fujiki_check(const Model& m, std::uint64_t seed, int samples = 20);
/// w^{n+1} = 0 on seeded isotropic classes.
CheckReport bogomolov_check(const Model& m, std::uint64_t seed, int samples = 20);

/// Both bigrading routes, their comparison and the table. The table is empty
/// when the primitive route fails, and `agreement` then records why.
struct PerverseRun {
  std::optional<lefschetz::Bigrading<Rational>> bigrading;
  CheckReport agreement{"route-agreement"};
  perverse::PerverseTable table;
  perverse::PerverseTable weights_table;
};
PerverseRun perverse_run(const algebra::GradedAlgebra& alg, const ClassPair& pair);

/// One line per acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // seconds; 0 when the criterion has no time bound
};
std::vector<CriterionResult> run_acceptance(bool deep, std::uint64_t seed);
std::string format_criterion(const CriterionResult& r);

}  // namespace phodge::app
