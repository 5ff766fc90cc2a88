#include "app.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "phodge/algebra/description.hpp"
#include "phodge/algebra/sym_model.hpp"
#include "phodge/error.hpp"
#include "phodge/fibration/fibration.hpp"
#include "phodge/gv/gv.hpp"
#include "phodge/lefschetz/lefschetz.hpp"

namespace phodge::app {

namespace {

using nlohmann::json;
using perverse::Table;

std::string read_file(const std::string& path, const char* flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string(flag) + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const char* flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(flag) + ": malformed JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return os.str();
}

ReportTable as_report_table(std::string name, const Table& t, std::string corner = "i\\j") {
  ReportTable r{std::move(name), std::move(corner), {}};
  for (const auto& row : t) r.rows.emplace_back(row.begin(), row.end());
  return r;
}

json table_json(const Table& t) { return t; }

// Wall-clock stages, shown only on request so that reports stay reproducible.
class Stopwatch {
 public:
  explicit Stopwatch(Report& r) : report_(r) {}
  template <class Fn>
  decltype(auto) time(const std::string& stage, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      Report& r;
      std::string stage;
      std::chrono::steady_clock::time_point t0;
      ~Record() { r.timings.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()); }
    } rec{report_, stage, t0};
    return fn();
  }

 private:
  Report& report_;
};

struct Inputs {
  std::string model_text, gram_text, hodge_text, data_text;
};

Inputs read_inputs(const RunConfig& c) {
  Inputs in;
  if (!c.model_file.empty()) in.model_text = read_file(c.model_file, "--model-file");
  if (!c.gram_file.empty()) in.gram_text = read_file(c.gram_file, "--gram-file");
  if (!c.hodge_file.empty()) in.hodge_text = read_file(c.hodge_file, "--hodge-file");
  if (!c.data_file.empty()) in.data_text = read_file(c.data_file, "surface data file");
  return in;
}

std::string digest_of(const RunConfig& c, const Inputs& in) {
  std::string all = c.to_json().dump();
  for (const auto* s : {&in.model_text, &in.gram_text, &in.hodge_text, &in.data_text}) {
    all += '\0';
    all += std::to_string(s->size()) + ':' + *s;
  }
  return sha256_hex(all);
}

bool wants_bb_params(const RunConfig& c) { return c.b2 || c.n || !c.gram_file.empty() || !c.fujiki.empty(); }

void check_model_sources(const RunConfig& c) {
  const int sources = (c.model.empty() ? 0 : 1) + (c.model_file.empty() ? 0 : 1) + (wants_bb_params(c) ? 1 : 0);
  if (sources == 0) throw InputError("no model given: use --model, --model-file or --gram-file with --n");
  if (sources > 1) throw InputError("give exactly one model source: --model, --model-file or quadratic-space flags");
}

Model load_model(const RunConfig& c, const Inputs& in) {
  if (!c.model.empty()) return builtin_model(c.model);
  if (!c.model_file.empty()) {
    auto loaded = algebra::load_model_json(parse_json(in.model_text, "--model-file"));
    return {c.model_file, std::move(loaded.bb), std::move(loaded.algebra)};
  }
  if (c.gram_file.empty()) throw InputError("--gram-file is required with --b2, --n or --fujiki");
  json doc = parse_json(in.gram_text, "--gram-file");
  json bbdoc = doc.is_object() ? doc : json{{"gram", doc}};
  if (!bbdoc.contains("b2") && bbdoc.contains("gram") && bbdoc.at("gram").is_array()) bbdoc["b2"] = bbdoc.at("gram").size();
  if (c.b2) {
    if (bbdoc.at("b2").get<std::size_t>() != *c.b2)
      throw InputError("--b2 = " + std::to_string(*c.b2) + " does not match the Gram matrix size");
  }
  if (c.n) bbdoc["n"] = *c.n;
  if (!c.fujiki.empty()) bbdoc["fujiki"] = c.fujiki;
  if (!bbdoc.contains("n")) throw InputError("--n is required with --gram-file");
  auto bb = algebra::bb_space_from_json(bbdoc);
  auto alg = algebra::build_sym_model(bb);
  return {"gram:" + c.gram_file, std::move(bb), std::move(alg)};
}

ClassPair classes_for(const RunConfig& c, const Model& m) {
  const std::size_t b2 = m.algebra.dim(2);
  if (!m.bb) {
    if (c.eta.empty() || c.beta.empty()) throw InputError("--eta and --beta are required for a description model");
    return {{2, parse_class(c.eta, b2, nullptr)}, {2, parse_class(c.beta, b2, nullptr)}};
  }
  ClassPair p;
  if (c.eta.empty() && c.beta.empty()) return default_pair(*m.bb);
  auto [eta_prime, beta] = perverse::default_classes(*m.bb);
  if (!c.eta.empty()) eta_prime = parse_class(c.eta, b2, &*m.bb);
  if (!c.beta.empty()) beta = parse_class(c.beta, b2, &*m.bb);
  return {{2, perverse::isotropic_relative_ample(*m.bb, eta_prime, beta)}, {2, beta}};
}

perverse::HodgeDiamond load_diamond(const std::string& text, int n) {
  json doc = parse_json(text, "--hodge-file");
  const json& rows = doc.is_object() ? (doc.contains("hodge") ? doc.at("hodge") : doc.value("entries", json())) : doc;
  if (!rows.is_array()) throw InputError("--hodge-file: expected a matrix or an object with \"hodge\"");
  perverse::HodgeDiamond d{n, {}};
  for (const auto& row : rows) {
    if (!row.is_array()) throw InputError("--hodge-file: rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& x : row) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw InputError("--hodge-file: entries must be nonnegative integers");
      r.push_back(x.get<std::size_t>());
    }
    d.entries.push_back(std::move(r));
  }
  for (const auto& r : d.entries)
    if (r.size() != d.entries.size()) throw InputError("--hodge-file: the diamond must be square");
  if (d.entries.size() % 2 == 0) throw InputError("--hodge-file: the diamond must have odd size");
  d.n = static_cast<int>(d.entries.size() / 2);
  return d;
}

std::vector<std::size_t> betti(const algebra::GradedAlgebra& alg) { return alg.graded_dims(); }

json checks_violations(const std::vector<CheckReport>& checks) {
  json v = json::array();
  for (const auto& c : checks)
    for (const auto& s : c.violations) v.push_back(c.name + ": " + s);
  return v;
}

void run_model_build(const RunConfig& c, const Model& m, Report& r, Stopwatch&) {
  const auto fr = m.algebra.validate_frobenius();
  CheckReport frob{"frobenius"};
  for (const auto& f : fr.failures) frob.fail(f);
  if (!fr.ok() && fr.failures.empty()) frob.fail("an axiom failed");
  r.checks.push_back(frob);
  r.results["graded_dims"] = m.algebra.graded_dims();
  r.results["total_dim"] = m.algebra.total_dim();
  r.results["n"] = m.algebra.n();
  r.results["b2"] = m.algebra.dim(2);
  r.results["quadratic_space"] = m.bb.has_value();
  if (!m.bb) return;
  r.results["fujiki"] = m.bb->fujiki.to_string();
  r.checks.push_back(fujiki_check(m, c.seed));
  r.checks.push_back(bogomolov_check(m, c.seed));
  const std::size_t sym_dim = algebra::MonomialBasis(m.bb->b2, m.bb->n + 1).size();
  if (sym_dim <= 1000) {
    const auto ideal = algebra::isotropic_ideal_rank(*m.bb);
    CheckReport ir{"ideal-rank"};
    if (!ideal.matches())
      ir.fail("rank " + std::to_string(ideal.rank) + ", certified bound " + std::to_string(ideal.upper_bound) +
              ", expected " + std::to_string(ideal.expected));
    r.checks.push_back(ir);
    r.results["ideal_rank"] = {{"ambient", ideal.ambient}, {"rank", ideal.rank}, {"expected", ideal.expected}};
  } else {
    r.results["ideal_rank"] = "skipped: Sym^(n+1) has " + std::to_string(sym_dim) + " dimensions";
  }
}

// Shared by perverse and compare-hodge.
PerverseRun perverse_core(const RunConfig& c, const Model& m, Report& r, Stopwatch& sw) {
  const auto pair = classes_for(c, m);
  auto run = sw.time("bigrading", [&] { return perverse_run(m.algebra, pair); });
  r.checks.push_back(run.agreement);
  const Table& t = run.bigrading ? run.table.entries : run.weights_table.entries;
  r.tables.push_back(as_report_table("perverse", t));
  const auto sym = perverse::check_table_symmetry(t);
  r.checks.push_back(sym);
  r.results["n"] = m.algebra.n();
  r.results["ph"] = table_json(t);
  r.results["symmetric"] = sym.pass;
  return run;
}

void run_perverse(const RunConfig& c, const Model& m, Report& r, Stopwatch& sw) {
  const auto run = perverse_core(c, m, r, sw);
  const Table& t = r.results["ph"].get<Table>();
  if (m.bb) r.checks.push_back(perverse::check_transpose_symmetry(t));
  r.checks.push_back(perverse::check_sum_rule(t, betti(m.algebra)));
  r.checks.push_back(perverse::check_base_fiber_pattern({m.algebra.n(), t}));
  if (run.bigrading) {
    const auto pair = classes_for(c, m);
    r.checks.push_back(sw.time("multiplicativity", [&] { return perverse::check_multiplicativity(m.algebra, *run.bigrading); }));
    r.checks.push_back(sw.time("duality", [&] { return perverse::check_duality(m.algebra, *run.bigrading); }));
    r.checks.push_back(perverse::check_filtration(m.algebra, *run.bigrading, pair.eta, pair.beta));
  }
  r.results["violations"] = checks_violations(r.checks);
}

void run_compare_hodge(const RunConfig& c, const Model& m, const Inputs& in, Report& r, Stopwatch& sw) {
  perverse_core(c, m, r, sw);
  const int n = m.algebra.n();
  const auto diamond = c.hodge_file.empty() ? gv::goettsche_hodge(n) : load_diamond(in.hodge_text, n);
  r.results["hodge_source"] = c.hodge_file.empty() ? "hilbert-scheme series" : "file";
  r.tables.push_back(as_report_table("hodge", diamond.entries, "p\\q"));
  const auto cmp = perverse::compare_hodge({n, r.results["ph"].get<Table>()}, diamond);
  r.checks.push_back(cmp);
  r.results["hodge"] = table_json(diamond.entries);
  r.results["hodge_match"] = cmp.pass;
  r.results["violations"] = checks_violations(r.checks);
}

void run_surface(const RunConfig& c, const Inputs& in, Report& r) {
  if (c.data_file.empty()) throw InputError("surface: a fibration data file is required");
  const auto data = fibration::fibration_from_json(parse_json(in.data_text, "surface data file"));
  const auto pt = fibration::perverse_numbers_surface(data);
  const auto lt = fibration::leray_numbers_surface(data);
  const auto mid = fibration::middle_decomposition(data);
  std::vector<std::size_t> b(data.betti.begin(), data.betti.end());
  r.tables.push_back(as_report_table("perverse", pt.entries));
  r.tables.push_back(as_report_table("leray", lt));
  r.checks.push_back(perverse::check_table_symmetry(pt.entries));
  auto sum_p = perverse::check_sum_rule(pt.entries, b);
  sum_p.name = "sum-rule (perverse)";
  auto sum_l = perverse::check_sum_rule(lt, b);
  sum_l.name = "sum-rule (leray)";
  r.checks.push_back(sum_p);
  r.checks.push_back(sum_l);
  // the 1-0-1 rows belong to a rational base with b1 = 0
  if (data.base_genus == 0 && data.betti[1] == 0) r.checks.push_back(perverse::check_base_fiber_pattern(pt));
  r.results["n"] = 1;
  r.results["ph"] = table_json(pt.entries);
  r.results["leray"] = table_json(lt);
  r.results["middle"] = {{"h0", mid.h0}, {"h1", mid.h1}, {"h2", mid.h2}, {"skyscraper", mid.skyscraper}};
  r.results["symmetric"] = r.checks.front().pass;
  if (!c.hodge_file.empty()) {
    const auto diamond = load_diamond(in.hodge_text, 1);
    const auto cmp = perverse::compare_hodge(pt, diamond);
    r.checks.push_back(cmp);
    r.results["hodge_match"] = cmp.pass;
  }
  r.results["violations"] = checks_violations(r.checks);
}

void run_gv(const RunConfig& c, Report& r, Stopwatch& sw) {
  if (c.hmax < 1 || c.hmax > 8) throw InputError("--hmax must lie in [1, 8]");
  const auto oracle = sw.time("kkv", [&] { return gv::kkv_oracle(c.hmax); });
  CheckReport agree{"gv-vs-kkv"}, round{"reconstruction"};
  ReportTable tab{"gv", "h\\g", {}};
  json classes = json::array(), kkv = json::array();
  tab.rows.push_back(oracle[0].n);
  classes.push_back({{"h", 0}, {"n", oracle[0].n}, {"source", "kkv"}});
  for (int h = 0; h <= c.hmax; ++h) kkv.push_back({{"h", h}, {"n", oracle[h].n}});
  for (int h = 1; h <= c.hmax; ++h) {
    const auto diamond = gv::goettsche_hodge(h);
    const auto g = gv::refined_gv(diamond, h);
    if (!(g == oracle[h])) agree.fail("h = " + std::to_string(h) + ": " + json(g.n).dump() + " vs " + json(oracle[h].n).dump());
    if (!(gv::reconstruct(g) == gv::chi_polynomial({h, diamond.entries})))
      round.fail("h = " + std::to_string(h) + ": reconstruction differs");
    tab.rows.push_back(g.n);
    classes.push_back({{"h", h}, {"n", g.n}, {"source", "hodge"}});
  }
  r.tables.push_back(tab);
  r.checks.push_back(agree);
  r.checks.push_back(round);
  r.results["classes"] = classes;
  r.results["kkv"] = kkv;
}

void run_lie(const RunConfig& c, const Model& m, Report& r, Stopwatch& sw) {
  if (!m.bb) throw InputError("lie needs a quadratic-space model");
  if (c.points < 1) throw InputError("--points must be positive");
  CheckReport so5{"so5"}, cartan{"cartan-conservation"}, structure{"structure-algebra"};
  std::vector<lefschetz::DCirclePoint> pts;
  try {
    pts = lefschetz::sample_d_circle(*m.bb, static_cast<std::size_t>(c.points), c.seed);
  } catch (const PreconditionError& e) {
    so5.fail(std::string("no D° points: ") + e.what());
  }
  json dims = json::array();
  std::optional<Table> first;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::vector<lefschetz::GradedOperator<lefschetz::GaussianRational>> ops;
    for (const auto* v : {&pts[k].x, &pts[k].y, &pts[k].z}) {
      auto t = lefschetz::lefschetz_triple(m.algebra, lefschetz::gaussian_class(*v));
      ops.push_back(std::move(t.E));
      ops.push_back(std::move(t.H));
      ops.push_back(std::move(t.F));
    }
    const auto d = sw.time("so5 point " + std::to_string(k), [&] { return lefschetz::lie_closure(ops).dimension; });
    dims.push_back(d);
    if (d != 10) so5.fail("point " + std::to_string(k) + ": dimension " + std::to_string(d));
    const auto table = lefschetz::cartan_bigrading(m.algebra, pts[k]).dimension_table();
    if (!first) {
      first = table;
      r.tables.push_back(as_report_table("cartan", table));
    } else if (table != *first) {
      cartan.fail("point " + std::to_string(k) + " has a different weight-space table");
    }
  }
  r.checks.push_back(so5);
  r.checks.push_back(cartan);
  r.results["so5_dimensions"] = dims;
  const std::size_t b2 = m.bb->b2, want = (b2 + 2) * (b2 + 1) / 2;
  if (b2 <= 22 || c.deep) {
    const auto closure = sw.time("structure", [&] { return lefschetz::structure_lie_algebra(m.algebra, *m.bb); });
    if (closure.dimension != want)
      structure.fail("dimension " + std::to_string(closure.dimension) + ", expected " + std::to_string(want));
    r.results["structure_dimension"] = closure.dimension;
    r.checks.push_back(structure);
  } else {
    r.results["structure_dimension"] = "skipped: b2 > 22 needs --deep";
  }
  r.results["structure_expected"] = want;
}

void run_selftest(const RunConfig& c, Report& r) {
  json rows = json::array();
  for (const auto& cr : run_acceptance(c.deep, c.seed)) {
    CheckReport ck{"criterion " + std::to_string(cr.id) + ": " + cr.title};
    if (!cr.pass) ck.fail(cr.detail);
    r.checks.push_back(ck);
    r.timings.emplace_back("criterion " + std::to_string(cr.id), cr.seconds);
    rows.push_back({{"id", cr.id}, {"title", cr.title}, {"pass", cr.pass}, {"detail", cr.detail}});
  }
  r.results["criteria"] = rows;
}

std::string cell_row(const std::vector<std::int64_t>& row, std::size_t width, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < width; ++k) {
    if (k) s += sep;
    if (k < row.size()) s += std::to_string(row[k]);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::size_t width_of(const ReportTable& t) {
  std::size_t w = 0;
  for (const auto& row : t.rows) w = std::max(w, row.size());
  return w;
}

}  // namespace

json RunConfig::to_json() const {
  const char* formats[] = {"json", "csv", "markdown"};
  return {{"command", command},       {"model", model},
          {"model_file", model_file}, {"b2", b2 ? json(*b2) : json()},
          {"n", n ? json(*n) : json()}, {"gram_file", gram_file},
          {"fujiki", fujiki},         {"eta", eta},
          {"beta", beta},             {"hodge_file", hodge_file},
          {"data_file", data_file},   {"seed", seed},
          {"format", formats[static_cast<int>(format)]}, {"hmax", hmax},
          {"points", points},         {"deep", deep}};
}

bool Report::passed() const {
  if (input_error) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

int Report::exit_code() const {
  if (input_error) return 2;
  return passed() ? 0 : 1;
}

Report run(const RunConfig& c) {
  Report r;
  r.command = c.command;
  Stopwatch sw(r);
  const bool needs_model = c.command != "gv" && c.command != "surface" && c.command != "selftest";
  try {
    if (needs_model) check_model_sources(c);
    const Inputs in = read_inputs(c);
    r.digest = digest_of(c, in);
    if (c.command == "gv") {
      run_gv(c, r, sw);
    } else if (c.command == "surface") {
      run_surface(c, in, r);
    } else if (c.command == "selftest") {
      run_selftest(c, r);
    } else {
      const Model m = sw.time("model", [&] { return load_model(c, in); });
      if (c.command == "model build")
        run_model_build(c, m, r, sw);
      else if (c.command == "perverse")
        run_perverse(c, m, r, sw);
      else if (c.command == "compare-hodge")
        run_compare_hodge(c, m, in, r, sw);
      else if (c.command == "lie")
        run_lie(c, m, r, sw);
      else
        throw InputError("unknown command '" + c.command + "'");
    }
  } catch (const InputError& e) {
    r.input_error = e.what();
  } catch (const PreconditionError& e) {
    r.input_error = e.what();
  } catch (const json::exception& e) {
    r.input_error = std::string("malformed input: ") + e.what();
  } catch (const ConsistencyError& e) {
    CheckReport ck{"consistency"};
    ck.fail(e.what());
    r.checks.push_back(ck);
  }
  return r;
}

std::string render(const Report& r, Format f, bool with_timings) {
  std::ostringstream os;
  if (f == Format::json) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"violations", c.violations}});
    json tables = json::object();
    for (const auto& t : r.tables) tables[t.name] = t.rows;
    json doc = {{"tool", kToolVersion},
                {"command", r.command},
                {"input_digest", r.digest},
                {"status", r.input_error ? "input-error" : (r.passed() ? "pass" : "fail")},
                {"checks", checks},
                {"tables", tables},
                {"results", r.results}};
    if (r.input_error) doc["error"] = *r.input_error;
    if (with_timings) {
      json t = json::array();
      for (const auto& [stage, s] : r.timings) t.push_back({{"stage", stage}, {"seconds", s}});
      doc["timings"] = t;
    }
    os << doc.dump(2) << '\n';
    return os.str();
  }
  if (r.input_error) {
    os << (f == Format::csv ? "# " : "") << "input error: " << *r.input_error << '\n';
    return os.str();
  }
  if (f == Format::csv) {
    const bool headed = r.tables.size() > 1;
    for (std::size_t k = 0; k < r.tables.size(); ++k) {
      if (k) os << '\n';
      if (headed) os << "# " << r.tables[k].name << '\n';
      const std::size_t w = width_of(r.tables[k]);
      for (const auto& row : r.tables[k].rows) os << cell_row(row, w, ",") << '\n';
    }
    if (r.tables.empty())
      for (const auto& c : r.checks) os << csv_field(c.name) << ',' << (c.pass ? "pass" : "fail") << '\n';
    return os.str();
  }
  os << "# " << r.command << "\n\n";
  for (const auto& t : r.tables) {
    const std::size_t w = width_of(t);
    os << "## " << t.name << "\n\n| " << t.corner << " |";
    for (std::size_t k = 0; k < w; ++k) os << ' ' << k << " |";
    os << "\n|---|";
    for (std::size_t k = 0; k < w; ++k) os << "---|";
    os << '\n';
    for (std::size_t i = 0; i < t.rows.size(); ++i) os << "| " << i << " | " << cell_row(t.rows[i], w, " | ") << " |\n";
    os << '\n';
  }
  os << "## checks\n\n";
  for (const auto& c : r.checks) {
    os << "- " << c.name << ": " << (c.pass ? "pass" : "FAIL") << '\n';
    for (const auto& v : c.violations) os << "  - " << v << '\n';
  }
  if (with_timings) {
    os << "\n## timings\n\n";
    for (const auto& [stage, s] : r.timings) os << "- " << stage << ": " << std::fixed << std::setprecision(3) << s << " s\n";
  }
  return os.str();
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perverse numbers of hyper-Kähler model cohomology algebras", "phodge"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "json";
  std::size_t b2 = 0;
  int n = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "seed for sampled classes and D° points")->default_val(0);
    sub->add_option("--format", format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    sub->add_flag("--timings", c.timings, "include wall-clock stages in the report");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "built-in model: k3, k3hilb2, toy-b3");
    sub->add_option("--model-file", c.model_file, "algebra description or quadratic-space JSON");
    sub->add_option("--b2", b2, "second Betti number, checked against --gram-file");
    sub->add_option("--n", n, "half dimension");
    sub->add_option("--gram-file", c.gram_file, "Gram matrix JSON");
    sub->add_option("--fujiki", c.fujiki, "Fujiki constant, integer or p/q");
  };
  auto add_classes = [&](CLI::App* sub) {
    sub->add_option("--eta", c.eta, "eta' as coordinates or named generators, e.g. e1+f1+e2+f2");
    sub->add_option("--beta", c.beta, "isotropic beta, same syntax");
  };

  auto* model = app.add_subcommand("model", "model operations");
  model->require_subcommand(1);
  auto* build = model->add_subcommand("build", "construct and validate a model algebra");
  add_model(build);
  add_common(build);
  auto* perv = app.add_subcommand("perverse", "perverse bigrading, table and checks");
  add_model(perv);
  add_classes(perv);
  add_common(perv);
  auto* cmp = app.add_subcommand("compare-hodge", "perverse table against a Hodge diamond");
  add_model(cmp);
  add_classes(cmp);
  add_common(cmp);
  cmp->add_option("--hodge-file", c.hodge_file, "Hodge diamond JSON; default is the Hilbert-scheme series");
  auto* surf = app.add_subcommand("surface", "perverse and Leray numbers of an elliptic surface");
  surf->add_option("data", c.data_file, "fibration data JSON")->required();
  surf->add_option("--hodge-file", c.hodge_file, "Hodge diamond JSON to compare against");
  add_common(surf);
  auto* gvc = app.add_subcommand("gv", "refined GV invariants against the KKV series");
  gvc->add_option("--hmax", c.hmax, "largest h")->default_val(2);
  add_common(gvc);
  auto* lie = app.add_subcommand("lie", "so(5) and structure Lie algebra dimensions");
  add_model(lie);
  add_common(lie);
  lie->add_option("--points", c.points, "number of D° points")->default_val(3);
  lie->add_flag("--deep", c.deep, "also run the structure algebra for b2 > 22");
  auto* self = app.add_subcommand("selftest", "acceptance suite");
  add_common(self);
  self->add_flag("--deep", c.deep, "include the b2 = 23 structure algebra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (build->parsed())
    c.command = "model build";
  else
    for (auto* s : {perv, cmp, surf, gvc, lie, self})
      if (s->parsed()) c.command = s->get_name();
  for (auto* s : {build, perv, cmp, lie}) {
    if (!s->parsed()) continue;
    if (s->count("--b2")) c.b2 = b2;
    if (s->count("--n")) c.n = n;
  }
  c.format = format == "csv" ? Format::csv : format == "markdown" ? Format::markdown : Format::json;
  const Report r = run(c);
  out << render(r, c.format, c.timings);
  if (r.input_error && c.format != Format::json) err << "error: " << *r.input_error << '\n';
  return r.exit_code();
}

}  // namespace phodge::app
