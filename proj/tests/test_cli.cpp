#include <doctest.h>

#include <sstream>

#include "app/app.hpp"
#include "phodge/error.hpp"

using namespace phodge;
using namespace phodge::app;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "phodge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PHODGE_DATA_DIR) + "/" + name; }

nlohmann::json report(std::vector<std::string> args) { return nlohmann::json::parse(cli(std::move(args)).out); }

}  // namespace

TEST_CASE("perverse on k3 prints the elliptic K3 table") {
  auto o = cli({"perverse", "--model", "k3", "--format", "csv"});
  CHECK(o.code == 0);
  CHECK(o.out == "1,0,1\n0,20,0\n1,0,1\n");

  auto j = report({"perverse", "--model", "k3"});
  CHECK(j["status"] == "pass");
  CHECK(j["results"]["ph"] == nlohmann::json::parse("[[1,0,1],[0,20,0],[1,0,1]]"));
  CHECK(j["results"]["symmetric"] == true);
  CHECK(j["results"]["violations"].empty());
  CHECK(j["tool"] == kToolVersion);
  CHECK_FALSE(j.contains("timings"));
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  CHECK(names == std::vector<std::string>{"route-agreement", "table-symmetry", "transpose-symmetry", "sum-rule",
                                          "base-fiber-pattern", "multiplicativity", "duality", "perverse-filtration"});

  auto md = cli({"perverse", "--model", "toy-b3", "--format", "markdown"});
  CHECK(md.code == 0);
  CHECK(md.out.find("| i\\j | 0 | 1 | 2 |") != std::string::npos);
}

TEST_CASE("reports are reproducible and the digest covers the inputs") {
  const std::vector<std::string> args{"lie", "--model", "toy-b3", "--seed", "3"};
  CHECK(cli(args).out == cli(args).out);
  auto a = report({"lie", "--model", "toy-b3", "--seed", "3"});
  auto b = report({"lie", "--model", "toy-b3", "--seed", "4"});
  CHECK(a["input_digest"] != b["input_digest"]);
  CHECK(a["input_digest"].get<std::string>().size() == 64);
  CHECK(report({"perverse", "--model", "k3", "--timings"}).contains("timings"));
}

TEST_CASE("explicit classes") {
  auto j = report({"perverse", "--model", "k3hilb2", "--eta", "e1+f1+e3+f3", "--beta", "f1"});
  CHECK(j["status"] == "pass");
  CHECK(j["results"]["ph"][2][2] == 232);

  CHECK(cli({"perverse", "--model", "k3hilb2", "--eta", "e1+f1+e3+f3", "--beta", "e2"}).code == 2);  // orthogonal

  std::string coords = "0,1";
  for (int k = 2; k < 22; ++k) coords += ",0";
  CHECK(report({"perverse", "--model", "k3", "--beta", coords})["status"] == "pass");

  const auto bb = algebra::k3_space();
  auto v = parse_class("e1+2f1-1/2e3", 22, &bb);
  CHECK(v[0] == Rational(1));
  CHECK(v[1] == Rational(2));
  CHECK(v[4] == Rational(-1, 2));
  CHECK_THROWS_WITH_AS(parse_class("e9", 22, &bb), doctest::Contains("plane 9"), InputError);
  CHECK_THROWS_WITH_AS(parse_class("1,2", 22, &bb), doctest::Contains("2 coordinates"), InputError);
  CHECK_THROWS_WITH_AS(parse_class("e1", 22, nullptr), doctest::Contains("named generators"), InputError);
  CHECK_THROWS_AS(parse_class("1,x,0", 3, nullptr), InputError);
}

TEST_CASE("exit codes") {
  CHECK(cli({"perverse", "--model", "nope"}).code == 2);
  auto two = report({"perverse", "--model", "k3", "--model-file", data("truncated_poly.json")});
  CHECK(two["status"] == "input-error");
  CHECK(two["error"].get<std::string>().find("exactly one model source") != std::string::npos);
  CHECK(cli({"perverse"}).code == 2);
  CHECK(cli({"perverse", "--model", "k3", "--format", "xml"}).code == 2);
  CHECK(cli({"perverse", "--model", "k3", "--beta", "e1+f1"}).code == 2);
  CHECK(cli({"perverse", "--model-file", "/nonexistent.json"}).code == 2);
  CHECK(cli({"gv", "--hmax", "9"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"--help"}).code == 0);

  // a failed check, not an input error
  auto res = cli({"surface", data("rational_elliptic.json"), "--hodge-file", data("rational_elliptic_hodge.json")});
  CHECK(res.code == 1);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["status"] == "fail");
  CHECK(j["results"]["ph"][1][1] == 8);
  CHECK(j["results"]["hodge_match"] == false);
}

TEST_CASE("model build") {
  auto k3 = report({"model", "build", "--model", "k3"});
  CHECK(k3["status"] == "pass");
  CHECK(k3["results"]["graded_dims"] == nlohmann::json::parse("[1,0,22,0,1]"));
  CHECK(k3["results"]["ideal_rank"]["rank"] == 252);

  auto h = report({"model", "build", "--model", "k3hilb2"});
  CHECK(h["status"] == "pass");
  CHECK(h["results"]["total_dim"] == 324);
  CHECK(h["results"]["ideal_rank"].is_string());

  auto desc = report({"model", "build", "--model-file", data("k3_description.json")});
  CHECK(desc["status"] == "pass");
  CHECK(desc["results"]["quadratic_space"] == true);
  auto poly = report({"model", "build", "--model-file", data("truncated_poly.json")});
  CHECK(poly["status"] == "pass");
  CHECK(poly["results"]["quadratic_space"] == false);

  auto gram = report({"model", "build", "--gram-file", data("toy_b3_gram.json"), "--n", "1", "--b2", "3"});
  CHECK(gram["status"] == "pass");
  CHECK(gram["results"]["ideal_rank"]["expected"] == 5);
  CHECK(cli({"model", "build", "--gram-file", data("toy_b3_gram.json"), "--n", "1", "--b2", "4"}).code == 2);
  CHECK(cli({"model", "build", "--gram-file", data("toy_b3_gram.json")}).code == 2);
  CHECK(report({"model", "build", "--model-file", data("k3hilb2_space.json")})["results"]["b2"] == 23);
}

TEST_CASE("description models need explicit classes") {
  CHECK(cli({"perverse", "--model-file", data("truncated_poly.json")}).code == 2);
  // t·t ≠ 0 in ℚ[t]/(t³) with n = 1, so t is not isotropic
  CHECK(cli({"perverse", "--model-file", data("truncated_poly.json"), "--eta", "1", "--beta", "1"}).code == 2);
}

TEST_CASE("compare-hodge") {
  auto h = report({"compare-hodge", "--model", "k3hilb2"});
  CHECK(h["status"] == "pass");
  CHECK(h["results"]["hodge_match"] == true);
  CHECK(h["results"]["hodge_source"] == "hilbert-scheme series");
  auto f = report({"compare-hodge", "--model", "k3hilb2", "--hodge-file", data("k3hilb2_hodge.json")});
  CHECK(f["results"]["hodge_match"] == true);
  auto toy = cli({"compare-hodge", "--model", "toy-b3"});
  CHECK(toy.code == 1);
}

TEST_CASE("surface") {
  auto k3 = report({"surface", data("elliptic_k3.json")});
  CHECK(k3["status"] == "pass");
  CHECK(k3["results"]["ph"] == k3["results"]["leray"]);
  auto red = report({"surface", data("elliptic_k3_reducible.json")});
  CHECK(red["results"]["leray"][2][0] == 7);
  CHECK(red["results"]["leray"][1][1] == 14);
  CHECK(red["results"]["middle"]["skyscraper"] == 6);
  auto exe = cli({"surface", data("product_exe.json"), "--format", "csv"});
  CHECK(exe.code == 0);
  CHECK(exe.out == "# perverse\n1,2,1\n2,4,2\n1,2,1\n\n# leray\n1,2,1\n2,4,2\n1,2,1\n");
  CHECK(cli({"surface", data("truncated_poly.json")}).code == 2);
}

TEST_CASE("gv") {
  auto o = cli({"gv", "--hmax", "2", "--format", "csv"});
  CHECK(o.code == 0);
  CHECK(o.out == "1,,\n24,-2,\n324,-54,3\n");
  auto j = report({"gv", "--hmax", "4"});
  CHECK(j["results"]["classes"][4]["n"] == nlohmann::json::parse("[25650,-8550,1401,-126,5]"));
}

TEST_CASE("lie") {
  auto j = report({"lie", "--model", "k3", "--points", "3"});
  CHECK(j["status"] == "pass");
  CHECK(j["results"]["so5_dimensions"] == nlohmann::json::parse("[10,10,10]"));
  CHECK(j["results"]["structure_dimension"] == 276);
  auto h = report({"lie", "--model", "k3hilb2", "--points", "3"});
  CHECK(h["status"] == "pass");
  CHECK(h["results"]["structure_dimension"].is_string());
  CHECK(cli({"lie", "--model-file", data("truncated_poly.json")}).code == 2);
}
