#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "pipeline.hpp"

using namespace frjac;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("corpus verdicts and exit codes") {
  json ice = run_check(slurp("corpus/triangle-ice.qp"), "triangle-ice", {});
  CHECK(ice["verdict"] == "BimoduleInternally3CY");
  CHECK(exit_code_of(ice) == 0);
  CHECK(ice["frozen_idempotent"] == "e_1+e_2");
  CHECK(ice["stages"]["algebra"]["dim"] == 7);

  json plain = run_check(slurp("corpus/triangle-plain.qp"), "triangle-plain", {});
  CHECK(plain["verdict"] == "NotQuasiIso");
  CHECK(exit_code_of(plain) == 1);

  json ap = run_check(slurp("corpus/a-prime.qp"), "a-prime", {});
  CHECK(ap["verdict"] == "BimoduleInternally3CY");
  CHECK(exit_code_of(ap) == 0);

  run_options graded;
  graded.graded = true;
  json gr = run_check(slurp("corpus/gr26.qp"), "gr26", graded);
  CHECK(gr["verdict"] == "BoundedCertificate");
  CHECK(exit_code_of(gr) == 0);
  CHECK(gr["stages"]["basis"]["verdict"] == "infinite");
}

TEST_CASE("infinite-dimensional input without --graded is unsupported") {
  json rep = run_check(slurp("corpus/gr26.qp"), "gr26", {});
  CHECK(rep["verdict"] == "Unsupported");
  CHECK(exit_code_of(rep) == 2);
}

TEST_CASE("ungradable potentials are reported completion-sensitive") {
  std::string text = "vertices 1 2\narrows\n  a: 1 -> 2\n  b: 2 -> 1\npotential\n  b a\n  b a b a\n";
  json rep = run_check(text, "square", {});
  CHECK(rep["verdict"] == "Unsupported");
  CHECK(exit_code_of(rep) == 2);
  std::string msg = rep["error"]["message"];
  CHECK(msg.find("completion-sensitive") != std::string::npos);
}

TEST_CASE("malformed inputs exit with code 2") {
  json rep = run_check("vertices 1 2\narrows\n  a: 1 -> 1\n", "loop", {});
  CHECK(rep["verdict"] == "Error");
  CHECK(exit_code_of(rep) == 2);
  CHECK(rep["error"]["kind"] == "parse");
}

TEST_CASE("reports are deterministic modulo timings") {
  std::string text = slurp("corpus/triangle-ice.qp");
  json a = run_check(text, "triangle-ice", {});
  json b = run_check(text, "triangle-ice", {});
  CHECK(golden_form(a) == golden_form(b));
  CHECK(a.contains("timings_ms"));
  CHECK(golden_form(a).find("timings_ms") == std::string::npos);
}

TEST_CASE("characteristic-p certificates are labelled") {
  run_options opts;
  opts.field_name = "Fp";
  opts.prime = 101;
  json rep = run_check(slurp("corpus/triangle-ice.qp"), "triangle-ice", opts);
  CHECK(rep["verdict"] == "BimoduleInternally3CY");
  CHECK(rep["certificate"] == "characteristic-p");
  CHECK(rep["input"]["field"] == "F101");
}

TEST_CASE("input digest is the sha256 of the source") {
  json rep = run_check("vertices 1\narrows\n", "tiny", {});
  // sha256 of the exact text, fixed forever.
  CHECK(rep["input"]["sha256"] == "ae552c746dbd22c1631c328981e477c15b7b9e90d9f8d99196c88b5980d02655");
}

TEST_CASE("stage commands") {
  std::string ice = slurp("corpus/triangle-ice.qp");
  json rel = run_stage(ice, "triangle-ice", "relations", {});
  REQUIRE(rel["stages"]["relations"].size() == 2);
  CHECK(rel["stages"]["relations"][0]["arrow"] == "a2");
  CHECK(rel["stages"]["relations"][0]["relation"] == "a1 a3");
  CHECK(rel["stages"]["relations"][1]["arrow"] == "a3");
  CHECK(rel["stages"]["relations"][1]["relation"] == "a2 a1");

  json basis = run_stage(ice, "triangle-ice", "basis", {});
  CHECK(basis["stages"]["basis"]["dimension"] == 7);
  REQUIRE(basis["stages"]["basis"]["words"].size() == 7);

  json grade = run_stage(slurp("corpus/gr26.qp"), "gr26", "grade", {});
  CHECK(grade["stages"]["grading"]["potential_degree"] == 5);
  CHECK(grade["stages"]["grading"]["max_degree"] == 3);

  json res = run_stage(ice, "triangle-ice", "resolve:S:3", {});
  CHECK(res["stages"]["resolve"]["pdim"] == 3);
  CHECK(res["stages"]["resolve"]["betti"] == json::array({1, 1, 1, 1}));

  json bad = run_stage(ice, "triangle-ice", "resolve:X:9", {});
  CHECK(bad["verdict"] == "Error");
}

TEST_CASE("gr26 graded report matches the golden file") {
  run_options opts;
  opts.graded = true;
  json rep = run_check(slurp("corpus/gr26.qp"), "corpus/gr26.qp", opts);
  std::ifstream f("corpus/golden/gr26-check.json");
  REQUIRE(f.good());
  json golden = json::parse(f);
  CHECK(golden_form(rep) == golden_form(golden));
}

TEST_CASE("triangle-ice report matches the golden file") {
  json rep = run_check(slurp("corpus/triangle-ice.qp"), "corpus/triangle-ice.qp", {});
  std::ifstream f("corpus/golden/triangle-ice-check.json");
  REQUIRE(f.good());
  json golden = json::parse(f);
  CHECK(golden_form(rep) == golden_form(golden));
}

TEST_CASE("environment variables override the default caps") {
  setenv("FRJAC_RESOLVE_CAP", "5", 1);
  json rep = run_check(slurp("corpus/triangle-plain.qp"), "triangle-plain", {});
  unsetenv("FRJAC_RESOLVE_CAP");
  CHECK(rep["stages"]["algebra"]["global_dimension"] == ">= 5");
  run_options opts;
  opts.resolve_cap = 9;
  setenv("FRJAC_RESOLVE_CAP", "5", 1);
  json rep2 = run_check(slurp("corpus/triangle-plain.qp"), "triangle-plain", opts);
  unsetenv("FRJAC_RESOLVE_CAP");
  CHECK(rep2["stages"]["algebra"]["global_dimension"] == ">= 9");  // explicit option wins
}

TEST_CASE("matrix dumps are included on request") {
  run_options opts;
  opts.dump_matrices = true;
  json rep = run_check(slurp("corpus/triangle-ice.qp"), "triangle-ice", opts);
  const json& m = rep["stages"]["complex"]["matrices"];
  REQUIRE(m.contains("mu2"));
  std::istringstream is(m["mu2"].get<std::string>());
  int rows, cols;
  is >> rows >> cols;
  CHECK(rows == 17);
  CHECK(cols == 12);
}

TEST_CASE("exit-code contract under mutated inputs") {
  std::string base = slurp("corpus/triangle-ice.qp");
  std::mt19937_64 rng(0xf022u);
  for (int i = 0; i < 120; ++i) {
    std::string text = base;
    int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      size_t pos = rng() % text.size();
      char c = static_cast<char>("abc123:>-# \n"[rng() % 12]);
      if (rng() % 2)
        text[pos] = c;
      else
        text.insert(pos, 1, c);
    }
    json rep = run_check(text, "fuzz", {});
    int code = exit_code_of(rep);
    CHECK((code == 0 || code == 1 || code == 2));
    REQUIRE(rep.contains("verdict"));
  }
}

TEST_CASE("finite graded cross-check extends a too-small cap") {
  run_options opts;
  opts.graded = true;
  opts.degree_cap = 1;  // far below the top internal degree of the complex
  json ice = run_check(slurp("corpus/triangle-ice.qp"), "triangle-ice", opts);
  CHECK(ice["verdict"] == "BimoduleInternally3CY");
  CHECK(ice["stages"]["graded_check"]["cap"].get<int>() >= 4);
  json plain = run_check(slurp("corpus/triangle-plain.qp"), "triangle-plain", opts);
  CHECK(plain["verdict"] == "NotQuasiIso");
  CHECK(plain["stages"]["graded_check"]["pass"] == false);
}

TEST_CASE("a too-small groebner cap is a reportable error") {
  run_options opts;
  opts.gb_cap = 1;
  json rep = run_check(slurp("corpus/triangle-ice.qp"), "triangle-ice", opts);
  CHECK(rep["verdict"] == "Error");
  CHECK(exit_code_of(rep) == 2);
  CHECK(rep["error"]["kind"] == "invalid_input");
}

TEST_CASE("characteristic-p verdicts agree with Q on the corpus") {
  for (const char* path : {"corpus/triangle-ice.qp", "corpus/triangle-plain.qp", "corpus/a-prime.qp"}) {
    run_options fp;
    fp.field_name = "Fp";
    fp.prime = 32003;
    json over_q = run_check(slurp(path), path, {});
    json over_p = run_check(slurp(path), path, fp);
    CHECK(over_q["verdict"] == over_p["verdict"]);
    CHECK(over_q["stages"]["homology"]["h"] == over_p["stages"]["homology"]["h"]);
    CHECK(over_q["stages"]["basis"]["dimension"] == over_p["stages"]["basis"]["dimension"]);
  }
}

TEST_CASE("explicit degree cap is recorded in the bounded certificate") {
  run_options opts;
  opts.graded = true;
  opts.degree_cap = 24;
  json rep = run_check(slurp("corpus/gr26.qp"), "gr26", opts);
  CHECK(rep["verdict"] == "BoundedCertificate");
  CHECK(rep["certificate_degree_cap"] == 24);
  CHECK(rep["stages"]["graded_check"]["cap"] == 24);
  for (const auto& e : rep["stages"]["graded_check"]["per_simple"]) {
    CHECK(e["pass"] == true);
    CHECK(e["rows"].size() == 25);  // degrees 0..24
  }
}
