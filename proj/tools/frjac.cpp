// Command-line front end; talks to the engine only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "frjac.h"

namespace {

using nlohmann::json;

struct common_opts {
  std::string field;
  uint64_t prime = 0;
  int gb_cap = 0;
  int degree_cap = 0;
  int resolve_cap = 0;
  bool graded = false;
  std::string report_path;
  std::string dump_dir;
};

void add_common(CLI::App* cmd, common_opts& o) {
  cmd->add_option("--field", o.field, "Ground field: Q or Fp (overrides the file)");
  cmd->add_option("--prime", o.prime, "Modulus for Fp mode");
  cmd->add_option("--gb-cap", o.gb_cap, "Groebner truncation degree");
  cmd->add_option("--degree-cap", o.degree_cap, "Internal-degree cap for graded certificates");
  cmd->add_option("--resolve-cap", o.resolve_cap, "Projective resolution length cap");
  cmd->add_flag("--graded", o.graded, "Run the degree-by-degree per-simple check");
  cmd->add_option("--report", o.report_path, "Write the JSON report to this path");
  cmd->add_option("--dump-matrices", o.dump_dir,
                  "Write the res(A) differentials as sparse triplets into this directory");
}

int apply_options(frjac_session* s, const common_opts& o) {
  auto set = [&](const char* k, const std::string& v) {
    if (frjac_set_option(s, k, v.c_str()) != FRJAC_OK) {
      std::cerr << "frjac: " << frjac_last_error(s) << "\n";
      return false;
    }
    return true;
  };
  if (!o.field.empty() && !set("field", o.field)) return 2;
  if (o.prime && !set("prime", std::to_string(o.prime))) return 2;
  if (o.gb_cap && !set("gb_cap", std::to_string(o.gb_cap))) return 2;
  if (o.degree_cap && !set("degree_cap", std::to_string(o.degree_cap))) return 2;
  if (o.resolve_cap && !set("resolve_cap", std::to_string(o.resolve_cap))) return 2;
  if (o.graded && !set("graded", "1")) return 2;
  if (!o.dump_dir.empty() && !set("dump_matrices", "1")) return 2;
  return 0;
}

void render_check(const json& r, std::ostream& os) {
  if (r.contains("stages")) {
    const json& st = r["stages"];
    if (st.contains("parse")) {
      os << "quiver: " << st["parse"]["vertices"].size() << " vertices, " << st["parse"]["arrows"].size()
         << " arrows; W = " << st["parse"]["potential"].get<std::string>() << "\n";
    }
    if (st.contains("grading") && st["grading"].value("feasible", false)) {
      os << "grading: deg W = " << st["grading"]["potential_degree"] << ", degrees";
      for (auto& [k, v] : st["grading"]["degrees"].items()) os << ' ' << k << '=' << v.get<int>();
      os << "\n";
    }
    if (st.contains("gb"))
      os << "groebner: " << st["gb"]["size"] << " elements, " << st["gb"]["status"].get<std::string>()
         << " (cap " << st["gb"]["cap"] << ")\n";
    if (st.contains("basis")) {
      os << "basis: " << st["basis"]["verdict"].get<std::string>();
      if (st["basis"].contains("dimension")) os << ", dim A = " << st["basis"]["dimension"];
      os << "\n";
    }
    if (st.contains("complex")) {
      os << "res(A) term dims:";
      for (auto& d : st["complex"]["dims"]) os << ' ' << d.get<int>();
      os << "  (euler " << st["complex"]["euler"] << ")\n";
    }
    if (st.contains("homology")) {
      os << "homology (P0..P3):";
      for (auto& h : st["homology"]["h"]) os << ' ' << h.get<int>();
      os << "\n";
    }
    if (st.contains("cy")) os << "cy consequences: " << (st["cy"]["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    if (st.contains("graded_check")) {
      os << "graded certificate (cap " << st["graded_check"]["cap"] << "):";
      for (auto& e : st["graded_check"]["per_simple"])
        os << ' ' << e["vertex"].get<std::string>() << (e["pass"].get<bool>() ? ":ok" : ":FAIL");
      os << "\n";
    }
  }
  if (r.contains("error")) os << "error: " << r["error"]["message"].get<std::string>() << "\n";
  os << "verdict: " << r.value("verdict", "?") << "\n";
}

void render_stage(const std::string& cmd, const json& r, std::ostream& os) {
  if (r.contains("error")) {
    os << "error: " << r["error"]["message"].get<std::string>() << "\n";
    return;
  }
  const json& st = r["stages"];
  if (cmd == "relations") {
    for (auto& e : st["relations"])
      os << "d[" << e["arrow"].get<std::string>() << "]W = " << e["relation"].get<std::string>() << "\n";
  } else if (cmd == "grade") {
    os << "deg W = " << st["grading"]["potential_degree"] << "\n";
    for (auto& [k, v] : st["grading"]["degrees"].items()) os << "  deg " << k << " = " << v.get<int>() << "\n";
    os << "homogeneous: yes (verified on output)\n";
  } else if (cmd == "gb") {
    os << "status: " << st["gb"]["status"].get<std::string>() << " (cap " << st["gb"]["cap"] << ")\n";
    for (auto& e : st["gb"]["elements"]) os << "  " << e.get<std::string>() << "\n";
  } else if (cmd == "basis") {
    os << "verdict: " << st["basis"]["verdict"].get<std::string>() << "\n";
    if (st["basis"].contains("dimension")) os << "dimension: " << st["basis"]["dimension"] << "\n";
    if (st["basis"].contains("words")) {
      for (auto& w : st["basis"]["words"]) os << "  " << w.get<std::string>() << "\n";
    } else {
      os << "counts by length:\n";
      for (auto& [len, m] : st["basis"]["counts_by_length"].items()) {
        os << "  length " << len << ":";
        for (auto& [pair, n] : m.items()) os << ' ' << pair << 'x' << n.get<long>();
        os << "\n";
      }
    }
  } else if (cmd.rfind("resolve:", 0) == 0) {
    os << "module: " << st["resolve"]["module"].get<std::string>() << "\n";
    os << "betti:";
    for (auto& b : st["resolve"]["betti"]) os << ' ' << b.get<int>();
    os << "\n";
    if (st["resolve"]["pdim"].is_number())
      os << "pdim: " << st["resolve"]["pdim"] << "\n";
    else
      os << "pdim: " << st["resolve"]["pdim"].get<std::string>() << "\n";
  }
}

int run_command(const std::string& file, const std::string& cmd, const common_opts& o) {
  frjac_session* s = nullptr;
  frjac_status st = frjac_open_file(file.c_str(), &s);
  if (st == FRJAC_E_IO) {
    std::cerr << "frjac: cannot read '" << file << "'\n";
    return 2;
  }
  if (st != FRJAC_OK) {
    std::cerr << "frjac: failed to open input\n";
    return 2;
  }
  int rc = apply_options(s, o);
  if (rc) {
    frjac_close(s);
    return rc;
  }
  char* out = nullptr;
  st = frjac_run(s, cmd.c_str(), &out);
  if (st != FRJAC_OK) {
    std::cerr << "frjac: " << frjac_last_error(s) << "\n";
    frjac_close(s);
    return 2;
  }
  json rep = json::parse(out);
  if (!o.report_path.empty()) {
    std::ofstream f(o.report_path);
    f << out << "\n";
  }
  if (!o.dump_dir.empty() && rep.contains("stages") && rep["stages"].contains("complex") &&
      rep["stages"]["complex"].contains("matrices")) {
    for (auto& [name, text] : rep["stages"]["complex"]["matrices"].items()) {
      std::ofstream f(o.dump_dir + "/" + name + ".triplets");
      f << text.get<std::string>();
    }
  }
  if (cmd == "check")
    render_check(rep, std::cout);
  else
    render_stage(cmd, rep, std::cout);
  int code = frjac_report_exit_code(out);
  frjac_free(out);
  frjac_close(s);
  return cmd == "check" ? code : (rep.contains("error") ? 2 : 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frjac: frozen Jacobian algebra checker"};
  app.require_subcommand(1);

  std::string file, module_spec;
  common_opts opts;

  auto* check = app.add_subcommand("check", "Full pipeline: decide the bimodule internal 3-CY property");
  check->add_option("file", file, "quiver potential file")->required();
  add_common(check, opts);

  for (const char* name : {"gb", "basis", "relations", "grade"}) {
    auto* c = app.add_subcommand(name, std::string("Run the ") + name + " stage");
    c->add_option("file", file, "quiver potential file")->required();
    add_common(c, opts);
  }

  auto* resolve = app.add_subcommand("resolve", "Minimal projective resolution of S:<v>, P:<v> or I:<v>");
  resolve->add_option("file", file, "quiver potential file")->required();
  resolve->add_option("module", module_spec, "module spec, e.g. S:3")->required();
  add_common(resolve, opts);

  CLI11_PARSE(app, argc, argv);

  std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "resolve") cmd = "resolve:" + module_spec;
  return run_command(file, cmd, opts);
}
