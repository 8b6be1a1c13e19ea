#include "pipeline.hpp"

#include <chrono>
#include <cstdlib>

#include "bimodule.hpp"
#include "cyverify.hpp"
#include "parse.hpp"
#include "sha256.hpp"

namespace frjac {

using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<int> env_int(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::atoi(v);
}

std::optional<field> field_from_options(const run_options& o) {
  if (!o.field_name) return std::nullopt;
  if (*o.field_name == "Q") return rationals();
  if (*o.field_name == "Fp") return prime_field(o.prime.value_or(32003));
  throw error(errc::invalid_input, "unknown field '" + *o.field_name + "'");
}

json quiver_summary(const parsed_input& in) {
  json j;
  j["vertices"] = in.q.vertex_names;
  json fv = json::array();
  for (int v = 0; v < in.q.num_vertices(); ++v)
    if (in.q.vertex_frozen[v]) fv.push_back(in.q.vertex_names[v]);
  j["frozen_vertices"] = fv;
  json arrows = json::array();
  for (const auto& a : in.q.arrows) {
    json ja;
    ja["name"] = a.name;
    ja["tail"] = in.q.vertex_names[a.tail];
    ja["head"] = in.q.vertex_names[a.head];
    ja["frozen"] = a.frozen;
    arrows.push_back(ja);
  }
  j["arrows"] = arrows;
  j["potential_terms"] = in.W.value().num_terms();
  j["potential"] = in.W.value().str(in.q);
  return j;
}

json grading_json(const ice_quiver& q, const grading& g) {
  json j;
  json deg;
  for (int a = 0; a < q.num_arrows(); ++a) deg[q.arrows[a].name] = g.arrow_degree[a];
  j["degrees"] = deg;
  j["potential_degree"] = g.potential_degree;
  j["max_degree"] = g.max_degree();
  j["minimal_max"] = g.minimal_max;
  return j;
}

json gb_json(const groebner_basis& gb) {
  json j;
  j["status"] = gb.complete() ? "complete" : "truncated";
  j["cap"] = gb.cap;
  j["size"] = gb.items.size();
  j["max_lead_len"] = gb.max_lead_len;
  json els = json::array();
  for (const auto& it : gb.items) els.push_back(it.poly.str(gb.q));
  j["elements"] = els;
  return j;
}

json basis_json(const groebner_basis& gb, const normal_word_basis& nb) {
  json j;
  switch (nb.verdict) {
    case finiteness::finite:
      j["verdict"] = "finite";
      j["dimension"] = nb.total;
      j["max_word_length"] = nb.bound;
      break;
    case finiteness::infinite_with_growth:
      j["verdict"] = "infinite";
      j["enumerated_to_length"] = nb.bound;
      break;
    case finiteness::unknown_beyond:
      j["verdict"] = "unknown_beyond";
      j["enumerated_to_length"] = nb.bound;
      break;
  }
  json counts;
  for (const auto& [key, n] : nb.counts) {
    auto [t, h, len] = key;
    counts[std::to_string(len)]["(" + gb.q.vertex_names[t] + "->" + gb.q.vertex_names[h] + ")"] = n;
  }
  j["counts_by_length"] = counts;
  return j;
}

json homology_json(const homology_report& h) {
  json j;
  j["coker_at_A"] = h.coker_at_A;
  j["h"] = {h.h[0], h.h[1], h.h[2], h.h[3]};
  j["verdict"] = h.verdict == homology_verdict::quasi_iso ? "quasi_iso" : "not_quasi_iso";
  j["failing_positions"] = h.failing_positions;
  return j;
}

json selfduality_json(const selfduality_report& r) {
  json j;
  j["squares_commute"] = {r.squares[0], r.squares[1], r.squares[2]};
  j["columns_split"] = r.columns_split;
  j["frozen_subcomplex"] = r.frozen_subcomplex;
  j["cone_is_complex"] = r.cone_is_complex;
  j["cone_ends_vanish"] = r.cone_ends_vanish;
  j["cone_term_dims"] = {r.cone_term_dim[0], r.cone_term_dim[1], r.cone_term_dim[2]};
  j["cone_dims_match_frozen"] = r.cone_dims_match_frozen;
  j["cone_homology"] = r.cone_homology;
  j["pass"] = r.pass();
  return j;
}

json cy_json(const cy_report& r) {
  json j;
  json dual;
  dual["balanced"] = r.duality.balanced;
  dual["tested_modules"] = r.duality.tested_modules;
  dual["ext_to_A_concentrated_in_top_degree"] = r.duality.ext_to_A_concentrated;
  dual["ext_to_Ae_vanishes"] = r.duality.ext_to_Ae_vanishes;
  json table = json::array();
  for (const auto& e : r.duality.table)
    table.push_back({{"M", e.M}, {"N", e.N}, {"i", e.i}, {"ext_i_MN", e.lhs}, {"ext_dmi_NM", e.rhs}});
  dual["table"] = table;
  j["duality"] = dual;

  json b;
  b["dim_A"] = r.boundary.dim_A;
  b["dim_B"] = r.boundary.dim_B;
  b["dim_Abar"] = r.boundary.dim_Abar;
  b["dim_AeA"] = r.boundary.dim_AeA;
  b["dims_consistent"] = r.boundary.dims_consistent;
  j["boundary"] = b;

  json g;
  g["pass"] = r.gorenstein.pass;
  g["bound"] = r.gorenstein.bound;
  g["self_injective"] = r.gorenstein.self_injective;
  g["left_ext_table"] = r.gorenstein.left_table;
  g["right_ext_table"] = r.gorenstein.right_table;
  j["gorenstein"] = g;

  json gp;
  gp["pass"] = r.gp.pass;
  gp["ext_eA_B"] = r.gp.ext_eA_B;
  gp["dim_Ae"] = r.gp.dim_Ae;
  gp["ext_eA_eA"] = r.gp.ext_eA_eA;
  gp["dim_A"] = r.gp.dim_A;
  json pdims = json::array();
  for (const auto& [name, pd] : r.gp.hom_pdims) pdims.push_back({{"module", name}, {"pdim", pd}});
  gp["hom_pdims_over_Aop"] = pdims;
  gp["pdim_bound_ok"] = r.gp.pdim_bound_ok;
  j["gp_rigidity"] = gp;

  json en;
  en["pass"] = r.endo.pass;
  en["multiplicative"] = r.endo.multiplicative;
  en["bijective"] = r.endo.bijective;
  en["dim_End_B_eA"] = r.endo.dim_end;
  en["dim_stable_End"] = r.endo.dim_stable_end;
  en["kernel_is_AeA"] = r.endo.kernel_is_AeA;
  j["endo_iso"] = en;

  json st;
  st["experimental"] = true;
  st["attempted"] = r.stable.attempted;
  st["consistent"] = r.stable.consistent;
  json samples = json::array();
  for (const auto& s : r.stable.samples)
    samples.push_back({{"X", s.X}, {"Y", s.Y}, {"stab_hom", s.lhs}, {"stab_hom_shifted", s.rhs}});
  st["samples"] = samples;
  j["stable_cy_spot_check"] = st;

  j["pass"] = r.pass();
  return j;
}

json graded_report_json(const std::vector<graded_simple_report>& reps, const ice_quiver& q, int cap) {
  json j;
  j["cap"] = cap;
  bool all = true;
  json per = json::array();
  for (const auto& r : reps) {
    json e;
    e["vertex"] = q.vertex_names[r.vertex];
    e["pass"] = r.pass;
    e["complex_ok"] = r.complex_ok;
    if (r.first_failure_degree >= 0) e["first_failure_degree"] = r.first_failure_degree;
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"degree", row.degree},
                      {"dims", {row.dims[0], row.dims[1], row.dims[2], row.dims[3], row.dims[4]}},
                      {"homology", {row.h[0], row.h[1], row.h[2], row.h[3], row.h[4]}}});
    }
    e["rows"] = rows;
    per.push_back(e);
    all = all && r.pass;
  }
  j["per_simple"] = per;
  j["pass"] = all;
  return j;
}

struct stage_clock {
  json& timings;
  std::string name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  ~stage_clock() { timings[name] = ms_since(t0); }
};

int verdict_exit(const std::string& v) {
  if (v == "BimoduleInternally3CY" || v == "BoundedCertificate") return 0;
  if (v == "NotQuasiIso") return 1;
  return 2;
}

void finish(json& rep, const std::string& verdict) {
  rep["verdict"] = verdict;
  rep["exit_code"] = verdict_exit(verdict);
}

json error_report(const std::string& name, const error& e) {
  json rep;
  rep["schema"] = "frjac-report/1";
  rep["input"]["name"] = name;
  rep["error"]["message"] = e.what();
  switch (e.code) {
    case errc::parse:
      rep["error"]["kind"] = "parse";
      break;
    case errc::invalid_input:
      rep["error"]["kind"] = "invalid_input";
      break;
    case errc::unsupported:
      rep["error"]["kind"] = "unsupported";
      break;
    case errc::uncertified:
      rep["error"]["kind"] = "uncertified";
      break;
    default:
      rep["error"]["kind"] = "internal";
      break;
  }
  finish(rep, e.code == errc::unsupported ? "Unsupported" : "Error");
  return rep;
}

struct prepared {
  parsed_input in;
  grading grad;
  std::vector<element> rels;
  groebner_basis gb;
  int gb_cap;
  int graded_cap;
  bool graded_cap_explicit;
};

// Parse, grade, derive relations and complete the rewriting system. Throws
// errc::unsupported when no positive grading makes W homogeneous.
prepared prepare(const std::string& text, const run_options& opts, json& rep, json& timings) {
  prepared p;
  {
    stage_clock c{timings, "parse"};
    p.in = parse_ice_qp(text, field_from_options(opts));
    rep["stages"]["parse"] = quiver_summary(p.in);
  }
  rep["input"]["field"] = p.in.fld.name();
  if (p.in.fld.kind == field_kind::prime) rep["input"]["prime"] = p.in.fld.p;
  rep["certificate"] = p.in.fld.kind == field_kind::rationals ? "definitive" : "characteristic-p";

  {
    stage_clock c{timings, "grading"};
    if (p.in.W.is_zero()) {
      p.grad = length_grading(p.in.q, p.in.W);
      rep["stages"]["grading"] = grading_json(p.in.q, p.grad);
      rep["stages"]["grading"]["feasible"] = true;
      rep["stages"]["grading"]["note"] = "zero potential; length grading";
    } else {
      auto g = find_positive_grading(p.in.q, p.in.W);
      if (!g) {
        rep["stages"]["grading"]["feasible"] = false;
        throw error(errc::unsupported,
                    "no positive grading makes the potential homogeneous; "
                    "the quotient is completion-sensitive and outside the supported regimes");
      }
      p.grad = *g;
      rep["stages"]["grading"] = grading_json(p.in.q, p.grad);
      rep["stages"]["grading"]["feasible"] = true;
    }
  }

  p.rels = jacobian_relations(p.in.q, p.in.W);
  json rel = json::array();
  for (int a : p.in.q.unfrozen_arrows()) {
    element d = cyclic_derivative(p.in.q, p.in.W, a);
    if (!d.is_zero()) rel.push_back({{"arrow", p.in.q.arrows[a].name}, {"relation", d.str(p.in.q)}});
  }
  rep["stages"]["relations"] = rel;

  int max_term = p.in.W.value().max_length();
  p.graded_cap = opts.degree_cap.value_or(2 * p.grad.potential_degree + p.grad.max_degree());
  p.graded_cap_explicit = opts.degree_cap.has_value();
  p.gb_cap = opts.gb_cap.value_or(2 * max_term + 8);
  if (opts.graded) p.gb_cap = std::max(p.gb_cap, p.graded_cap);

  {
    stage_clock c{timings, "gb"};
    p.gb = buchberger(p.in.q, p.in.fld, p.rels, p.gb_cap, p.grad);
    rep["stages"]["gb"] = gb_json(p.gb);
  }
  return p;
}

}  // namespace

run_options with_env_defaults(run_options o) {
  if (!o.gb_cap) o.gb_cap = env_int("FRJAC_GB_CAP");
  if (!o.degree_cap) o.degree_cap = env_int("FRJAC_DEGREE_CAP");
  if (!o.resolve_cap) o.resolve_cap = env_int("FRJAC_RESOLVE_CAP");
  return o;
}

json run_check(const std::string& text, const std::string& name, const run_options& opts_in) {
  run_options opts = with_env_defaults(opts_in);
  json rep;
  rep["schema"] = "frjac-report/1";
  rep["input"]["name"] = name;
  rep["input"]["sha256"] = sha256_hex(text);
  json& timings = rep["timings_ms"];
  rep["options"]["graded"] = opts.graded;
  if (opts.degree_cap) rep["options"]["degree_cap"] = *opts.degree_cap;
  if (opts.gb_cap) rep["options"]["gb_cap"] = *opts.gb_cap;

  try {
    prepared p = prepare(text, opts, rep, timings);
    const int resolve_cap = opts.resolve_cap.value_or(12);

    normal_word_basis nb;
    {
      stage_clock c{timings, "basis"};
      nb = enumerate_basis(p.gb, p.gb_cap);
      rep["stages"]["basis"] = basis_json(p.gb, nb);
    }

    if (nb.verdict == finiteness::finite) {
      fd_algebra A;
      {
        stage_clock c{timings, "algebra"};
        A = build_fd_algebra(p.gb, nb);
        rep["stages"]["algebra"]["dim"] = A.dim();
        auto gd = global_dimension(A, resolve_cap);
        if (gd)
          rep["stages"]["algebra"]["global_dimension"] = *gd;
        else
          rep["stages"]["algebra"]["global_dimension"] = ">= " + std::to_string(resolve_cap);
      }

      bimodule_complex res;
      {
        stage_clock c{timings, "complex"};
        res = build_res_complex(A, p.gb, p.in.q, p.in.W);
        complex_check cc = verify_complex(res);
        rep["stages"]["complex"]["dims"] = {res.dim(0), res.dim(1), res.dim(2), res.dim(3)};
        rep["stages"]["complex"]["composition_zero"] = {
            {"mu0_mu1", cc.mu0_mu1}, {"mu1_mu2", cc.mu1_mu2}, {"mu2_mu3", cc.mu2_mu3}};
        rep["stages"]["complex"]["euler"] = res.euler();
        rep["stages"]["complex"]["euler_matches_dim"] = res.euler() == A.dim();
        if (opts.dump_matrices) {
          rep["stages"]["complex"]["matrices"] = {{"mu1", res.d1.dump_triplets()},
                                                  {"mu2", res.d2.dump_triplets()},
                                                  {"mu3", res.d3.dump_triplets()},
                                                  {"mu0", res.aug.dump_triplets()}};
        }
        if (!cc.pass()) {
          finish(rep, "Error");
          rep["error"]["kind"] = "internal";
          rep["error"]["message"] = "composition-zero law failed; this is a bug, the law is unconditional";
          return rep;
        }
      }

      homology_report hom;
      {
        stage_clock c{timings, "homology"};
        hom = homology(res, A.dim());
        rep["stages"]["homology"] = homology_json(hom);
      }
      bool quasi = hom.verdict == homology_verdict::quasi_iso;
      if (quasi && res.euler() != A.dim()) {
        finish(rep, "Error");
        rep["error"]["message"] = "Euler inconsistency on a quasi-isomorphism verdict";
        return rep;
      }

      {
        stage_clock c{timings, "selfduality"};
        dual_complex dual = build_dual_complex(A, p.gb, p.in.q, p.in.W);
        rep["stages"]["selfduality"] = selfduality_json(verify_selfduality_diagram(A, p.in.q, res, dual));
      }

      std::vector<bool> frozen = p.in.q.vertex_frozen;
      if (quasi) {
        stage_clock c{timings, "cy"};
        cy_report cy = run_cy_suite(A, frozen, 3);
        rep["stages"]["cy"] = cy_json(cy);
        if (!cy.pass()) {
          finish(rep, "Error");
          rep["error"]["message"] =
              "quasi-isomorphism certified but a Calabi-Yau consequence check failed; hard bug";
          return rep;
        }
      }

      if (opts.graded) {
        stage_clock c{timings, "graded_check"};
        // Finite case: extend the cap to the top internal degree of the
        // complex, so the per-simple verdicts see everything and must agree
        // with the direct homology verdict.
        int top = 0;
        for (const auto& w : A.b_word) top = std::max(top, p.grad.degree_of(w));
        int cap = std::max(p.graded_cap, top + p.grad.potential_degree);
        if (!p.gb.complete() && p.gb.cap < cap)
          p.gb = buchberger(p.in.q, p.in.fld, p.rels, cap, p.grad);
        std::vector<graded_simple_report> reports;
        for (int v = 0; v < p.in.q.num_vertices(); ++v)
          reports.push_back(graded_per_simple_check(p.gb, p.grad, p.in.W, v, cap));
        json gj = graded_report_json(reports, p.in.q, cap);
        rep["stages"]["graded_check"] = gj;
        if (gj["pass"].get<bool>() != quasi) {
          finish(rep, "Error");
          rep["error"]["message"] = "graded per-simple verdicts disagree with the direct homology verdict";
          return rep;
        }
      }

      std::string frozen_idem;
      for (int v = 0; v < p.in.q.num_vertices(); ++v)
        if (frozen[v]) frozen_idem += (frozen_idem.empty() ? "" : "+") + ("e_" + p.in.q.vertex_names[v]);
      rep["frozen_idempotent"] = frozen_idem.empty() ? "0" : frozen_idem;
      finish(rep, quasi ? "BimoduleInternally3CY" : "NotQuasiIso");
      return rep;
    }

    // Infinite (or undecided) dimension: only the graded route can certify.
    if (!opts.graded) {
      finish(rep, "Unsupported");
      rep["error"]["kind"] = "unsupported";
      rep["error"]["message"] =
          "the algebra is not finite-dimensional (basis verdict: " +
          rep["stages"]["basis"]["verdict"].get<std::string>() + "); rerun with --graded for a bounded certificate";
      return rep;
    }
    {
      stage_clock c{timings, "graded_check"};
      std::vector<graded_simple_report> reports;
      for (int v = 0; v < p.in.q.num_vertices(); ++v)
        reports.push_back(graded_per_simple_check(p.gb, p.grad, p.in.W, v, p.graded_cap));
      json gj = graded_report_json(reports, p.in.q, p.graded_cap);
      rep["stages"]["graded_check"] = gj;
      if (gj["pass"].get<bool>()) {
        finish(rep, "BoundedCertificate");
        rep["certificate_degree_cap"] = p.graded_cap;
      } else {
        finish(rep, "NotQuasiIso");
      }
    }
    return rep;
  } catch (const error& e) {
    json er = error_report(name, e);
    er["input"] = rep["input"];
    if (rep.contains("stages")) er["stages"] = rep["stages"];
    return er;
  }
}

json run_stage(const std::string& text, const std::string& name, const std::string& command,
               const run_options& opts_in) {
  run_options opts = with_env_defaults(opts_in);
  json rep;
  rep["schema"] = "frjac-report/1";
  rep["input"]["name"] = name;
  rep["input"]["sha256"] = sha256_hex(text);
  json& timings = rep["timings_ms"];

  try {
    if (command == "grade" || command == "relations" || command == "gb" || command == "basis") {
      prepared p = prepare(text, opts, rep, timings);
      if (command == "basis") {
        stage_clock c{timings, "basis"};
        normal_word_basis nb = enumerate_basis(p.gb, p.gb_cap);
        rep["stages"]["basis"] = basis_json(p.gb, nb);
        if (nb.verdict == finiteness::finite) {
          json words = json::array();
          for (const auto& w : nb.words) words.push_back(word_str(w, p.in.q));
          rep["stages"]["basis"]["words"] = words;
        }
      }
      finish(rep, "Ok");
      rep["exit_code"] = 0;
      return rep;
    }
    if (command.rfind("resolve:", 0) == 0) {
      prepared p = prepare(text, opts, rep, timings);
      normal_word_basis nb = enumerate_basis(p.gb, p.gb_cap);
      rep["stages"]["basis"] = basis_json(p.gb, nb);
      if (nb.verdict != finiteness::finite)
        throw error(errc::unsupported, "resolve requires a finite-dimensional algebra");
      fd_algebra A = build_fd_algebra(p.gb, nb);
      std::string spec = command.substr(8);
      auto colon = spec.find(':');
      if (colon == std::string::npos) throw error(errc::invalid_input, "module spec must be S:<v>, P:<v> or I:<v>");
      std::string kind = spec.substr(0, colon);
      int v = p.in.q.vertex_index(spec.substr(colon + 1));
      if (v < 0) throw error(errc::invalid_input, "unknown vertex in module spec '" + spec + "'");
      module_rep M;
      if (kind == "S")
        M = simple_module(A, v);
      else if (kind == "P")
        M = projective_module(A, v);
      else if (kind == "I")
        M = injective_module(A, v);
      else
        throw error(errc::invalid_input, "module kind must be S, P or I");
      int cap = opts.resolve_cap.value_or(12);
      stage_clock c{timings, "resolve"};
      resolution r = minimal_projective_resolution(M, cap);
      json rj;
      rj["module"] = spec;
      rj["betti"] = r.betti();
      json gens = json::array();
      for (const auto& term : r.gens) {
        json t = json::array();
        for (int g : term) t.push_back(p.in.q.vertex_names[g]);
        gens.push_back(t);
      }
      rj["generators"] = gens;
      if (r.terminated)
        rj["pdim"] = r.pdim;
      else
        rj["pdim"] = ">= " + std::to_string(cap);
      rep["stages"]["resolve"] = rj;
      finish(rep, "Ok");
      rep["exit_code"] = 0;
      return rep;
    }
    if (command == "check") return run_check(text, name, opts_in);
    throw error(errc::invalid_input, "unknown command '" + command + "'");
  } catch (const error& e) {
    json er = error_report(name, e);
    er["input"] = rep["input"];
    if (rep.contains("stages")) er["stages"] = rep["stages"];
    return er;
  }
}

int exit_code_of(const json& report) { return report.value("exit_code", 2); }

std::string golden_form(const json& report) {
  json r = report;
  r.erase("timings_ms");
  return r.dump(2);
}

}  // namespace frjac
