#include "properties.hpp"

#include <functional>

#include "pipeline.hpp"

namespace frjac::props {

namespace {

void record(suite_result& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok) {
    ++r.failures;
    if (r.first_failure.empty()) r.first_failure = what;
  }
}

std::string describe(const random_qp& qp) {
  return print_quiver_file({qp.q, qp.W, rationals()});
}

}  // namespace

suite_result complex_laws_suite(long min_cases, long max_attempts) {
  suite_result res;
  res.name = "composition-zero, homology at A/P0/P1, Euler, self-duality diagram";
  qp_generator gen(0xfecc5u);
  for (long attempt = 0; attempt < max_attempts && res.cases < min_cases; ++attempt) {
    random_qp qp = gen.next();
    field f = rationals();
    groebner_basis gb;
    try {
      gb = buchberger(qp.q, f, jacobian_relations(qp.q, qp.W), 8, length_grading(qp.q, qp.W));
    } catch (const error&) {
      continue;  // inhomogeneous under length (mixed cycle lengths), skip
    }
    if (!gb.complete()) continue;
    normal_word_basis nb = enumerate_basis(gb, 8);
    if (nb.verdict != finiteness::finite || nb.total > 40) continue;
    fd_algebra A = build_fd_algebra(gb, nb);
    bimodule_complex c = build_res_complex(A, gb, qp.q, qp.W);
    complex_check cc = verify_complex(c);
    homology_report h = homology(c, A.dim());
    bool ok = cc.pass() && h.coker_at_A == 0 && h.h[0] == 0 && h.h[1] == 0;
    if (h.verdict == homology_verdict::quasi_iso) ok = ok && c.euler() == A.dim();
    // The self-duality diagram checks are unconditional laws as well.
    dual_complex d = build_dual_complex(A, gb, qp.q, qp.W);
    ok = ok && verify_selfduality_diagram(A, qp.q, c, d).pass();
    record(res, ok, describe(qp));
  }
  return res;
}

suite_result vertex_identity_suite(long cases) {
  suite_result res;
  res.name = "W_v: outgoing and incoming expansions agree at every vertex";
  qp_generator gen(0xbee1u);
  while (res.cases < cases) {
    random_qp qp = gen.next();
    bool ok = true;
    for (int v = 0; v < qp.q.num_vertices() && ok; ++v) {
      auto [lhs, rhs] = vertex_potential_identity(qp.q, qp.W, v);
      ok = lhs == rhs;
    }
    record(res, ok, describe(qp));
  }
  return res;
}

suite_result cyclic_invariance_suite(long cases) {
  suite_result res;
  res.name = "cyclic invariance of the derivative";
  qp_generator gen(0xc1c1eu);
  field f = rationals();
  while (res.cases < cases) {
    random_qp qp = gen.next();
    bool ok = true;
    for (const auto& [w, cf] : qp.W.value().terms()) {
      for (int k = 0; k < w.length() && ok; ++k) {
        potential orig(f), rot(f);
        orig.add_cycle(qp.q, w, cf);
        rot.add_cycle(qp.q, rotate(w, k), cf);
        for (int a = 0; a < qp.q.num_arrows() && ok; ++a)
          ok = cyclic_derivative(qp.q, orig, a) == cyclic_derivative(qp.q, rot, a);
      }
    }
    record(res, ok, describe(qp));
  }
  return res;
}

suite_result confluence_suite(long min_cases, long max_attempts) {
  suite_result res;
  res.name = "Groebner confluence and ideal membership";
  qp_generator gen(0x60ebau);
  while (res.cases < min_cases && max_attempts-- > 0) {
    random_qp qp = gen.next();
    field f = rationals();
    auto rels = jacobian_relations(qp.q, qp.W);
    groebner_basis gb;
    try {
      gb = buchberger(qp.q, f, rels, 8);
    } catch (const error&) {
      continue;
    }
    if (!gb.complete()) continue;
    normal_word_basis nb = enumerate_basis(gb, 4);
    bool ok = true;
    // Ideal membership: u r v reduces to zero.
    for (const auto& r : rels)
      for (const auto& u : nb.words) {
        element x = word_times(qp.q, u, r);
        if (!x.is_zero() && !normal_form(x, gb).is_zero()) ok = false;
        element y = times_word(qp.q, r, u);
        if (!y.is_zero() && !normal_form(y, gb).is_zero()) ok = false;
      }
    // Confluence on products of enumerated words.
    size_t step = nb.words.size() > 12 ? nb.words.size() / 12 : 1;
    for (size_t i = 0; i < nb.words.size() && ok; i += step)
      for (size_t j = 0; j < nb.words.size() && ok; j += step) {
        element x = element::from_word(f, nb.words[i]);
        element y = element::from_word(f, nb.words[j]);
        element direct = normal_form(multiply(qp.q, x, y), gb);
        element staged = normal_form(multiply(qp.q, normal_form(x, gb), normal_form(y, gb)), gb);
        ok = direct == staged;
      }
    record(res, ok, describe(qp));
  }
  return res;
}

suite_result oracle_agreement_suite(long min_cases, long max_attempts) {
  suite_result res;
  res.name = "oracle/engine agreement (monomial bases and graded dimensions)";
  qp_generator gen(0x0aac1eu);
  while (res.cases < min_cases && max_attempts-- > 0) {
    random_qp qp = gen.next();
    field f = rationals();
    auto rels = jacobian_relations(qp.q, qp.W);
    bool monomial = true;
    for (const auto& r : rels) monomial = monomial && r.num_terms() == 1;
    bool ok = true;
    if (monomial && !rels.empty()) {
      std::vector<word> relwords;
      for (const auto& r : rels) relwords.push_back(r.leading().first);
      groebner_basis gb = buchberger(qp.q, f, rels, 8);
      normal_word_basis nb = enumerate_basis(gb, 4);
      std::vector<word> engine;
      for (const auto& w : nb.words)
        if (w.length() <= 4) engine.push_back(w);
      std::sort(engine.begin(), engine.end(),
                [](const word& a, const word& b) { return word_order{}(a, b); });
      auto brute = oracle::brute_monomial_basis(qp.q, relwords, 4);
      ok = brute.size() == engine.size();
      for (size_t i = 0; ok && i < brute.size(); ++i) ok = word_equal(brute[i], engine[i]);
    } else {
      grading g = length_grading(qp.q, qp.W);
      groebner_basis gb;
      try {
        gb = buchberger(qp.q, f, rels, 8, g);
      } catch (const error&) {
        continue;  // mixed cycle lengths: not length-homogeneous
      }
      if (!gb.complete()) continue;
      ok = graded_dimensions(gb, g, 4) == oracle::brute_graded_dims(qp.q, f, rels, g, 4);
    }
    record(res, ok, describe(qp));
  }
  return res;
}

suite_result pipeline_cross_suite(long min_cases, long max_attempts) {
  suite_result res;
  res.name = "pipeline cross-method agreement and consequence soundness";
  qp_generator gen(0xe2e2u);
  long certified = 0;
  while (res.cases < min_cases && max_attempts-- > 0) {
    random_qp qp = gen.next(true);
    if (!find_positive_grading(qp.q, qp.W)) continue;  // completion-sensitive, skipped by design
    run_options opts;
    opts.graded = true;
    opts.gb_cap = 10;
    opts.degree_cap = 8;
    opts.resolve_cap = 6;
    std::string text = print_quiver_file({qp.q, qp.W, rationals()});
    nlohmann::json rep = run_check(text, "fuzz", opts);
    std::string verdict = rep.value("verdict", "?");
    bool ok;
    if (verdict == "Error")
      ok = false;  // internal inconsistency: hard bug by construction
    else if (verdict == "BimoduleInternally3CY") {
      ok = rep["stages"]["cy"]["pass"].get<bool>() && rep["stages"]["graded_check"]["pass"].get<bool>();
      ++certified;
    } else {
      ok = verdict == "NotQuasiIso" || verdict == "BoundedCertificate" || verdict == "Unsupported";
    }
    record(res, ok, text + "\nverdict: " + verdict);
  }
  if (certified == 0) {
    ++res.failures;
    if (res.first_failure.empty()) res.first_failure = "no certified instance was ever generated";
  }
  return res;
}

}  // namespace frjac::props
