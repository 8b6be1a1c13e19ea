#pragma once

#include <string>
#include <vector>

#include "fdalg.hpp"

namespace frjac {

struct named_module {
  std::string name;
  module_rep rep;
};

// Simples, indecomposable projectives and injectives, and radicals of
// projectives, for every block.
std::vector<named_module> standard_test_modules(const fd_algebra& A);

struct duality_entry {
  std::string M, N;
  int i;
  int lhs, rhs;  // dim Ext^i(M,N) and dim Ext^{d-i}(N,M)
};

struct duality_report {
  std::vector<duality_entry> table;
  bool balanced = false;
  // Prop-style vanishing for every e-killed X: Ext^i(X, A) = 0 for i != d and
  // Ext^i(X, Ae) = 0 for all i.
  bool ext_to_A_concentrated = false;
  bool ext_to_Ae_vanishes = false;
  int tested_modules = 0;  // number of e-killed M in the test set
};

duality_report check_internal_cy_duality(const fd_algebra& A, const std::vector<bool>& frozen, int d);

struct boundary_data {
  fd_algebra B;     // eAe
  fd_algebra Abar;  // A/AeA
  int dim_A = 0, dim_B = 0, dim_Abar = 0, dim_AeA = 0;
  bool dims_consistent = false;  // dim A = dim AeA + dim Abar
};

boundary_data boundary_report(const fd_algebra& A, const std::vector<bool>& frozen);

struct gorenstein_report {
  bool pass = false;          // injective dimension <= d on both sides
  int bound = -1;             // least g with Ext^{g+1}(S, B) = 0 on both sides
  bool self_injective = false;
  std::vector<std::vector<int>> left_table, right_table;  // per simple: Ext^1..Ext^{d+1}(S, B)
};

gorenstein_report gorenstein_bound(const fd_algebra& B, int d);

// eA as a left B-module, with the A-basis element behind every coordinate.
struct eA_module {
  module_rep rep;                       // over B
  std::vector<std::vector<int>> elems;  // per B-block: A-basis indices (head in the block)
};

eA_module build_eA_module(const fd_algebra& A, const fd_algebra& B, const std::vector<bool>& frozen);

// Left regular module of B with tracked basis (block u carries e_u B).
struct tracked_regular_module {
  module_rep rep;
  std::vector<std::vector<int>> elems;  // per block: B-basis indices
};

tracked_regular_module tracked_regular(const fd_algebra& B);

struct gp_report {
  bool pass = false;
  std::vector<int> ext_eA_B;    // Ext^0..d(eA, B); required: 0 in degrees 1..d
  int dim_Ae = 0;               // required: = ext_eA_B[0]
  std::vector<int> ext_eA_eA;   // Ext^0..d(eA, eA); required: 0 for 0 < i < d-1
  int dim_A = 0;                // required: = ext_eA_eA[0]
  // pdim over A^op of Hom_B(X, eA) for the named test modules (<= d-2).
  std::vector<std::pair<std::string, int>> hom_pdims;
  bool pdim_bound_ok = false;
};

gp_report gp_and_rigidity(const fd_algebra& A, const fd_algebra& B, const std::vector<bool>& frozen, int d);

struct endo_report {
  bool pass = false;
  bool multiplicative = false;  // R_{ab} = R_b o R_a on all basis pairs
  bool bijective = false;
  int dim_end = 0;
  int dim_stable_end = 0;   // required: = dim Abar
  bool kernel_is_AeA = false;
};

endo_report endo_iso_check(const fd_algebra& A, const fd_algebra& B, const std::vector<bool>& frozen,
                           int dim_Abar);

// Experimental spot-check of the stable (d-1)-Calabi-Yau symmetry on sampled
// Gorenstein projective pairs, with cosyzygies computed through the
// Hom_B(-, B) duality. Reported, never aggregated into pass/fail.
struct stable_cy_sample {
  std::string X, Y;
  int lhs, rhs;  // dim stabHom(X, Y) vs dim stabHom(Y, cosyzygy^{d-1} X)
};

struct stable_cy_report {
  bool attempted = false;
  bool consistent = false;
  std::vector<stable_cy_sample> samples;
};

stable_cy_report stable_cy_spot_check(const fd_algebra& A, const fd_algebra& B,
                                      const std::vector<bool>& frozen, int d);

struct cy_report {
  duality_report duality;
  boundary_data boundary;
  gorenstein_report gorenstein;
  gp_report gp;
  endo_report endo;
  stable_cy_report stable;
  bool pass() const {
    return duality.balanced && duality.ext_to_A_concentrated && duality.ext_to_Ae_vanishes &&
           boundary.dims_consistent && gorenstein.pass && gp.pass && endo.pass;
  }
};

cy_report run_cy_suite(const fd_algebra& A, const std::vector<bool>& frozen, int d);

}  // namespace frjac
