#include <catch2/catch_amalgamated.hpp>

#include "fdalg.hpp"
#include "parse.hpp"

using namespace frjac;

namespace {

struct setup {
  parsed_input in;
  groebner_basis gb;
  fd_algebra A;
};

setup make(const std::string& text) {
  setup s;
  s.in = parse_ice_qp(text);
  s.gb = buchberger(s.in.q, s.in.fld, jacobian_relations(s.in.q, s.in.W), 12);
  s.A = build_fd_algebra(s.gb, enumerate_basis(s.gb, 12));
  return s;
}

setup triangle_ice() {
  return make(
      "field Q\nvertices 1 2 3\nfrozen_vertices 1 2\narrows\n  a1: 1 -> 2 frozen\n  a2: 2 -> 3\n"
      "  a3: 3 -> 1\npotential\n  a3 a2 a1\n");
}

setup triangle_plain() {
  return make("vertices 1 2 3\narrows\n  a1: 1 -> 2\n  a2: 2 -> 3\n  a3: 3 -> 1\npotential\n  a3 a2 a1\n");
}

std::vector<bool> frozen_of(const parsed_input& in) { return in.q.vertex_frozen; }

}  // namespace

TEST_CASE("algebra dimensions") {
  CHECK(triangle_ice().A.dim() == 7);
  CHECK(triangle_plain().A.dim() == 6);
  setup semis = make("vertices 1 2 3\narrows\n");
  CHECK(semis.A.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(semis.A.mult[i][j].size() == (i == j ? 1u : 0u));
}

TEST_CASE("associativity on all basis triples") {
  setup s = triangle_ice();
  const fd_algebra& A = s.A;
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      for (int k = 0; k < A.dim(); ++k) {
        alg_vec bi{{i, one(A.fld)}}, bj{{j, one(A.fld)}}, bk{{k, one(A.fld)}};
        CHECK(A.product(A.product(bi, bj), bk) == A.product(bi, A.product(bj, bk)));
      }
}

TEST_CASE("projective and simple module shapes") {
  setup s = triangle_ice();
  module_rep P1 = projective_module(s.A, 0);
  CHECK(P1.dims == std::vector<int>{1, 1, 0});
  module_rep P2 = projective_module(s.A, 1);
  CHECK(P2.dims == std::vector<int>{1, 1, 1});
  module_rep S3 = simple_module(s.A, 2);
  CHECK(S3.total_dim() == 1);
  module_rep I1 = injective_module(s.A, 0);
  CHECK(I1.total_dim() == 3);  // dual of e_1 A = {e1, a3, a3 a2}
  module_rep R1 = radical_of_projective(s.A, 0);
  CHECK(R1.total_dim() == P1.total_dim() - 1);
}

TEST_CASE("hom spaces and Yoneda") {
  setup s = triangle_ice();
  for (int v = 0; v < 3; ++v) {
    CHECK(hom_dim(simple_module(s.A, v), simple_module(s.A, v)) == 1);
    for (int w = 0; w < 3; ++w)
      if (v != w) CHECK(hom_dim(simple_module(s.A, v), simple_module(s.A, w)) == 0);
  }
  // dim Hom(P_v, M) = dim M_v for every standard test module.
  for (int v = 0; v < 3; ++v) {
    module_rep Pv = projective_module(s.A, v);
    for (int w = 0; w < 3; ++w) {
      module_rep M = projective_module(s.A, w);
      CHECK(hom_dim(Pv, M) == M.dims[v]);
      module_rep I = injective_module(s.A, w);
      CHECK(hom_dim(Pv, I) == I.dims[v]);
    }
  }
  // hom(P1, P2) = dim e_1 A e_2 = 1 (the path a3 a2).
  CHECK(hom_dim(projective_module(s.A, 0), projective_module(s.A, 1)) == 1);
}

TEST_CASE("minimal resolutions and pdim") {
  setup s = triangle_ice();
  module_rep P2 = projective_module(s.A, 1);
  resolution r0 = minimal_projective_resolution(P2, 8);
  CHECK(r0.terminated);
  CHECK(r0.pdim == 0);

  resolution r3 = minimal_projective_resolution(simple_module(s.A, 2), 8);
  CHECK(r3.terminated);
  CHECK(r3.pdim <= 3);
  CHECK(r3.pdim == 3);
  CHECK(r3.betti() == std::vector<int>{1, 1, 1, 1});

  setup p = triangle_plain();
  resolution rp = minimal_projective_resolution(simple_module(p.A, 0), 10);
  CHECK_FALSE(rp.terminated);
}

TEST_CASE("global dimension") {
  setup s = triangle_ice();
  auto g = global_dimension(s.A, 12);
  REQUIRE(g.has_value());
  CHECK(*g <= 3);
  CHECK(*g == 3);

  setup p = triangle_plain();
  CHECK_FALSE(global_dimension(p.A, 12).has_value());

  setup semis = make("vertices 1 2 3\narrows\n");
  CHECK(global_dimension(semis.A, 4) == 0);
}

TEST_CASE("ext dimensions") {
  setup s = triangle_ice();
  module_rep S3 = simple_module(s.A, 2);
  module_rep P2 = projective_module(s.A, 1);
  // Projective first argument: Ext concentrated in degree 0.
  std::vector<int> e = ext_dims(P2, S3, 3);
  CHECK(e[0] == hom_dim(P2, S3));
  CHECK(e[1] == 0);
  CHECK(e[2] == 0);
  CHECK(e[3] == 0);
  // Self-dual palindrome for the boundary-killed simple.
  std::vector<int> es = ext_dims(S3, S3, 3);
  CHECK(es[0] == es[3]);
  CHECK(es[1] == es[2]);
  // Ext^0 agrees with the intertwiner count for assorted pairs.
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) {
      module_rep M = simple_module(s.A, v), N = injective_module(s.A, w);
      CHECK(ext_dims(M, N, 0)[0] == hom_dim(M, N));
    }
}

TEST_CASE("idempotent subalgebra eAe") {
  setup s = triangle_ice();
  std::vector<int> kept;
  fd_algebra B = idempotent_subalgebra(s.A, frozen_of(s.in), &kept);
  CHECK(B.dim() == 4);
  std::vector<std::string> labels;
  for (const auto& l : B.b_label) labels.push_back(l);
  CHECK(std::find(labels.begin(), labels.end(), "a1") != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), "a3 a2") != labels.end());
  // a1 . (a3 a2) = 0 = (a3 a2) . a1 inside B.
  int ia1 = -1, ia32 = -1;
  for (int i = 0; i < B.dim(); ++i) {
    if (B.b_label[i] == "a1") ia1 = i;
    if (B.b_label[i] == "a3 a2") ia32 = i;
  }
  REQUIRE(ia1 >= 0);
  REQUIRE(ia32 >= 0);
  CHECK(B.mult[ia1][ia32].empty());
  CHECK(B.mult[ia32][ia1].empty());
}

TEST_CASE("quotient by the frozen idempotent") {
  setup s = triangle_ice();
  fd_algebra Abar = quotient_by_idempotent(s.A, frozen_of(s.in));
  CHECK(Abar.dim() == 1);
  CHECK(Abar.nblocks == 1);
  CHECK(Abar.block_names[0] == "3");
  CHECK(ideal_dimension(s.A, frozen_of(s.in)) == 6);

  // e = 1: B = A and the quotient is zero.
  std::vector<bool> all(3, true);
  fd_algebra B = idempotent_subalgebra(s.A, all);
  CHECK(B.dim() == s.A.dim());
  fd_algebra zero = quotient_by_idempotent(s.A, all);
  CHECK(zero.dim() == 0);
  CHECK(ideal_dimension(s.A, all) == s.A.dim());
}

TEST_CASE("opposite algebra") {
  setup s = triangle_ice();
  fd_algebra Aop = opposite_algebra(s.A);
  CHECK(Aop.dim() == s.A.dim());
  fd_algebra back = opposite_algebra(Aop);
  for (int i = 0; i < s.A.dim(); ++i)
    for (int j = 0; j < s.A.dim(); ++j) CHECK(back.mult[i][j] == s.A.mult[i][j]);
  auto g = global_dimension(Aop, 12);
  REQUIRE(g.has_value());
  CHECK(*g == *global_dimension(s.A, 12));
}

TEST_CASE("syzygy of a projective vanishes") {
  setup s = triangle_ice();
  CHECK(syzygy_module(projective_module(s.A, 1)).total_dim() == 0);
  module_rep S3 = simple_module(s.A, 2);
  module_rep Om = syzygy_module(S3);
  resolution r = minimal_projective_resolution(S3, 8);
  resolution ro = minimal_projective_resolution(Om, 8);
  CHECK(ro.terminated);
  CHECK(ro.pdim == r.pdim - 1);
}

TEST_CASE("dimension bookkeeping") {
  setup s = triangle_ice();
  // dim A = sum over (u, v) of dim e_u A e_v.
  std::map<std::pair<int, int>, int> sector;
  for (int i = 0; i < s.A.dim(); ++i) ++sector[{s.A.b_head[i], s.A.b_tail[i]}];
  int total = 0;
  for (const auto& [k, n] : sector) total += n;
  CHECK(total == s.A.dim());
  CHECK(ideal_dimension(s.A, frozen_of(s.in)) + quotient_by_idempotent(s.A, frozen_of(s.in)).dim() ==
        s.A.dim());
}

TEST_CASE("ext via the bimodule route vanishes on projectives") {
  setup s = triangle_ice();
  // handled in oracle tests through acceptance; here the minimal route:
  module_rep P = projective_module(s.A, 1);
  for (int v = 0; v < 3; ++v) {
    std::vector<int> e = ext_dims(P, simple_module(s.A, v), 3);
    CHECK(e[1] == 0);
    CHECK(e[2] == 0);
    CHECK(e[3] == 0);
  }
}

TEST_CASE("ext against the zero module") {
  setup s = triangle_ice();
  module_rep Z = zero_module(s.A);
  std::vector<int> e = ext_dims(simple_module(s.A, 2), Z, 3);
  CHECK(e == std::vector<int>{0, 0, 0, 0});
  CHECK(hom_dim(Z, simple_module(s.A, 0)) == 0);
  CHECK(ext_dims(Z, simple_module(s.A, 0), 2) == std::vector<int>{0, 0, 0});
}

TEST_CASE("building a finite algebra requires a finite verdict") {
  parsed_input in = parse_ice_qp("vertices 1 2\narrows\n  a: 1 -> 2\n  b: 2 -> 1\n");
  groebner_basis gb = buchberger(in.q, in.fld, {}, 8);
  normal_word_basis nb = enumerate_basis(gb, 6);
  REQUIRE(nb.verdict == finiteness::infinite_with_growth);
  CHECK_THROWS_AS(build_fd_algebra(gb, nb), error);
}
