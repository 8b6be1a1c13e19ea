#include <catch2/catch_amalgamated.hpp>

#include "parse.hpp"

using namespace frjac;

namespace {

const char* kTriangleIce = R"(field Q
vertices 1 2 3
frozen_vertices 1 2
arrows
  a1: 1 -> 2 frozen
  a2: 2 -> 3
  a3: 3 -> 1
potential
  a3 a2 a1
)";

}  // namespace

TEST_CASE("parse the frozen triangle") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  REQUIRE(in.q.num_vertices() == 3);
  REQUIRE(in.q.num_arrows() == 3);
  CHECK(in.q.vertex_frozen[0]);
  CHECK(in.q.vertex_frozen[1]);
  CHECK_FALSE(in.q.vertex_frozen[2]);
  CHECK(in.q.arrows[0].frozen);
  CHECK_FALSE(in.q.arrows[1].frozen);
  REQUIRE(in.W.value().num_terms() == 1);
  auto [w, c] = in.W.value().leading();
  CHECK(w.length() == 3);
  CHECK(c.is_one());
  CHECK(in.fld.kind == field_kind::rationals);
}

TEST_CASE("empty potential section gives the zero potential") {
  parsed_input in = parse_ice_qp("vertices 1 2\narrows\n  a: 1 -> 2\npotential\n");
  CHECK(in.W.is_zero());
  parsed_input in2 = parse_ice_qp("vertices 1 2\narrows\n  a: 1 -> 2\n");
  CHECK(in2.W.is_zero());
}

TEST_CASE("non-cycle potential terms are rejected with a location") {
  const char* text = "vertices 1 2 3\narrows\n  a1: 1 -> 2\n  a2: 2 -> 3\npotential\n  a2 a1\n";
  try {
    parse_ice_qp(text);
    FAIL("expected a parse error");
  } catch (const error& e) {
    CHECK(e.code == errc::parse);
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    CHECK(std::string(e.what()).find("not a cycle") != std::string::npos);
  }
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_ice_qp("vertices 1 2\narrows\n  a: 1 -> 1\n"), error);  // loop
  CHECK_THROWS_AS(parse_ice_qp("vertices 1 2\nfrozen_vertices 1\narrows\n  a: 1 -> 2 frozen\n"),
                  error);  // frozen arrow, unfrozen head
  CHECK_THROWS_AS(parse_ice_qp("vertices 1 1\narrows\n"), error);  // duplicate vertex
  CHECK_THROWS_AS(parse_ice_qp("arrows\n  a: 1 -> 2\n"), error);   // arrows before vertices
  CHECK_THROWS_AS(parse_ice_qp("vertices 1 2 3\narrows\n  a1: 1 -> 2\n  a2: 2 -> 3\npotential\n  a1 a2\n"),
                  error);  // non-composable reading right-to-left
  CHECK_THROWS_AS(parse_ice_qp("field Fp 4\nvertices 1\narrows\n"), error);  // 4 is not prime
}

TEST_CASE("field directives") {
  parsed_input in = parse_ice_qp("field Fp 7\nvertices 1 2\narrows\n  a: 1 -> 2\n");
  CHECK(in.fld.kind == field_kind::prime);
  CHECK(in.fld.p == 7);
  parsed_input dflt = parse_ice_qp("field Fp\nvertices 1 2\narrows\n  a: 1 -> 2\n");
  CHECK(dflt.fld.p == 32003);
  parsed_input over = parse_ice_qp(kTriangleIce, prime_field(5));
  CHECK(over.fld.p == 5);
}

TEST_CASE("compose follows the right-to-left convention") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  word a1 = arrow_word(in.q, 0), a2 = arrow_word(in.q, 1);
  auto p = compose(in.q, a2, a1);  // a2 a1 : 1 -> 3
  REQUIRE(p.has_value());
  CHECK(tail_of(*p, in.q) == 0);
  CHECK(head_of(*p, in.q) == 2);
  CHECK_FALSE(compose(in.q, a1, a2).has_value());
  auto e2a1 = compose(in.q, idempotent_word(1), a1);
  REQUIRE(e2a1.has_value());
  CHECK(word_equal(*e2a1, a1));
}

TEST_CASE("compose is associative and idempotents are units") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  word a1 = arrow_word(in.q, 0), a2 = arrow_word(in.q, 1), a3 = arrow_word(in.q, 2);
  auto left = compose(in.q, a3, *compose(in.q, a2, a1));
  auto right = compose(in.q, *compose(in.q, a3, a2), a1);
  REQUIRE(left.has_value());
  REQUIRE(right.has_value());
  CHECK(word_equal(*left, *right));
  for (const word& p : {a1, *left}) {
    CHECK(word_equal(*compose(in.q, idempotent_word(head_of(p, in.q)), p), p));
    CHECK(word_equal(*compose(in.q, p, idempotent_word(tail_of(p, in.q))), p));
  }
}

TEST_CASE("validate reports violations as data") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  CHECK(validate(in.q).empty());

  ice_quiver bad = in.q;
  bad.arrows.push_back({"loop", 2, 2, false});
  auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == violation_kind::loop_arrow);

  ice_quiver bad2 = in.q;
  bad2.arrows.push_back({"f", 0, 2, true});  // 1 -> 3 frozen, but 3 unfrozen
  auto v2 = validate(bad2);
  REQUIRE(v2.size() == 1);
  CHECK(v2[0].kind == violation_kind::frozen_arrow_endpoint);
}

TEST_CASE("multiplication distributes and respects endpoints") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  const field f = in.fld;
  element x(f), y(f), z(f);
  x.add_term(arrow_word(in.q, 1), scalar(f, 2));
  y.add_term(arrow_word(in.q, 0), scalar(f, 1));
  y.add_term(idempotent_word(0), scalar(f, 3));
  z.add_term(idempotent_word(1), scalar(f, 1));
  element sum = y;
  sum += z;
  element d = multiply(in.q, x, sum);
  element e = multiply(in.q, x, y);
  e += multiply(in.q, x, z);
  CHECK(d == e);
  int t, h;
  CHECK(endpoint_homogeneous(multiply(in.q, x, y), in.q, &t, &h));
}

TEST_CASE("potential terms are stored by canonical rotation") {
  parsed_input in = parse_ice_qp(kTriangleIce);
  word cyc;
  cyc.seq = {0, 1, 2};
  word rot = rotate(cyc, 1);
  CHECK(word_equal(canonical_rotation(cyc), canonical_rotation(rot)));
  potential W1(in.fld), W2(in.fld);
  W1.add_cycle(in.q, cyc, one(in.fld));
  W2.add_cycle(in.q, rot, one(in.fld));
  CHECK(W1.value() == W2.value());
}

TEST_CASE("print/parse round trip") {
  for (const char* text : {kTriangleIce,
                           "field Fp 7\nvertices 1 2 3\narrows\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 3 -> 1\n"
                           "potential\n  2 c b a\n"}) {
    parsed_input in = parse_ice_qp(text);
    parsed_input back = parse_ice_qp(print_quiver_file(in));
    CHECK(back.q.vertex_names == in.q.vertex_names);
    CHECK(back.q.vertex_frozen == in.q.vertex_frozen);
    REQUIRE(back.q.num_arrows() == in.q.num_arrows());
    for (int a = 0; a < in.q.num_arrows(); ++a) {
      CHECK(back.q.arrows[a].name == in.q.arrows[a].name);
      CHECK(back.q.arrows[a].tail == in.q.arrows[a].tail);
      CHECK(back.q.arrows[a].head == in.q.arrows[a].head);
      CHECK(back.q.arrows[a].frozen == in.q.arrows[a].frozen);
    }
    CHECK(back.W.value() == in.W.value());
    CHECK((back.fld == in.fld));
  }
}

TEST_CASE("fractional coefficients parse in Q mode") {
  parsed_input in = parse_ice_qp(
      "vertices 1 2 3\narrows\n  a1: 1 -> 2\n  a2: 2 -> 3\n  a3: 3 -> 1\npotential\n  1/2 a3 a2 a1\n");
  auto [w, c] = in.W.value().leading();
  CHECK(c == scalar(in.fld, mpq_class(1, 2)));
  parsed_input rt = parse_ice_qp(print_quiver_file(in));
  CHECK(rt.W.value() == in.W.value());
}
