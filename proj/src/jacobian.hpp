#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quiver.hpp"

namespace frjac {

// Summand of an element of A (x) KQ1 (x) A, kept at monomial level:
// coeff * (left (x) arrow (x) right) with left.e_{h(arrow)} = left and
// e_{t(arrow)}.right = right.
struct tensor_term {
  word left;
  int arrow;
  word right;
  scalar coeff;
};

using tensor_triple = std::vector<tensor_term>;

// d/d_a of a potential: each cycle is cut at every occurrence of the arrow,
// giving an element from head(a) to tail(a). Invariant under rotation of the
// stored cycles.
element cyclic_derivative(const ice_quiver& q, const potential& W, int arrow);

// Splits every occurrence of the arrow in every term of p into
// prefix (x) arrow (x) suffix; empty flanks become idempotent paths.
tensor_triple delta(const ice_quiver& q, const element& p, int arrow);

// { d/d_a W : a unfrozen }, zero elements dropped, in arrow order.
std::vector<element> jacobian_relations(const ice_quiver& q, const potential& W);

// The two expansions of W_v = sum_{a in out(v)} (dW/da).a
//                           = sum_{b in in(v)} b.(dW/db), both in KQ.
std::pair<element, element> vertex_potential_identity(const ice_quiver& q, const potential& W, int v);

struct grading {
  std::vector<int> arrow_degree;  // all >= 1
  int potential_degree = 0;       // common degree of the W-terms (0 when W = 0)
  bool minimal_max = true;        // false when the search budget forced the LP fallback

  int degree_of(const word& w) const {
    int d = 0;
    for (int a : w.seq) d += arrow_degree[a];
    return d;
  }
  int max_degree() const;
};

// nullopt when the element is not homogeneous; otherwise its degree.
std::optional<int> homogeneous_degree(const element& x, const grading& g);

// Integer arrow degrees >= 1 making all W-terms the same total degree, or
// nullopt when no positive grading exists (decided by exact rational LP).
// Among feasible gradings the one minimizing the maximum arrow degree is
// returned, ties broken lexicographically in arrow order. Requires W != 0.
std::optional<grading> find_positive_grading(const ice_quiver& q, const potential& W);

grading length_grading(const ice_quiver& q, const potential& W);  // all arrows degree 1

}  // namespace frjac
