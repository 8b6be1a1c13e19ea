#include "jacobian.hpp"

#include <algorithm>
#include <numeric>

namespace frjac {

element cyclic_derivative(const ice_quiver& q, const potential& W, int arrow) {
  element r(W.value().fld());
  for (const auto& [w, c] : W.value().terms()) {
    int k = w.length();
    for (int i = 0; i < k; ++i) {
      if (w.seq[i] != arrow) continue;
      word cut;
      for (int j = i + 1; j < k; ++j) cut.seq.push_back(w.seq[j]);
      for (int j = 0; j < i; ++j) cut.seq.push_back(w.seq[j]);
      if (cut.seq.empty()) cut.base = q.arrows[arrow].head;  // cannot happen without loops
      r.add_term(cut, c);
    }
  }
  return r;
}

tensor_triple delta(const ice_quiver& q, const element& p, int arrow) {
  tensor_triple out;
  for (const auto& [w, c] : p.terms()) {
    int k = w.length();
    for (int i = 0; i < k; ++i) {
      if (w.seq[i] != arrow) continue;
      word left, right;
      left.base = q.arrows[arrow].head;
      right.base = q.arrows[arrow].tail;
      for (int j = i + 1; j < k; ++j) left.seq.push_back(w.seq[j]);
      for (int j = 0; j < i; ++j) right.seq.push_back(w.seq[j]);
      out.push_back({left, arrow, right, c});
    }
  }
  return out;
}

std::vector<element> jacobian_relations(const ice_quiver& q, const potential& W) {
  std::vector<element> rels;
  for (int a : q.unfrozen_arrows()) {
    element d = cyclic_derivative(q, W, a);
    if (!d.is_zero()) rels.push_back(std::move(d));
  }
  return rels;
}

std::pair<element, element> vertex_potential_identity(const ice_quiver& q, const potential& W, int v) {
  const field& f = W.value().fld();
  element lhs(f), rhs(f);
  for (int a : q.arrows_out(v)) {
    element d = cyclic_derivative(q, W, a);
    lhs += times_word(q, d, arrow_word(q, a));
  }
  for (int b : q.arrows_in(v)) {
    element d = cyclic_derivative(q, W, b);
    rhs += word_times(q, arrow_word(q, b), d);
  }
  return {lhs, rhs};
}

int grading::max_degree() const {
  int m = 0;
  for (int d : arrow_degree) m = std::max(m, d);
  return m;
}

std::optional<int> homogeneous_degree(const element& x, const grading& g) {
  std::optional<int> deg;
  for (const auto& [w, c] : x.terms()) {
    int d = g.degree_of(w);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return x.is_zero() ? std::optional<int>(0) : deg;
}

grading length_grading(const ice_quiver& q, const potential& W) {
  grading g;
  g.arrow_degree.assign(q.num_arrows(), 1);
  if (!W.is_zero()) g.potential_degree = W.value().terms().begin()->first.length();
  return g;
}

namespace {

// Exact Phase-I simplex deciding feasibility of { y >= 0 : A y = b } over Q.
// Returns a feasible y, or nullopt. Bland's rule, so it terminates.
std::optional<std::vector<mpq_class>> lp_feasible_point(int n, std::vector<std::vector<mpq_class>> A,
                                                        std::vector<mpq_class> b) {
  const int m = static_cast<int>(A.size());
  if (m == 0) return std::vector<mpq_class>(n, 0);
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& x : A[i]) x = -x;
    }
  }
  // Columns: n structural + m artificial; T[i] = row, rhs separate.
  std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(n + m, 0));
  std::vector<mpq_class> rhs = b;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    basis[i] = n + i;
  }
  // Phase-I objective: minimize the sum of artificials. Reduced "profit" of
  // column j is the column sum over rows whose basic variable is artificial.
  auto profit = [&](int j) {
    mpq_class s = 0;
    for (int i = 0; i < m; ++i)
      if (basis[i] >= n) s += T[i][j];
    return s;
  };
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      bool basic = false;
      for (int i = 0; i < m; ++i) basic |= (basis[i] == j);
      if (basic) continue;
      if (profit(j) > 0) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) break;
    int leave = -1;
    mpq_class best;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      mpq_class ratio = rhs[i] / T[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw error(errc::internal, "phase-I simplex unbounded");
    mpq_class piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    rhs[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      mpq_class f = T[i][enter];
      for (int j = 0; j < n + m; ++j) T[i][j] -= f * T[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    basis[leave] = enter;
  }
  mpq_class infeas = 0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) infeas += rhs[i];
  if (infeas != 0) return std::nullopt;
  std::vector<mpq_class> y(n, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) y[basis[i]] = rhs[i];
  return y;
}

struct term_counts {
  std::vector<int> mult;  // multiplicity per arrow
  int total = 0;
};

// Lexicographic DFS for degrees in [1, bound] making all term sums equal.
struct lex_search {
  const std::vector<term_counts>& terms;
  int num_arrows;
  int bound;
  long budget;
  std::vector<int> deg;
  std::vector<int> fixed_sum;   // per term: contribution of assigned arrows
  std::vector<int> open_mult;   // per term: multiplicity not yet assigned

  bool consistent() const {
    // Every term must still be able to reach a common value.
    int lo = 0, hi = INT32_MAX;
    for (size_t t = 0; t < terms.size(); ++t) {
      lo = std::max(lo, fixed_sum[t] + open_mult[t]);
      hi = std::min(hi, fixed_sum[t] + open_mult[t] * bound);
    }
    return lo <= hi;
  }

  bool dfs(int a) {
    if (budget-- <= 0) return false;
    if (a == num_arrows) {
      for (size_t t = 1; t < terms.size(); ++t)
        if (fixed_sum[t] != fixed_sum[0]) return false;
      return true;
    }
    for (int d = 1; d <= bound; ++d) {
      deg[a] = d;
      for (size_t t = 0; t < terms.size(); ++t) {
        fixed_sum[t] += terms[t].mult[a] * d;
        open_mult[t] -= terms[t].mult[a];
      }
      if (consistent() && dfs(a + 1)) return true;
      for (size_t t = 0; t < terms.size(); ++t) {
        fixed_sum[t] -= terms[t].mult[a] * d;
        open_mult[t] += terms[t].mult[a];
      }
    }
    deg[a] = 0;
    return false;
  }
};

}  // namespace

std::optional<grading> find_positive_grading(const ice_quiver& q, const potential& W) {
  if (W.is_zero()) throw error(errc::invalid_input, "find_positive_grading requires a nonzero potential");
  const int n = q.num_arrows();
  std::vector<term_counts> terms;
  for (const auto& [w, c] : W.value().terms()) {
    term_counts t;
    t.mult.assign(n, 0);
    for (int a : w.seq) ++t.mult[a];
    t.total = w.length();
    terms.push_back(std::move(t));
  }

  // Feasibility over Q with deg = 1 + y, y >= 0: for each term t > 0,
  // (n_t - n_0) . y = len_0 - len_t.
  std::vector<std::vector<mpq_class>> A;
  std::vector<mpq_class> b;
  for (size_t t = 1; t < terms.size(); ++t) {
    std::vector<mpq_class> row(n);
    for (int a = 0; a < n; ++a) row[a] = terms[t].mult[a] - terms[0].mult[a];
    A.push_back(std::move(row));
    b.push_back(terms[0].total - terms[t].total);
  }
  auto y = lp_feasible_point(n, A, b);
  if (!y) return std::nullopt;

  // Scale the rational point to integers; this bounds the minimal max degree.
  mpz_class lcm = 1;
  for (const auto& v : *y) {
    mpq_class d = 1 + v;
    mpz_class den = d.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<int> scaled(n);
  int scaled_max = 0;
  for (int a = 0; a < n; ++a) {
    mpq_class d = (1 + (*y)[a]) * lcm;
    scaled[a] = static_cast<int>(mpz_class(d.get_num() / d.get_den()).get_si());
    scaled_max = std::max(scaled_max, scaled[a]);
  }

  grading g;
  for (int bound = 1; bound <= scaled_max; ++bound) {
    lex_search s{terms, n, bound, 20'000'000, std::vector<int>(n, 0),
                 std::vector<int>(terms.size(), 0), {}};
    s.open_mult.resize(terms.size());
    for (size_t t = 0; t < terms.size(); ++t) s.open_mult[t] = terms[t].total;
    if (s.dfs(0)) {
      g.arrow_degree = s.deg;
      g.minimal_max = true;
      g.potential_degree = 0;
      for (int a = 0; a < n; ++a) g.potential_degree += terms[0].mult[a] * g.arrow_degree[a];
      return g;
    }
    if (s.budget <= 0) break;  // fall back to the scaled LP point
  }
  g.arrow_degree = scaled;
  g.minimal_max = false;
  g.potential_degree = 0;
  for (int a = 0; a < n; ++a) g.potential_degree += terms[0].mult[a] * g.arrow_degree[a];
  return g;
}

}  // namespace frjac
