#include "fdalg.hpp"

#include <algorithm>
#include <map>

namespace frjac {

namespace {

void vec_add(alg_vec& v, int idx, const scalar& c) {
  if (c.is_zero()) return;
  for (auto& [i, x] : v)
    if (i == idx) {
      x += c;
      return;
    }
  v.emplace_back(idx, c);
}

void vec_prune(alg_vec& v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const auto& p) { return p.second.is_zero(); }), v.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

// Solves A X = B column by column; throws if inconsistent.
dmatrix solve_matrix(const dmatrix& A, const dmatrix& B) {
  dmatrix X(A.fld(), A.cols(), B.cols());
  for (int j = 0; j < B.cols(); ++j) {
    std::vector<scalar> b(A.rows(), zero(A.fld()));
    for (int i = 0; i < A.rows(); ++i) b[i] = B.at(i, j);
    auto x = solve(A, b);
    if (!x) throw error(errc::internal, "inconsistent system in module computation");
    for (int i = 0; i < A.cols(); ++i) X.at(i, j) = (*x)[i];
  }
  return X;
}

}  // namespace

alg_vec fd_algebra::product(const alg_vec& x, const alg_vec& y) const {
  alg_vec r;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y)
      for (const auto& [k, ck] : mult[i][j]) vec_add(r, k, ci * cj * ck);
  vec_prune(r);
  return r;
}

std::string fd_algebra::vec_str(const alg_vec& v) const {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    s += c.str() + "*" + b_label[i];
  }
  return s;
}

fd_algebra build_fd_algebra(const groebner_basis& gb, const normal_word_basis& nb) {
  if (nb.verdict != finiteness::finite)
    throw error(errc::invalid_input, "build_fd_algebra requires a Finite basis verdict");
  fd_algebra A;
  A.fld = gb.fld;
  A.nblocks = gb.q.num_vertices();
  A.block_names = gb.q.vertex_names;

  std::vector<word> basis = nb.words;
  std::sort(basis.begin(), basis.end(), [](const word& a, const word& b) { return word_order{}(a, b); });
  std::map<word, int, word_order> index;
  A.idem_of_block.assign(A.nblocks, -1);
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
    const word& w = basis[i];
    index.emplace(w, i);
    A.b_tail.push_back(tail_of(w, gb.q));
    A.b_head.push_back(head_of(w, gb.q));
    A.b_idem.push_back(w.is_idempotent());
    A.b_label.push_back(word_str(w, gb.q));
    A.b_word.push_back(w);
    if (w.is_idempotent()) A.idem_of_block[w.base] = i;
  }
  for (int v = 0; v < A.nblocks; ++v)
    if (A.idem_of_block[v] < 0) throw error(errc::internal, "missing idempotent in normal word basis");

  int n = A.dim();
  A.mult.assign(n, std::vector<alg_vec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (head_of(basis[j], gb.q) != tail_of(basis[i], gb.q)) continue;
      word prod = *compose(gb.q, basis[i], basis[j]);
      element nf = normal_form(element::from_word(gb.fld, prod), gb);
      alg_vec v;
      for (const auto& [w, c] : nf.terms()) {
        auto it = index.find(w);
        if (it == index.end()) throw error(errc::internal, "normal form left the enumerated basis");
        vec_add(v, it->second, c);
      }
      vec_prune(v);
      A.mult[i][j] = std::move(v);
    }
  return A;
}

fd_algebra opposite_algebra(const fd_algebra& A) {
  fd_algebra B = A;
  std::swap(B.b_tail, B.b_head);
  int n = A.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B.mult[i][j] = A.mult[j][i];
  return B;
}

fd_algebra idempotent_subalgebra(const fd_algebra& A, const std::vector<bool>& blocks,
                                 std::vector<int>* kept) {
  fd_algebra B;
  B.fld = A.fld;
  std::vector<int> new_block(A.nblocks, -1);
  for (int v = 0; v < A.nblocks; ++v)
    if (blocks[v]) {
      new_block[v] = B.nblocks++;
      B.block_names.push_back(A.block_names[v]);
    }
  std::vector<int> keep, back(A.dim(), -1);
  for (int i = 0; i < A.dim(); ++i)
    if (blocks[A.b_tail[i]] && blocks[A.b_head[i]]) {
      back[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  B.idem_of_block.assign(B.nblocks, -1);
  for (int i : keep) {
    B.b_tail.push_back(new_block[A.b_tail[i]]);
    B.b_head.push_back(new_block[A.b_head[i]]);
    B.b_idem.push_back(A.b_idem[i]);
    B.b_label.push_back(A.b_label[i]);
    if (A.b_idem[i]) B.idem_of_block[new_block[A.b_tail[i]]] = back[i];
  }
  int m = static_cast<int>(keep.size());
  B.mult.assign(m, std::vector<alg_vec>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      alg_vec v;
      for (const auto& [k, c] : A.mult[keep[i]][keep[j]]) {
        if (back[k] < 0) throw error(errc::internal, "eAe not closed under multiplication");
        vec_add(v, back[k], c);
      }
      vec_prune(v);
      B.mult[i][j] = std::move(v);
    }
  if (kept) *kept = keep;
  return B;
}

namespace {

echelon ideal_span(const fd_algebra& A, const std::vector<bool>& blocks) {
  int n = A.dim();
  echelon E(A.fld, n);
  for (int v = 0; v < A.nblocks; ++v) {
    if (!blocks[v]) continue;
    for (int i = 0; i < n; ++i) {
      if (A.b_tail[i] != v) continue;  // x with x.e_v = x
      for (int j = 0; j < n; ++j) {
        if (A.b_head[j] != v) continue;  // y with e_v.y = y
        std::vector<scalar> dense(n, zero(A.fld));
        for (const auto& [k, c] : A.mult[i][j]) dense[k] += c;
        E.insert(std::move(dense));
      }
    }
  }
  return E;
}

}  // namespace

int ideal_dimension(const fd_algebra& A, const std::vector<bool>& blocks) {
  return ideal_span(A, blocks).dim();
}

std::vector<std::vector<scalar>> ideal_basis(const fd_algebra& A, const std::vector<bool>& blocks) {
  return ideal_span(A, blocks).rows();
}

fd_algebra quotient_by_idempotent(const fd_algebra& A, const std::vector<bool>& blocks) {
  int n = A.dim();
  echelon E = ideal_span(A, blocks);
  std::vector<bool> pivot(n, false);
  for (int p : E.pivots()) pivot[p] = true;

  fd_algebra Q;
  Q.fld = A.fld;
  std::vector<int> new_block(A.nblocks, -1);
  for (int v = 0; v < A.nblocks; ++v) {
    bool killed = pivot[A.idem_of_block[v]];
    if (blocks[v] && !killed) throw error(errc::internal, "idempotent of the defining block survived AeA");
    if (!blocks[v] && killed)
      throw error(errc::unsupported, "idempotent collapsed into AeA; input outside the supported regimes");
    if (!killed) {
      new_block[v] = Q.nblocks++;
      Q.block_names.push_back(A.block_names[v]);
    }
  }
  std::vector<int> keep, back(n, -1);
  for (int i = 0; i < n; ++i)
    if (!pivot[i]) {
      back[i] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  Q.idem_of_block.assign(Q.nblocks, -1);
  for (int i : keep) {
    if (new_block[A.b_tail[i]] < 0 || new_block[A.b_head[i]] < 0)
      throw error(errc::internal, "coset representative touches a killed block");
    Q.b_tail.push_back(new_block[A.b_tail[i]]);
    Q.b_head.push_back(new_block[A.b_head[i]]);
    Q.b_idem.push_back(A.b_idem[i]);
    Q.b_label.push_back(A.b_label[i]);
    if (A.b_idem[i]) Q.idem_of_block[new_block[A.b_tail[i]]] = back[i];
  }
  int m = static_cast<int>(keep.size());
  Q.mult.assign(m, std::vector<alg_vec>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<scalar> dense(n, zero(A.fld));
      for (const auto& [k, c] : A.mult[keep[i]][keep[j]]) dense[k] += c;
      E.reduce(dense);
      alg_vec v;
      for (int k = 0; k < n; ++k)
        if (!dense[k].is_zero()) {
          if (back[k] < 0) throw error(errc::internal, "quotient reduction left a pivot coordinate");
          vec_add(v, back[k], dense[k]);
        }
      vec_prune(v);
      Q.mult[i][j] = std::move(v);
    }
  return Q;
}

int module_rep::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

bool module_rep::killed_by(const std::vector<bool>& blocks) const {
  for (int v = 0; v < static_cast<int>(dims.size()); ++v)
    if (blocks[v] && dims[v] > 0) return false;
  return true;
}

namespace {

module_rep empty_shell(const fd_algebra& A) {
  module_rep M;
  M.A = &A;
  M.dims.assign(A.nblocks, 0);
  return M;
}

void finish_actions(module_rep& M) {
  // Fill idempotent actions with identities; callers set the rest.
  const fd_algebra& A = *M.A;
  for (int b = 0; b < A.dim(); ++b) {
    if (!A.b_idem[b]) continue;
    int v = A.b_tail[b];
    dmatrix id(A.fld, M.dims[v], M.dims[v]);
    for (int i = 0; i < M.dims[v]; ++i) id.at(i, i) = one(A.fld);
    M.act[b] = std::move(id);
  }
}

}  // namespace

module_rep zero_module(const fd_algebra& A) {
  module_rep M = empty_shell(A);
  M.act.assign(A.dim(), dmatrix(A.fld, 0, 0));
  finish_actions(M);
  return M;
}

module_rep simple_module(const fd_algebra& A, int v) {
  module_rep M = empty_shell(A);
  M.dims[v] = 1;
  M.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b)
    if (!A.b_idem[b]) M.act[b] = dmatrix(A.fld, M.dims[A.b_head[b]], M.dims[A.b_tail[b]]);
  finish_actions(M);
  return M;
}

namespace {

// P_v with the basis filtered by a predicate on basis indices (used for both
// Ae_v and rad(Ae_v)); the filtered set must be closed under left action.
module_rep left_module_on(const fd_algebra& A, int v, bool radical_only) {
  module_rep M = empty_shell(A);
  std::vector<std::vector<int>> elems(A.nblocks);  // basis indices per head block
  for (int i = 0; i < A.dim(); ++i) {
    if (A.b_tail[i] != v) continue;
    if (radical_only && A.b_idem[i]) continue;
    elems[A.b_head[i]].push_back(i);
  }
  for (int w = 0; w < A.nblocks; ++w) M.dims[w] = static_cast<int>(elems[w].size());
  std::vector<int> pos(A.dim(), -1);
  for (int w = 0; w < A.nblocks; ++w)
    for (int k = 0; k < M.dims[w]; ++k) pos[elems[w][k]] = k;
  M.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    dmatrix m(A.fld, M.dims[h], M.dims[t]);
    for (int k = 0; k < M.dims[t]; ++k) {
      int x = elems[t][k];
      for (const auto& [y, c] : A.mult[b][x]) {
        if (pos[y] < 0) {
          if (radical_only && A.b_idem[y])
            throw error(errc::unsupported, "radical not closed under multiplication");
          continue;
        }
        m.at(pos[y], k) += c;
      }
    }
    M.act[b] = std::move(m);
  }
  finish_actions(M);
  return M;
}

}  // namespace

module_rep projective_module(const fd_algebra& A, int v) { return left_module_on(A, v, false); }

module_rep radical_of_projective(const fd_algebra& A, int v) { return left_module_on(A, v, true); }

module_rep injective_module(const fd_algebra& A, int v) {
  // Dual of the right projective e_v A: block w carries D(e_v A e_w).
  module_rep M = empty_shell(A);
  std::vector<std::vector<int>> elems(A.nblocks);
  for (int i = 0; i < A.dim(); ++i)
    if (A.b_head[i] == v) elems[A.b_tail[i]].push_back(i);
  for (int w = 0; w < A.nblocks; ++w) M.dims[w] = static_cast<int>(elems[w].size());
  std::vector<int> pos(A.dim(), -1);
  for (int w = 0; w < A.nblocks; ++w)
    for (int k = 0; k < M.dims[w]; ++k) pos[elems[w][k]] = k;
  M.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    // (b.f)(x) = f(x.b): entry (x, u) is the coefficient of u in x.b, with
    // x running over e_v A e_{h(b)} and u over e_v A e_{t(b)}.
    dmatrix m(A.fld, M.dims[h], M.dims[t]);
    for (int r = 0; r < M.dims[h]; ++r) {
      int x = elems[h][r];
      for (const auto& [u, c] : A.mult[x][b]) {
        if (pos[u] < 0) continue;
        m.at(r, pos[u]) += c;
      }
    }
    M.act[b] = std::move(m);
  }
  finish_actions(M);
  return M;
}

module_rep regular_module(const fd_algebra& A) {
  std::vector<module_rep> parts;
  parts.reserve(A.nblocks);
  for (int v = 0; v < A.nblocks; ++v) parts.push_back(projective_module(A, v));
  std::vector<const module_rep*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return direct_sum(ptrs);
}

module_rep direct_sum(const std::vector<const module_rep*>& parts) {
  if (parts.empty()) throw error(errc::internal, "direct_sum of nothing");
  const fd_algebra& A = *parts[0]->A;
  module_rep M = empty_shell(A);
  for (const auto* p : parts)
    for (int v = 0; v < A.nblocks; ++v) M.dims[v] += p->dims[v];
  M.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    int t = A.b_tail[b], h = A.b_head[b];
    dmatrix m(A.fld, M.dims[h], M.dims[t]);
    int ro = 0, co = 0;
    for (const auto* p : parts) {
      const dmatrix& pb = p->act[b];
      for (int i = 0; i < pb.rows(); ++i)
        for (int j = 0; j < pb.cols(); ++j) m.at(ro + i, co + j) = pb.at(i, j);
      ro += p->dims[h];
      co += p->dims[t];
    }
    M.act[b] = std::move(m);
  }
  return M;
}

dmatrix act_of(const module_rep& M, const alg_vec& a, int tail_block, int head_block) {
  const fd_algebra& A = *M.A;
  dmatrix m(A.fld, M.dims[head_block], M.dims[tail_block]);
  for (const auto& [b, c] : a) {
    if (A.b_tail[b] != tail_block || A.b_head[b] != head_block)
      throw error(errc::internal, "act_of: element not endpoint-homogeneous for the requested blocks");
    const dmatrix& ab = M.act[b];
    for (int i = 0; i < ab.rows(); ++i)
      for (int j = 0; j < ab.cols(); ++j) m.at(i, j) += c * ab.at(i, j);
  }
  return m;
}

std::vector<module_map> hom_space(const module_rep& M, const module_rep& N) {
  const fd_algebra& A = *M.A;
  std::vector<int> off(A.nblocks + 1, 0);
  for (int v = 0; v < A.nblocks; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
  int unknowns = off[A.nblocks];

  int rows = 0;
  for (int b = 0; b < A.dim(); ++b)
    if (!A.b_idem[b]) rows += N.dims[A.b_head[b]] * M.dims[A.b_tail[b]];
  dmatrix C(A.fld, rows, unknowns);
  int r0 = 0;
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    // phi_h . act_M(b) - act_N(b) . phi_t = 0, entry (i, j).
    for (int i = 0; i < N.dims[h]; ++i)
      for (int j = 0; j < M.dims[t]; ++j) {
        int row = r0 + i * M.dims[t] + j;
        for (int k = 0; k < M.dims[h]; ++k) {
          const scalar& c = M.act[b].at(k, j);
          if (!c.is_zero()) C.at(row, off[h] + i * M.dims[h] + k) += c;
        }
        for (int k = 0; k < N.dims[t]; ++k) {
          const scalar& c = N.act[b].at(i, k);
          if (!c.is_zero()) C.at(row, off[t] + k * M.dims[t] + j) -= c;
        }
      }
    r0 += N.dims[h] * M.dims[t];
  }
  dmatrix K = kernel_basis(C);
  std::vector<module_map> out;
  for (int c = 0; c < K.cols(); ++c) {
    module_map f;
    f.comp.resize(A.nblocks);
    for (int v = 0; v < A.nblocks; ++v) {
      dmatrix m(A.fld, N.dims[v], M.dims[v]);
      for (int i = 0; i < N.dims[v]; ++i)
        for (int j = 0; j < M.dims[v]; ++j) m.at(i, j) = K.at(off[v] + i * M.dims[v] + j, c);
      f.comp[v] = std::move(m);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int hom_dim(const module_rep& M, const module_rep& N) { return static_cast<int>(hom_space(M, N).size()); }

namespace {

// Basis bookkeeping for P = (+)_j P_{block(j)}.
struct proj_basis {
  std::vector<std::vector<std::pair<int, int>>> elems;  // per block u: (gen j, algebra basis b)

  static proj_basis build(const fd_algebra& A, const std::vector<int>& gens) {
    proj_basis pb;
    pb.elems.resize(A.nblocks);
    for (int j = 0; j < static_cast<int>(gens.size()); ++j)
      for (int b = 0; b < A.dim(); ++b)
        if (A.b_tail[b] == gens[j]) pb.elems[A.b_head[b]].emplace_back(j, b);
    return pb;
  }
};

module_rep projective_of(const fd_algebra& A, const std::vector<int>&, const proj_basis& pb) {
  module_rep P;
  P.A = &A;
  P.dims.assign(A.nblocks, 0);
  for (int u = 0; u < A.nblocks; ++u) P.dims[u] = static_cast<int>(pb.elems[u].size());
  std::map<std::pair<int, int>, int> pos;
  for (int u = 0; u < A.nblocks; ++u)
    for (int k = 0; k < P.dims[u]; ++k) pos[pb.elems[u][k]] = k;
  P.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    dmatrix m(A.fld, P.dims[h], P.dims[t]);
    for (int k = 0; k < P.dims[t]; ++k) {
      auto [j, x] = pb.elems[t][k];
      for (const auto& [y, c] : A.mult[b][x]) m.at(pos.at({j, y}), k) += c;
    }
    P.act[b] = std::move(m);
  }
  finish_actions(P);
  return P;
}

struct cover_data {
  std::vector<int> gens;                  // block per generator
  std::vector<std::vector<scalar>> lift;  // generator vectors in cur coords (block-local)
};

cover_data top_cover(const module_rep& cur) {
  const fd_algebra& A = *cur.A;
  cover_data cd;
  for (int w = 0; w < A.nblocks; ++w) {
    echelon rad(A.fld, cur.dims[w]);
    for (int b = 0; b < A.dim(); ++b) {
      if (A.b_idem[b] || A.b_head[b] != w) continue;
      const dmatrix& m = cur.act[b];
      for (int j = 0; j < m.cols(); ++j) {
        std::vector<scalar> col(m.rows(), zero(A.fld));
        for (int i = 0; i < m.rows(); ++i) col[i] = m.at(i, j);
        rad.insert(std::move(col));
      }
    }
    for (int i = 0; i < cur.dims[w]; ++i) {
      std::vector<scalar> e(cur.dims[w], zero(A.fld));
      e[i] = one(A.fld);
      if (rad.insert(e)) {
        cd.gens.push_back(w);
        std::vector<scalar> lift(cur.dims[w], zero(A.fld));
        lift[i] = one(A.fld);
        cd.lift.push_back(std::move(lift));
      }
    }
  }
  return cd;
}

// The block matrices of pi: P(gens) -> cur sending generator j to lift_j.
std::vector<dmatrix> cover_map(const module_rep& cur, const cover_data& cd, const proj_basis& pb) {
  const fd_algebra& A = *cur.A;
  std::vector<dmatrix> pi(A.nblocks);
  for (int u = 0; u < A.nblocks; ++u) {
    dmatrix m(A.fld, cur.dims[u], static_cast<int>(pb.elems[u].size()));
    for (int c = 0; c < m.cols(); ++c) {
      auto [j, b] = pb.elems[u][c];
      const dmatrix& ab = cur.act[b];  // block tail(b)=gens[j] -> u
      for (int i = 0; i < cur.dims[u]; ++i) {
        scalar s = zero(A.fld);
        for (int k = 0; k < ab.cols(); ++k) s += ab.at(i, k) * cd.lift[j][k];
        m.at(i, c) = s;
      }
    }
    pi[u] = std::move(m);
  }
  return pi;
}

struct submodule {
  module_rep rep;
  std::vector<dmatrix> cols;  // per block: ambient coords of the basis
};

submodule kernel_of(const module_rep& P, const std::vector<dmatrix>& pi) {
  const fd_algebra& A = *P.A;
  submodule K;
  K.rep.A = &A;
  K.rep.dims.assign(A.nblocks, 0);
  K.cols.resize(A.nblocks);
  for (int u = 0; u < A.nblocks; ++u) {
    K.cols[u] = kernel_basis(pi[u]);
    K.rep.dims[u] = K.cols[u].cols();
  }
  K.rep.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    dmatrix img = P.act[b].mul(K.cols[t]);
    K.rep.act[b] = solve_matrix(K.cols[h], img);
  }
  finish_actions(K.rep);
  return K;
}

}  // namespace

std::vector<int> resolution::betti() const {
  std::vector<int> b;
  for (const auto& g : gens) b.push_back(static_cast<int>(g.size()));
  return b;
}

resolution minimal_projective_resolution(const module_rep& M, int length_cap) {
  const fd_algebra& A = *M.A;
  resolution res;
  if (M.total_dim() == 0) {
    res.terminated = true;
    res.pdim = -1;
    return res;
  }

  cover_data cd = top_cover(M);
  res.gens.push_back(cd.gens);
  proj_basis pb = proj_basis::build(A, cd.gens);
  module_rep P = projective_of(A, cd.gens, pb);
  submodule K = kernel_of(P, cover_map(M, cd, pb));

  for (int i = 1; i <= length_cap; ++i) {
    if (K.rep.total_dim() == 0) {
      res.terminated = true;
      res.pdim = i - 1;
      return res;
    }
    cover_data kd = top_cover(K.rep);
    // d_i over A: generator c (block w) lifts to K, then to P coords, whose
    // basis is (gen j, algebra element b).
    std::vector<std::vector<alg_vec>> d(res.gens.back().size(), std::vector<alg_vec>(kd.gens.size()));
    for (int c = 0; c < static_cast<int>(kd.gens.size()); ++c) {
      int w = kd.gens[c];
      const dmatrix& cols = K.cols[w];
      for (int i2 = 0; i2 < cols.rows(); ++i2) {
        scalar s = zero(A.fld);
        for (int k = 0; k < cols.cols(); ++k) s += cols.at(i2, k) * kd.lift[c][k];
        if (s.is_zero()) continue;
        auto [j, b] = pb.elems[w][i2];
        d[j][c].emplace_back(b, s);
      }
    }
    res.diff.push_back(std::move(d));
    res.gens.push_back(kd.gens);

    proj_basis pb2 = proj_basis::build(A, kd.gens);
    module_rep P2 = projective_of(A, kd.gens, pb2);
    submodule K2 = kernel_of(P2, cover_map(K.rep, kd, pb2));
    pb = std::move(pb2);
    P = std::move(P2);
    K = std::move(K2);
  }
  res.terminated = K.rep.total_dim() == 0;
  if (res.terminated) res.pdim = length_cap;
  return res;
}

std::vector<int> ext_dims(const module_rep& M, const module_rep& N, int max_i) {
  const fd_algebra& A = *M.A;
  resolution res = minimal_projective_resolution(M, max_i + 1);
  int len = static_cast<int>(res.gens.size()) - 1;  // highest computed term

  auto hom_dim_at = [&](int i) {
    if (i > len) return 0;
    int d = 0;
    for (int g : res.gens[i]) d += N.dims[g];
    return d;
  };
  // F_i : Hom(P_{i-1}, N) -> Hom(P_i, N).
  auto f_rank = [&](int i) {
    if (i > len || i < 1) return 0;
    const auto& d = res.diff[i - 1];
    int rows = hom_dim_at(i), cols = hom_dim_at(i - 1);
    if (rows == 0 || cols == 0) return 0;
    dmatrix F(A.fld, rows, cols);
    std::vector<int> roff(res.gens[i].size() + 1, 0), coff(res.gens[i - 1].size() + 1, 0);
    for (size_t c = 0; c < res.gens[i].size(); ++c) roff[c + 1] = roff[c] + N.dims[res.gens[i][c]];
    for (size_t r = 0; r < res.gens[i - 1].size(); ++r) coff[r + 1] = coff[r] + N.dims[res.gens[i - 1][r]];
    for (size_t c = 0; c < res.gens[i].size(); ++c)
      for (size_t r = 0; r < res.gens[i - 1].size(); ++r) {
        if (d[r][c].empty()) continue;
        dmatrix blk = act_of(N, d[r][c], res.gens[i - 1][r], res.gens[i][c]);
        for (int a = 0; a < blk.rows(); ++a)
          for (int b = 0; b < blk.cols(); ++b) F.at(roff[c] + a, coff[r] + b) = blk.at(a, b);
      }
    return rank(F);
  };

  std::vector<int> out;
  std::vector<int> franks(max_i + 2, 0);
  for (int i = 1; i <= max_i + 1; ++i) franks[i] = f_rank(i);
  for (int i = 0; i <= max_i; ++i) out.push_back(hom_dim_at(i) - franks[i + 1] - (i >= 1 ? franks[i] : 0));
  return out;
}

cover projective_cover(const module_rep& M) {
  const fd_algebra& A = *M.A;
  cover_data cd = top_cover(M);
  proj_basis pb = proj_basis::build(A, cd.gens);
  cover c;
  c.gens = cd.gens;
  c.P = projective_of(A, cd.gens, pb);
  c.pi = cover_map(M, cd, pb);
  return c;
}

module_rep syzygy_module(const module_rep& M) {
  if (M.total_dim() == 0) return zero_module(*M.A);
  cover c = projective_cover(M);
  return kernel_of(c.P, c.pi).rep;
}

std::optional<int> global_dimension(const fd_algebra& A, int cap) {
  int g = 0;
  for (int v = 0; v < A.nblocks; ++v) {
    resolution r = minimal_projective_resolution(simple_module(A, v), cap);
    if (!r.terminated) return std::nullopt;
    g = std::max(g, r.pdim);
  }
  return g;
}

module_rep module_from_raw_action(const fd_algebra& A, int dim, const std::vector<dmatrix>& action) {
  module_rep M;
  M.A = &A;
  M.dims.assign(A.nblocks, 0);
  std::vector<dmatrix> basis(A.nblocks);
  int total = 0;
  for (int v = 0; v < A.nblocks; ++v) {
    const dmatrix& ev = action[A.idem_of_block[v]];
    echelon E(A.fld, dim);
    std::vector<std::vector<scalar>> cols;
    for (int j = 0; j < dim; ++j) {
      std::vector<scalar> col(dim, zero(A.fld));
      for (int i = 0; i < dim; ++i) col[i] = ev.at(i, j);
      if (E.insert(col)) cols.push_back(col);
    }
    // Re-extract independent original columns (echelon normalizes rows, so we
    // kept copies).
    M.dims[v] = static_cast<int>(cols.size());
    dmatrix B(A.fld, dim, M.dims[v]);
    for (int j = 0; j < M.dims[v]; ++j)
      for (int i = 0; i < dim; ++i) B.at(i, j) = cols[j][i];
    basis[v] = std::move(B);
    total += M.dims[v];
  }
  if (total != dim) throw error(errc::internal, "idempotent images do not decompose the raw module");
  M.act.assign(A.dim(), dmatrix());
  for (int b = 0; b < A.dim(); ++b) {
    if (A.b_idem[b]) continue;
    int t = A.b_tail[b], h = A.b_head[b];
    M.act[b] = solve_matrix(basis[h], action[b].mul(basis[t]));
  }
  finish_actions(M);
  return M;
}

}  // namespace frjac
