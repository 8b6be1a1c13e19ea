#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "ncgb.hpp"

namespace frjac {

// Sparse coordinates of an algebra element in the chosen basis.
using alg_vec = std::vector<std::pair<int, scalar>>;

// Finite-dimensional algebra with a distinguished complete set of orthogonal
// idempotents (the blocks) and an endpoint-homogeneous basis. Every basis
// element is either a block idempotent or lies in the radical; products of
// radical elements have no idempotent component (guaranteed in the positively
// graded regime the pipeline enforces).
struct fd_algebra {
  field fld;
  int nblocks = 0;
  std::vector<std::string> block_names;
  std::vector<int> b_tail, b_head;        // block of each basis element
  std::vector<bool> b_idem;               // true for the block idempotents
  std::vector<int> idem_of_block;         // basis index of e_v
  std::vector<std::string> b_label;
  std::vector<word> b_word;  // filled when built from a normal-word basis
  std::vector<std::vector<alg_vec>> mult;  // mult[i][j] = b_i . b_j  (b_j first)

  int dim() const { return static_cast<int>(b_tail.size()); }
  alg_vec product(const alg_vec& x, const alg_vec& y) const;  // x . y
  std::string vec_str(const alg_vec& v) const;
};

// Requires a Finite basis verdict; multiplication is the normal form of the
// concatenation.
fd_algebra build_fd_algebra(const groebner_basis& gb, const normal_word_basis& nb);

fd_algebra opposite_algebra(const fd_algebra& A);

// eAe on the basis elements with both endpoints in `blocks`. When `kept` is
// given it receives the A-basis index behind each eAe basis element.
fd_algebra idempotent_subalgebra(const fd_algebra& A, const std::vector<bool>& blocks,
                                 std::vector<int>* kept = nullptr);

// Echelonized basis of the two-sided ideal AeA, as dense coordinate rows.
std::vector<std::vector<scalar>> ideal_basis(const fd_algebra& A, const std::vector<bool>& blocks);

// A/AeA via an exact linear-algebra quotient; surviving basis elements are
// the non-pivot coset representatives.
fd_algebra quotient_by_idempotent(const fd_algebra& A, const std::vector<bool>& blocks);

// Dimension of the two-sided ideal AeA.
int ideal_dimension(const fd_algebra& A, const std::vector<bool>& blocks);

// Left module in block form: dims per block and, per basis element b, the
// action matrix M_{tail(b)} -> M_{head(b)}.
struct module_rep {
  const fd_algebra* A = nullptr;
  std::vector<int> dims;
  std::vector<dmatrix> act;

  int total_dim() const;
  bool killed_by(const std::vector<bool>& blocks) const;  // supported away from `blocks`
};

module_rep simple_module(const fd_algebra& A, int v);
module_rep projective_module(const fd_algebra& A, int v);
module_rep injective_module(const fd_algebra& A, int v);
module_rep radical_of_projective(const fd_algebra& A, int v);
module_rep regular_module(const fd_algebra& A);                       // A as a left module
module_rep direct_sum(const std::vector<const module_rep*>& parts);
module_rep zero_module(const fd_algebra& A);

// dmatrix of the action of a general element.
dmatrix act_of(const module_rep& M, const alg_vec& a, int tail_block, int head_block);

struct module_map {
  std::vector<dmatrix> comp;  // per block
};

// Basis of the intertwiner space Hom_A(M, N), by exact kernel computation.
std::vector<module_map> hom_space(const module_rep& M, const module_rep& N);
int hom_dim(const module_rep& M, const module_rep& N);

// Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0 computed via
// projective covers over A/rad A.
struct resolution {
  std::vector<std::vector<int>> gens;  // per term: block of each generator
  // diff[i]: P_i -> P_{i-1} as a matrix over A (rows: generators of P_{i-1}).
  std::vector<std::vector<std::vector<alg_vec>>> diff;
  bool terminated = false;
  int pdim = -1;  // valid when terminated

  std::vector<int> betti() const;  // generator counts per term
};

resolution minimal_projective_resolution(const module_rep& M, int length_cap);

// dim Ext^i(M, N) for 0 <= i <= max_i, from the minimal resolution of M.
std::vector<int> ext_dims(const module_rep& M, const module_rep& N, int max_i);

// Max pdim over the simples; nullopt means ">= cap".
std::optional<int> global_dimension(const fd_algebra& A, int cap);

// Kernel of a projective cover of M.
module_rep syzygy_module(const module_rep& M);

// Projective cover P(M) together with the covering map per block.
struct cover {
  std::vector<int> gens;
  module_rep P;
  std::vector<dmatrix> pi;
};
cover projective_cover(const module_rep& M);

// Splits a raw vector space with left action matrices act(b) (satisfying the
// module axioms for A) into block form using the idempotent images.
module_rep module_from_raw_action(const fd_algebra& A, int dim, const std::vector<dmatrix>& action);

}  // namespace frjac
