#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "field.hpp"

namespace frjac {

// Dense exact matrix. Everything at desk scale; elimination is plain
// Gauss-Jordan over the field, which is exact for both Q and F_p.
class dmatrix {
 public:
  dmatrix() = default;
  dmatrix(const field& f, int rows, int cols)
      : fld_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, scalar(f)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const field& fld() const { return fld_; }

  scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool is_zero() const;
  dmatrix transpose() const;
  dmatrix mul(const dmatrix& o) const;

 private:
  field fld_;
  int rows_ = 0, cols_ = 0;
  std::vector<scalar> a_;
};

int rank(dmatrix m);

// Columns of the result form a basis of { x : m x = 0 }.
dmatrix kernel_basis(const dmatrix& m);

// One solution of m x = b, or nullopt if inconsistent.
std::optional<std::vector<scalar>> solve(const dmatrix& m, const std::vector<scalar>& b);

// Incremental row space in echelon form; used for spans, quotients and
// membership tests.
class echelon {
 public:
  echelon(const field& f, int n) : fld_(f), n_(n) {}

  // Reduces v against the current rows; if a nonzero remainder is left it is
  // inserted (normalized) and true is returned.
  bool insert(std::vector<scalar> v);
  // Reduces v modulo the row space in place.
  void reduce(std::vector<scalar>& v) const;
  bool contains(std::vector<scalar> v) const;

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return n_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<std::vector<scalar>>& rows() const { return rows_; }

 private:
  field fld_;
  int n_;
  std::vector<std::vector<scalar>> rows_;  // each normalized to pivot 1
  std::vector<int> pivots_;                // pivot column per row
};

// Sparse column-major matrix used for complex differentials; converted to
// dense for rank work.
class smatrix {
 public:
  smatrix() = default;
  smatrix(const field& f, int rows, int cols) : fld_(f), rows_(rows), cols_(cols), col_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const field& fld() const { return fld_; }

  void add(int i, int j, const scalar& v);  // accumulates
  const std::vector<std::pair<int, scalar>>& column(int j) const { return col_[j]; }

  smatrix mul(const smatrix& o) const;  // this * o
  bool is_zero() const;
  dmatrix dense() const;
  size_t nnz() const;

  // "row col value" triplets, one per line, header "rows cols".
  std::string dump_triplets() const;

 private:
  field fld_;
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<int, scalar>>> col_;
};

int rank(const smatrix& m);

}  // namespace frjac
