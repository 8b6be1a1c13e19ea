#include "matrix.hpp"

#include <algorithm>
#include <sstream>

namespace frjac {

bool dmatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

dmatrix dmatrix::transpose() const {
  dmatrix t(fld_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

dmatrix dmatrix::mul(const dmatrix& o) const {
  if (cols_ != o.rows_) throw error(errc::internal, "dmatrix::mul shape mismatch");
  dmatrix r(fld_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const scalar& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

namespace {

// In-place forward elimination; returns pivot (row, col) list.
std::vector<std::pair<int, int>> eliminate(dmatrix& m) {
  std::vector<std::pair<int, int>> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    scalar inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      scalar f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    piv.emplace_back(r, c);
    ++r;
  }
  return piv;
}

}  // namespace

int rank(dmatrix m) { return static_cast<int>(eliminate(m).size()); }

dmatrix kernel_basis(const dmatrix& m) {
  dmatrix w = m;
  auto piv = eliminate(w);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto [r, c] : piv) is_piv[c] = true;
  int k = m.cols() - static_cast<int>(piv.size());
  dmatrix ker(m.fld(), m.cols(), k);
  int out = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_piv[c]) continue;
    ker.at(c, out) = one(m.fld());
    for (auto [pr, pc] : piv) ker.at(pc, out) = -w.at(pr, c);
    ++out;
  }
  return ker;
}

std::optional<std::vector<scalar>> solve(const dmatrix& m, const std::vector<scalar>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw error(errc::internal, "solve shape mismatch");
  dmatrix w(m.fld(), m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) w.at(i, j) = m.at(i, j);
    w.at(i, m.cols()) = b[i];
  }
  auto piv = eliminate(w);
  std::vector<scalar> x(m.cols(), zero(m.fld()));
  for (auto [r, c] : piv) {
    if (c == m.cols()) return std::nullopt;  // pivot in the augmented column
    x[c] = w.at(r, m.cols());
  }
  return x;
}

bool echelon::insert(std::vector<scalar> v) {
  reduce(v);
  int p = -1;
  for (int j = 0; j < n_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p < 0) return false;
  scalar inv = v[p].inv();
  for (auto& x : v) x *= inv;
  // Keep earlier rows reduced against the new pivot.
  for (size_t r = 0; r < rows_.size(); ++r) {
    scalar f = rows_[r][p];
    if (f.is_zero()) continue;
    for (int j = 0; j < n_; ++j) rows_[r][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

void echelon::reduce(std::vector<scalar>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    scalar f = v[pivots_[r]];
    if (f.is_zero()) continue;
    for (int j = 0; j < n_; ++j) v[j] -= f * rows_[r][j];
  }
}

bool echelon::contains(std::vector<scalar> v) const {
  reduce(v);
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void smatrix::add(int i, int j, const scalar& v) {
  if (v.is_zero()) return;
  auto& c = col_[j];
  for (auto& [row, val] : c)
    if (row == i) {
      val += v;
      return;
    }
  c.emplace_back(i, v);
}

smatrix smatrix::mul(const smatrix& o) const {
  if (cols_ != o.rows_) throw error(errc::internal, "smatrix::mul shape mismatch");
  smatrix r(fld_, rows_, o.cols_);
  for (int j = 0; j < o.cols_; ++j)
    for (const auto& [k, y] : o.col_[j])
      for (const auto& [i, x] : col_[k]) r.add(i, j, x * y);
  return r;
}

bool smatrix::is_zero() const {
  for (const auto& c : col_)
    for (const auto& [i, v] : c)
      if (!v.is_zero()) return false;
  return true;
}

dmatrix smatrix::dense() const {
  dmatrix d(fld_, rows_, cols_);
  for (int j = 0; j < cols_; ++j)
    for (const auto& [i, v] : col_[j]) d.at(i, j) += v;
  return d;
}

size_t smatrix::nnz() const {
  size_t n = 0;
  for (const auto& c : col_)
    for (const auto& [i, v] : c)
      if (!v.is_zero()) ++n;
  return n;
}

std::string smatrix::dump_triplets() const {
  std::ostringstream os;
  os << rows_ << ' ' << cols_ << '\n';
  for (int j = 0; j < cols_; ++j) {
    auto c = col_[j];
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [i, v] : c)
      if (!v.is_zero()) os << i << ' ' << j << ' ' << v.str() << '\n';
  }
  return os.str();
}

int rank(const smatrix& m) { return rank(m.dense()); }

}  // namespace frjac
