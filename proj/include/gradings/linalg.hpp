#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gradings/field.hpp"

namespace gradings {

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
using Vec = std::vector<typename F::value_type>;

template <class F>
Vec<F> zero_vec(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <class F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v.at(i) = f.one();
  return v;
}

template <class F>
Vec<F> vec_add(const F& f, const Vec<F>& x, const Vec<F>& y) {
  if (x.size() != y.size()) throw LinalgError("dimension mismatch");
  Vec<F> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.add(x[i], y[i]);
  return r;
}

template <class F>
Vec<F> vec_sub(const F& f, const Vec<F>& x, const Vec<F>& y) {
  if (x.size() != y.size()) throw LinalgError("dimension mismatch");
  Vec<F> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.sub(x[i], y[i]);
  return r;
}

template <class F>
Vec<F> vec_scale(const F& f, const typename F::value_type& c, const Vec<F>& x) {
  Vec<F> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.mul(c, x[i]);
  return r;
}

template <class F>
Vec<F> vec_neg(const F& f, const Vec<F>& x) {
  Vec<F> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.neg(x[i]);
  return r;
}

/// y += c x
template <class F>
void vec_axpy(const F& f, const typename F::value_type& c, const Vec<F>& x, Vec<F>& y) {
  if (x.size() != y.size()) throw LinalgError("dimension mismatch");
  if (f.is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(c, x[i]));
}

template <class F>
bool vec_is_zero(const F& f, const Vec<F>& x) {
  return std::all_of(x.begin(), x.end(), [&](const auto& a) { return f.is_zero(a); });
}

template <class F>
bool vec_eq(const F& f, const Vec<F>& x, const Vec<F>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!f.eq(x[i], y[i])) return false;
  return true;
}

template <class F, class Rng>
Vec<F> random_vec(const F& f, std::size_t n, Rng& rng) {
  Vec<F> v(n);
  for (auto& a : v) a = f.random(rng);
  return v;
}

/// Dense row-major matrix. As a linear map, column j is the image of basis vector j.
template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const value_type& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix zero(const F& f, std::size_t rows, std::size_t cols) { return Matrix(rows, cols, f.zero()); }
  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  static Matrix from_columns(const F& f, const std::vector<Vec<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size(), f.zero());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw LinalgError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix from_rows(const F& f, const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols, f.zero());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw LinalgError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<value_type>& data() const { return data_; }

  Vec<F> column(std::size_t j) const {
    Vec<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<F> row(std::size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  void set_column(std::size_t j, const Vec<F>& c) {
    if (c.size() != rows_) throw LinalgError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }
  /// Entries flattened row-major.
  const Vec<F>& flat() const { return data_; }
  static Matrix from_flat(std::size_t rows, std::size_t cols, Vec<F> data) {
    if (data.size() != rows * cols) throw LinalgError("flat data size mismatch");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> data_;
};

template <class F>
Matrix<F> mat_mul(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  if (A.cols() != B.rows()) throw LinalgError("dimension mismatch in product");
  Matrix<F> C = Matrix<F>::zero(f, A.rows(), B.cols());
  // Skip zeros on both sides: derivations and multiplication operators are sparse.
  std::vector<std::vector<std::size_t>> nz(B.rows());
  for (std::size_t k = 0; k < B.rows(); ++k)
    for (std::size_t j = 0; j < B.cols(); ++j)
      if (!f.is_zero(B(k, j))) nz[k].push_back(j);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const auto& a = A(i, k);
      if (f.is_zero(a)) continue;
      for (auto j : nz[k]) C(i, j) = f.add(C(i, j), f.mul(a, B(k, j)));
    }
  return C;
}

template <class F>
Vec<F> mat_apply(const F& f, const Matrix<F>& A, const Vec<F>& x) {
  if (A.cols() != x.size()) throw LinalgError("dimension mismatch in apply");
  Vec<F> y(A.rows(), f.zero());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    if (f.is_zero(x[j])) continue;
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (!f.is_zero(A(i, j))) y[i] = f.add(y[i], f.mul(A(i, j), x[j]));
  }
  return y;
}

template <class F>
Matrix<F> mat_add(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw LinalgError("dimension mismatch in sum");
  return Matrix<F>::from_flat(A.rows(), A.cols(), vec_add(f, A.flat(), B.flat()));
}

template <class F>
Matrix<F> mat_sub(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw LinalgError("dimension mismatch in difference");
  return Matrix<F>::from_flat(A.rows(), A.cols(), vec_sub(f, A.flat(), B.flat()));
}

template <class F>
Matrix<F> mat_scale(const F& f, const typename F::value_type& c, const Matrix<F>& A) {
  return Matrix<F>::from_flat(A.rows(), A.cols(), vec_scale(f, c, A.flat()));
}

template <class F>
Matrix<F> mat_transpose(const Matrix<F>& A) {
  Matrix<F> T(A.cols(), A.rows(), typename F::value_type{});
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

template <class F>
bool mat_eq(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  return A.rows() == B.rows() && A.cols() == B.cols() && vec_eq(f, A.flat(), B.flat());
}

template <class F>
bool mat_is_zero(const F& f, const Matrix<F>& A) {
  return vec_is_zero(f, A.flat());
}

/// In-place reduced row echelon form; returns pivot columns. Pivot = first nonzero in column order.
template <class F>
std::vector<std::size_t> rref_in_place(const F& f, Matrix<F>& M, std::size_t col_limit = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::size_t ncols = std::min(col_limit, M.cols());
  for (std::size_t c = 0; c < ncols && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && f.is_zero(M(p, c))) ++p;
    if (p == M.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
    auto inv = f.inv(M(r, c));
    for (std::size_t j = 0; j < M.cols(); ++j) M(r, j) = f.mul(M(r, j), inv);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || f.is_zero(M(i, c))) continue;
      auto k = M(i, c);
      for (std::size_t j = c; j < M.cols(); ++j)
        if (!f.is_zero(M(r, j))) M(i, j) = f.sub(M(i, j), f.mul(k, M(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> M) {
  return rref_in_place(f, M).size();
}

template <class F>
std::size_t rank_of_vectors(const F& f, const std::vector<Vec<F>>& vs) {
  if (vs.empty()) return 0;
  return rank(f, Matrix<F>::from_rows(f, vs, vs[0].size()));
}

/// Kernel basis of M from its RREF, one vector per free column in increasing order.
template <class F>
std::vector<Vec<F>> nullspace(const F& f, Matrix<F> M) {
  auto piv = rref_in_place(f, M);
  std::vector<bool> is_piv(M.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec<F>> out;
  for (std::size_t fc = 0; fc < M.cols(); ++fc) {
    if (is_piv[fc]) continue;
    Vec<F> v(M.cols(), f.zero());
    v[fc] = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(M(r, fc));
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
struct LinearSolution {
  std::optional<Vec<F>> particular;
  std::vector<Vec<F>> kernel;
};

template <class F>
LinearSolution<F> solve_linear(const F& f, const Matrix<F>& M, const Vec<F>& b) {
  if (b.size() != M.rows()) throw LinalgError("right-hand side length mismatch");
  Matrix<F> aug = Matrix<F>::zero(f, M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = b[i];
  }
  auto piv = rref_in_place(f, aug, M.cols());
  LinearSolution<F> sol;
  for (std::size_t i = piv.size(); i < M.rows(); ++i)
    if (!f.is_zero(aug(i, M.cols()))) {
      sol.kernel = nullspace(f, M);
      return sol;
    }
  Vec<F> x(M.cols(), f.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, M.cols());
  sol.particular = std::move(x);
  sol.kernel = nullspace(f, M);
  return sol;
}

template <class F>
std::optional<Matrix<F>> try_inverse(const F& f, const Matrix<F>& A) {
  if (A.rows() != A.cols()) throw LinalgError("inverse of non-square matrix");
  std::size_t n = A.rows();
  Matrix<F> aug = Matrix<F>::zero(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = f.one();
  }
  auto piv = rref_in_place(f, aug, n);
  if (piv.size() != n) return std::nullopt;
  Matrix<F> inv = Matrix<F>::zero(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
Matrix<F> inverse(const F& f, const Matrix<F>& A) {
  auto inv = try_inverse(f, A);
  if (!inv) throw LinalgError("singular matrix");
  return *inv;
}

/// Sparse row: sorted (column, nonzero value) pairs.
template <class F>
using SparseRow = std::vector<std::pair<std::uint32_t, typename F::value_type>>;

/// Incremental sparse Gaussian elimination; rows are normalized with leading coefficient 1.
template <class F>
class SparseEchelon {
 public:
  using value_type = typename F::value_type;

  SparseEchelon(F f, std::size_t ncols) : f_(std::move(f)), ncols_(ncols), pivot_row_(ncols, -1) {}

  std::size_t cols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const F& field() const { return f_; }

  /// Adds a row; returns true if it increased the rank.
  bool add_row(SparseRow<F> r) {
    r = reduce_leading(std::move(r));
    if (r.empty()) return false;
    auto inv = f_.inv(r.front().second);
    for (auto& e : r) e.second = f_.mul(e.second, inv);
    pivot_row_[r.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    reduced_ = false;
    return true;
  }

  /// True if r lies in the row space.
  bool in_span(SparseRow<F> r) const { return reduce_leading(std::move(r)).empty(); }

  /// Columns without a pivot, increasing.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (pivot_row_[c] < 0) out.push_back(c);
    return out;
  }

  /// Kernel of the accumulated rows: one dense vector per free column, with 1 at that column
  /// and 0 at the other free columns.
  std::vector<Vec<F>> kernel_basis() {
    back_substitute();
    auto fc = free_columns();
    std::vector<int> index(ncols_, -1);
    for (std::size_t k = 0; k < fc.size(); ++k) index[fc[k]] = static_cast<int>(k);
    std::vector<Vec<F>> out(fc.size(), Vec<F>(ncols_, f_.zero()));
    for (std::size_t k = 0; k < fc.size(); ++k) out[k][fc[k]] = f_.one();
    for (const auto& row : rows_) {
      auto pc = row.front().first;
      for (std::size_t t = 1; t < row.size(); ++t) out[index[row[t].first]][pc] = f_.neg(row[t].second);
    }
    return out;
  }

 private:
  static SparseRow<F> combine(const F& f, const SparseRow<F>& x, const value_type& c, const SparseRow<F>& y) {
    SparseRow<F> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.emplace_back(y[j].first, f.mul(c, y[j].second));
        ++j;
      } else {
        auto v = f.add(x[i].second, f.mul(c, y[j].second));
        if (!f.is_zero(v)) out.emplace_back(x[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  SparseRow<F> reduce_leading(SparseRow<F> r) const {
    while (!r.empty()) {
      int p = pivot_row_[r.front().first];
      if (p < 0) break;
      r = combine(f_, r, f_.neg(r.front().second), rows_[p]);
    }
    return r;
  }

  void back_substitute() {
    if (reduced_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first > rows_[b].front().first; });
    for (auto k : order) {
      SparseRow<F>& r = rows_[k];
      std::size_t pos = 1;
      while (pos < r.size()) {
        int p = pivot_row_[r[pos].first];
        if (p < 0) {
          ++pos;
          continue;
        }
        r = combine(f_, r, f_.neg(r[pos].second), rows_[p]);
      }
    }
    reduced_ = true;
  }

  F f_;
  std::size_t ncols_;
  std::vector<int> pivot_row_;
  std::vector<SparseRow<F>> rows_;
  bool reduced_ = true;
};

/// Coordinates with respect to a list of linearly independent vectors.
template <class F>
class SpanCoordinates {
 public:
  SpanCoordinates(const F& f, const std::vector<Vec<F>>& basis) : f_(f), k_(basis.size()) {
    if (basis.empty()) return;
    n_ = basis[0].size();
    // [B | I] -> [R | T] with R = T B in RREF.
    Matrix<F> aug = Matrix<F>::zero(f, k_, n_ + k_);
    for (std::size_t i = 0; i < k_; ++i) {
      if (basis[i].size() != n_) throw LinalgError("basis vectors of unequal length");
      for (std::size_t j = 0; j < n_; ++j) aug(i, j) = basis[i][j];
      aug(i, n_ + i) = f.one();
    }
    pivots_ = rref_in_place(f, aug, n_);
    if (pivots_.size() != k_) throw LinalgError("vectors are linearly dependent");
    R_ = Matrix<F>::zero(f, k_, n_);
    T_ = Matrix<F>::zero(f, k_, k_);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) R_(i, j) = aug(i, j);
      for (std::size_t j = 0; j < k_; ++j) T_(i, j) = aug(i, n_ + j);
    }
  }

  std::size_t size() const { return k_; }

  /// Coordinates of v in the original basis, or nullopt if v is outside the span.
  std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
    if (k_ == 0) {
      if (vec_is_zero(f_, v)) return Vec<F>{};
      return std::nullopt;
    }
    if (v.size() != n_) throw LinalgError("vector length mismatch");
    Vec<F> c(k_);
    for (std::size_t i = 0; i < k_; ++i) c[i] = v[pivots_[i]];
    Vec<F> rest = v;
    for (std::size_t i = 0; i < k_; ++i) {
      if (f_.is_zero(c[i])) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!f_.is_zero(R_(i, j))) rest[j] = f_.sub(rest[j], f_.mul(c[i], R_(i, j)));
    }
    if (!vec_is_zero(f_, rest)) return std::nullopt;
    // v = c R = c T B
    Vec<F> out(k_, f_.zero());
    for (std::size_t i = 0; i < k_; ++i) {
      if (f_.is_zero(c[i])) continue;
      for (std::size_t j = 0; j < k_; ++j) out[j] = f_.add(out[j], f_.mul(c[i], T_(i, j)));
    }
    return out;
  }

 private:
  F f_;
  std::size_t k_ = 0, n_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix<F> R_, T_;
};

}  // namespace gradings
