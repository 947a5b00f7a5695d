#pragma once

// Dense integer matrices and the lattice algorithms built on them:
// Bareiss determinants, adjugates, row Hermite normal form, integer kernels
// and Smith normal form with transforms.

#include "terminal_fano/integer.hpp"

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace terminal_fano {

template <class Int>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Int(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(r, c), (*this)(s, c));
  }
  void swap_cols(std::size_t c, std::size_t d) {
    if (c == d) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, c), (*this)(r, d));
  }
  // row r += k * row s
  void add_row(std::size_t r, std::size_t s, const Int& k) {
    if (k == Int(0)) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) += k * (*this)(s, c);
  }
  // col c += k * col d
  void add_col(std::size_t c, std::size_t d, const Int& k) {
    if (k == Int(0)) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) += k * (*this)(r, d);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.cols_ == y.rows_);
    Matrix p(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == Int(0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) p(i, j) += x(i, k) * y(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  template <class Other>
  Matrix<Other> cast() const {
    Matrix<Other> m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = Other(to_i64((*this)(r, c)));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
template <class Int>
Int determinant(Matrix<Int> m) {
  const std::size_t n = m.rows();
  assert(n == m.cols());
  if (n == 0) return Int(1);
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Int(0)) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == Int(0)) ++p;
      if (p == n) return Int(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Int(0);
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Adjugate matrix: adj(m) * m = det(m) * I.
template <class Int>
Matrix<Int> adjugate(const Matrix<Int>& m) {
  const std::size_t n = m.rows();
  Matrix<Int> adj(n, n);
  if (n == 1) {
    adj(0, 0) = Int(1);
    return adj;
  }
  Matrix<Int> minor(n - 1, n - 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = m(i, j);
        }
        ++mi;
      }
      Int cof = determinant(minor);
      adj(c, r) = ((r + c) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

namespace detail {

// Reduces column `col` below row `row` to a single nonzero entry at `row`
// using unimodular row operations, applied in parallel to `companion` when it
// is non-null. Returns false if the column is zero from `row` down.
template <class Int>
bool euclid_column(Matrix<Int>& m, std::size_t row, std::size_t col, Matrix<Int>* companion) {
  const std::size_t n = m.rows();
  for (;;) {
    std::size_t pivot = n;
    for (std::size_t r = row; r < n; ++r) {
      if (m(r, col) == Int(0)) continue;
      if (pivot == n || abs_of(m(r, col)) < abs_of(m(pivot, col))) pivot = r;
    }
    if (pivot == n) return false;
    m.swap_rows(row, pivot);
    if (companion) companion->swap_rows(row, pivot);
    bool done = true;
    for (std::size_t r = row + 1; r < n; ++r) {
      if (m(r, col) == Int(0)) continue;
      Int q = m(r, col) / m(row, col);
      m.add_row(r, row, -q);
      if (companion) companion->add_row(r, row, -q);
      if (m(r, col) != Int(0)) done = false;
    }
    if (done) return true;
  }
}

}  // namespace detail

/// Row-style Hermite normal form of the lattice spanned by the rows of m:
/// zero rows dropped, pivots positive and strictly increasing in column,
/// entries above each pivot reduced into [0, pivot). Unique per lattice.
template <class Int>
Matrix<Int> hermite_rows(Matrix<Int> m) {
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    if (!detail::euclid_column<Int>(m, row, col, nullptr)) continue;
    if (m(row, col) < Int(0)) m.negate_row(row);
    for (std::size_t r = 0; r < row; ++r) m.add_row(r, row, -floor_div(m(r, col), m(row, col)));
    pivots.push_back(col);
    ++row;
  }
  Matrix<Int> h(row, m.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) h(r, c) = m(r, c);
  return h;
}

/// A basis of the integer right kernel {x in Z^n : m x = 0}, one vector per
/// row, in Hermite normal form.
template <class Int>
Matrix<Int> integer_kernel(const Matrix<Int>& m) {
  const std::size_t n = m.cols();
  Matrix<Int> t = m.transpose();  // n x rows
  Matrix<Int> u = Matrix<Int>::identity(n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < t.cols() && row < n; ++col)
    if (detail::euclid_column<Int>(t, row, col, &u)) ++row;
  Matrix<Int> k(n - row, n);
  for (std::size_t r = row; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) k(r - row, c) = u(r, c);
  return hermite_rows(std::move(k));
}

template <class Int>
struct SmithForm {
  Matrix<Int> left;            // unimodular
  Matrix<Int> right;           // unimodular
  std::vector<Int> invariants; // d_1 | d_2 | ... , all >= 0; left * m * right = diag(invariants)
};

/// Smith normal form of a square or rectangular matrix.
template <class Int>
SmithForm<Int> smith_form(Matrix<Int> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<Int> left = Matrix<Int>::identity(rows);
  Matrix<Int> right = Matrix<Int>::identity(cols);
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (m(r, c) != Int(0) && (pr == rows || abs_of(m(r, c)) < abs_of(m(pr, pc)))) pr = r, pc = c;
      if (pr == rows) {
        SmithForm<Int> out{std::move(left), std::move(right), {}};
        for (std::size_t i = 0; i < n; ++i) out.invariants.push_back(m(i, i));
        return out;
      }
      m.swap_rows(t, pr);
      left.swap_rows(t, pr);
      m.swap_cols(t, pc);
      right.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m(r, t) == Int(0)) continue;
        Int q = m(r, t) / m(t, t);
        m.add_row(r, t, -q);
        left.add_row(r, t, -q);
        if (m(r, t) != Int(0)) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m(t, c) == Int(0)) continue;
        Int q = m(t, c) / m(t, t);
        m.add_col(c, t, -q);
        right.add_col(c, t, -q);
        if (m(t, c) != Int(0)) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into the pivot row and repeat
      std::size_t bad = rows;
      for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m(r, c) % m(t, t) != Int(0)) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      m.add_row(t, bad, Int(1));
      left.add_row(t, bad, Int(1));
    }
    if (m(t, t) < Int(0)) {
      m.negate_row(t);
      left.negate_row(t);
    }
  }
  SmithForm<Int> out{std::move(left), std::move(right), {}};
  for (std::size_t i = 0; i < n; ++i) out.invariants.push_back(m(i, i));
  return out;
}

}  // namespace terminal_fano
