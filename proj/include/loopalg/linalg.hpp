#pragma once

// Dense exact linear algebra over a field type F (Rational, RationalFunction).
// F must provide +, -, *, /, unary -, ==, and construction from int.

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

namespace loopalg {

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, F(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  F& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const F& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const F& a = (*this)(i, k);
        if (a == F(0)) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o(k, j) == F(0)) continue;
          out(i, j) += a * o(k, j);
        }
      }
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }
  Matrix scaled(const F& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }
  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == F(0))) return false;
    return true;
  }
  std::vector<F> apply(const std::vector<F>& v) const {
    assert(int(v.size()) == cols_);
    std::vector<F> out(rows_, F(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == F(0))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<F> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!(m(r, col) == F(0))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    F inv = F(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == F(0)) continue;
      F factor = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank(Matrix<F> m) {
  return int(rref(m).size());
}

/// Basis of {v : m v = 0}, one vector per free column, with a 1 in that
/// column (deterministic for a given matrix).
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of m x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b) {
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols(), F(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), m.cols());
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const int n = m.rows();
  Matrix<F> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto pivots = rref(aug);
  if (int(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Columns -> matrix helper.
template <class F>
Matrix<F> from_columns(const std::vector<std::vector<F>>& cols, int rows) {
  Matrix<F> m(rows, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m(i, int(j)) = cols[j][i];
  return m;
}

}  // namespace loopalg
