#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/field.hpp"

namespace pcurv {

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw PreconditionError("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const T> elements() const { return data_; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::invoke_result_t<F, const T&>> {
    std::vector<std::invoke_result_t<F, const T&>> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(f(x));
    return {rows_, cols_, std::move(out)};
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    std::vector<T> out;
    out.reserve(nr * nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) out.push_back((*this)(r0 + i, c0 + j));
    }
    return {nr, nc, std::move(out)};
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    std::vector<T> out;
    out.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j) {
      for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    }
    return {cols_, rows_, std::move(out)};
  }

  T trace() const {
    if (!is_square() || rows_ == 0) throw PreconditionError("trace of non-square matrix");
    T acc = data_[0];
    for (std::size_t i = 1; i < rows_; ++i) acc = acc + (*this)(i, i);
    return acc;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] + b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] - b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
    if (a.data_.empty() || b.data_.empty()) return Matrix(a.rows_, b.cols_, std::vector<T>{});
    const T zero = a.data_[0] - a.data_[0];
    Matrix out(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j).is_zero()) continue;
          out(i, j) = out(i, j) + aik * b(k, j);
        }
      }
    }
    return out;
  }
  friend Matrix operator*(const T& c, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x = c * x;
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = v[0] - v[0];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) acc = acc + (*this)(i, j) * v[j];
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  std::size_t hash() const {
    std::size_t h = rows_ * 31 + cols_;
    for (const auto& x : data_) hash_combine(h, x.hash());
    return h;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Block-diagonal sum [[a, 0], [0, b]].
template <Field K>
Matrix<K> direct_sum(const Matrix<K>& a, const Matrix<K>& b) {
  const K zero = K::zero((a.rows() ? a(0, 0) : b(0, 0)).context());
  Matrix<K> out(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// In-place reduced row echelon form. Returns pivot column indices.
template <Field K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const K inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const K factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) = m(i, j) - factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Field K>
std::size_t rank(Matrix<K> m) {
  return rref(m).size();
}

template <Field K>
K determinant(Matrix<K> m) {
  if (!m.is_square() || m.rows() == 0) throw PreconditionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  K det = K::one(m(0, 0).context());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return K::zero(m(0, 0).context());
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    const K inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const K factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - factor * m(col, j);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; empty when singular.
template <Field K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (!m.is_square() || m.rows() == 0) throw PreconditionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const auto& ctx = m(0, 0).context();
  Matrix<K> aug(n, 2 * n, K::zero(ctx));
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = K::one(ctx);
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

/// Solution of m * x = rhs with free variables set to zero; empty when inconsistent.
template <Field K>
std::optional<std::vector<K>> solve_linear(const Matrix<K>& m, std::span<const K> rhs, const K& zero) {
  if (rhs.size() != m.rows()) throw PreconditionError("linear system shape mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1, zero);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = rhs[i];
  const auto pivots = rref(aug);
  std::vector<K> x(m.cols(), zero);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, m.cols());
  }
  return x;
}

/// Basis of the right kernel of m.
template <Field K>
std::vector<std::vector<K>> nullspace(Matrix<K> m, const K& zero) {
  const auto pivots = rref(m);
  const K one = K::one(zero.context());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols(), zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Field K>
Matrix<K> identity_like(const Matrix<K>& m) {
  const auto& ctx = m(0, 0).context();
  return Matrix<K>::identity(m.rows(), K::zero(ctx), K::one(ctx));
}

template <Field K>
Matrix<K> matrix_pow(const Matrix<K>& m, unsigned long e) {
  Matrix<K> result = identity_like(m);
  Matrix<K> base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace pcurv
