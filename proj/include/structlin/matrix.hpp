#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "structlin/scalar.hpp"

namespace structlin {

// Dense row-major matrix over an abstract field scalar. Everything is by
// value; mutation never escapes a function.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, scalar_traits<T>::zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.require_same_shape(y);
    Matrix r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.require_same_shape(y);
    Matrix r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x) {
    Matrix r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = -x.a_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: product dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (scalar_traits<T>::is_zero(xik)) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  Matrix scaled(const T& c) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }
  Matrix& operator+=(const Matrix& y) { return *this = *this + y; }
  Matrix& operator-=(const Matrix& y) { return *this = *this - y; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix conj_transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = scalar_traits<T>::conj((*this)(i, j));
    return r;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const T& v) { return scalar_traits<T>::is_zero(v); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : a_) m = std::max(m, scalar_traits<T>::abs_approx(v));
    return m;
  }

  bool approx_equal(const Matrix& y, double tau, double scale = 0.0) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) return false;
    if constexpr (scalar_traits<T>::exact) {
      return a_ == y.a_;
    } else {
      double s = std::max({scale, max_abs(), y.max_abs()});
      for (size_t k = 0; k < a_.size(); ++k)
        if (!scalar_close(a_[k], y.a_[k], tau, s)) return false;
      return true;
    }
  }

  Matrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    Matrix r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
    for (size_t i = 0; i < row_idx.size(); ++i)
      for (size_t j = 0; j < col_idx.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = (*this)(row_idx[i], col_idx[j]);
    return r;
  }

  // The n x n block at block position (bi, bj).
  Matrix block(int bi, int bj, int n) const {
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = (*this)(bi * n + i, bj * n + j);
    return r;
  }

  // Reduced row echelon form in place. Returns pivot column indices.
  // Exact fields pivot on any nonzero entry; float fields pivot on the
  // largest magnitude and zero out entries below tau * initial scale.
  std::vector<int> rref(double tau = 0.0) {
    double thresh = 0.0;
    if constexpr (!scalar_traits<T>::exact) thresh = tau * std::max(1.0, max_abs());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int piv = -1;
      double best = thresh;
      for (int i = r; i < rows_; ++i) {
        if constexpr (scalar_traits<T>::exact) {
          if (!scalar_traits<T>::is_zero((*this)(i, c))) {
            piv = i;
            break;
          }
        } else {
          double m = scalar_traits<T>::abs_approx((*this)(i, c));
          if (m > best) {
            best = m;
            piv = i;
          }
        }
      }
      if (piv < 0) continue;
      swap_rows(piv, r);
      T inv = scalar_traits<T>::one() / (*this)(r, c);
      for (int j = c; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r) continue;
        T f = (*this)(i, c);
        if (scalar_traits<T>::is_zero(f)) continue;
        for (int j = c; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) - f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    if constexpr (!scalar_traits<T>::exact) {
      for (T& v : a_)
        if (scalar_traits<T>::abs_approx(v) <= thresh) v = scalar_traits<T>::zero();
    }
    return pivots;
  }

  int rank(double tau = 0.0) const {
    Matrix copy = *this;
    return static_cast<int>(copy.rref(tau).size());
  }

  // Basis of the right nullspace, one column vector per free column.
  std::vector<std::vector<T>> right_nullspace(double tau = 0.0) const {
    Matrix red = *this;
    std::vector<int> pivots = red.rref(tau);
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> v(cols_, scalar_traits<T>::zero());
      v[f] = scalar_traits<T>::one();
      for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -red(static_cast<int>(pi), f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  T det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: matrix not square");
    if constexpr (std::is_same_v<T, Rational>) {
      return det_rational();
    } else {
      return det_elimination();
    }
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
    Matrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = scalar_traits<T>::one();
    }
    std::vector<int> pivots = aug.rref();
    if (static_cast<int>(pivots.size()) != rows_) throw std::domain_error("inverse: singular matrix");
    Matrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

 private:
  void require_same_shape(const Matrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  // Generic field determinant by Gaussian elimination with row swaps.
  T det_elimination() const {
    Matrix m = *this;
    int n = rows_;
    T result = scalar_traits<T>::one();
    for (int k = 0; k < n; ++k) {
      int piv = -1;
      if constexpr (scalar_traits<T>::exact) {
        for (int i = k; i < n; ++i)
          if (!scalar_traits<T>::is_zero(m(i, k))) {
            piv = i;
            break;
          }
      } else {
        double best = 0.0;
        for (int i = k; i < n; ++i) {
          double v = scalar_traits<T>::abs_approx(m(i, k));
          if (v > best) {
            best = v;
            piv = i;
          }
        }
        if (best == 0.0) piv = -1;
      }
      if (piv < 0) return scalar_traits<T>::zero();
      if (piv != k) {
        m.swap_rows(piv, k);
        result = -result;
      }
      result = result * m(k, k);
      T inv = scalar_traits<T>::one() / m(k, k);
      for (int i = k + 1; i < n; ++i) {
        T f = m(i, k) * inv;
        if (scalar_traits<T>::is_zero(f)) continue;
        for (int j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
      }
    }
    return result;
  }

  // Rational determinant: clear row denominators, then fraction-free
  // Bareiss over the integers. Avoids per-op gcd churn on big eliminations.
  Rational det_rational() const {
    int n = rows_;
    if (n == 0) return Rational(1);
    std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
    mpz_class denom_product = 1;
    for (int i = 0; i < n; ++i) {
      mpz_class l = 1;
      for (int j = 0; j < n; ++j) {
        const Rational& q = (*this)(i, j);
        mpz_class d = q.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
      }
      for (int j = 0; j < n; ++j) {
        const Rational& q = (*this)(i, j);
        z[i][j] = q.get_num() * (l / q.get_den());
      }
      denom_product *= l;
    }
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (z[k][k] == 0) {
        int piv = -1;
        for (int i = k + 1; i < n; ++i)
          if (z[i][k] != 0) {
            piv = i;
            break;
          }
        if (piv < 0) return Rational(0);
        std::swap(z[k], z[piv]);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i) {
        for (int j = k + 1; j < n; ++j) {
          mpz_class v = z[i][j] * z[k][k] - z[i][k] * z[k][j];
          mpz_divexact(z[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        }
        z[i][k] = 0;
      }
      prev = z[k][k];
    }
    Rational result(sign > 0 ? z[n - 1][n - 1] : mpz_class(-z[n - 1][n - 1]), denom_product);
    result.canonicalize();
    return result;
  }

  int rows_, cols_;
  std::vector<T> a_;
};

}  // namespace structlin
