#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "structlin/matrix.hpp"
#include "structlin/poly.hpp"
#include "structlin/scalar.hpp"

namespace structlin {

enum class Involution { transpose, conjugate_transpose };
enum class StructureClass { symmetric, skew_symmetric, hermitian, skew_hermitian };

inline int structure_sign(StructureClass cls) {
  return (cls == StructureClass::symmetric || cls == StructureClass::hermitian) ? 1 : -1;
}
inline Involution structure_involution(StructureClass cls) {
  return (cls == StructureClass::hermitian || cls == StructureClass::skew_hermitian)
             ? Involution::conjugate_transpose
             : Involution::transpose;
}
inline StructureClass structure_class(int sigma, Involution inv) {
  if (inv == Involution::transpose)
    return sigma > 0 ? StructureClass::symmetric : StructureClass::skew_symmetric;
  return sigma > 0 ? StructureClass::hermitian : StructureClass::skew_hermitian;
}

// Matrix polynomial with an explicit, immutable grade. The coefficient list
// always holds grade+1 matrices; the observed degree may be smaller.
template <class T>
class MatPoly {
 public:
  MatPoly() : rows_(0), cols_(0), grade_(0), coef_(1, Matrix<T>(0, 0)) {}
  MatPoly(int rows, int cols, int grade)
      : rows_(rows), cols_(cols), grade_(grade), coef_(grade + 1, Matrix<T>(rows, cols)) {
    if (grade < 0) throw std::invalid_argument("MatPoly: negative grade");
  }
  explicit MatPoly(std::vector<Matrix<T>> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("MatPoly: empty coefficient list");
    rows_ = coeffs[0].rows();
    cols_ = coeffs[0].cols();
    grade_ = static_cast<int>(coeffs.size()) - 1;
    for (const auto& m : coeffs)
      if (m.rows() != rows_ || m.cols() != cols_)
        throw std::invalid_argument("MatPoly: coefficient shapes differ");
    coef_ = std::move(coeffs);
  }
  static MatPoly constant(Matrix<T> m, int grade = 0) {
    MatPoly p(m.rows(), m.cols(), grade);
    p.coef_[0] = std::move(m);
    return p;
  }
  static MatPoly identity(int n) { return constant(Matrix<T>::identity(n)); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int grade() const { return grade_; }
  const Matrix<T>& coeff(int k) const {
    if (k < 0 || k > grade_) throw std::out_of_range("MatPoly::coeff");
    return coef_[k];
  }
  Matrix<T>& coeff_mut(int k) {
    if (k < 0 || k > grade_) throw std::out_of_range("MatPoly::coeff");
    return coef_[k];
  }

  std::optional<int> degree() const {
    for (int k = grade_; k >= 0; --k)
      if (!coef_[k].is_zero()) return k;
    return std::nullopt;
  }
  bool is_zero() const { return !degree().has_value(); }

  // Horner evaluation from the grade index downward.
  Matrix<T> eval(const T& x) const {
    Matrix<T> acc = coef_[grade_];
    for (int k = grade_ - 1; k >= 0; --k) acc = acc.scaled(x) + coef_[k];
    return acc;
  }

  // rev_k P(lambda) = lambda^k P(1/lambda); the result has grade k.
  MatPoly rev(int k) const {
    std::optional<int> d = degree();
    if (d && k < *d) throw std::invalid_argument("MatPoly::rev: grade too small for reversal");
    MatPoly r(rows_, cols_, k);
    for (int j = 0; j <= std::min(grade_, k); ++j) r.coef_[k - j] = coef_[j];
    return r;
  }

  MatPoly involute(Involution mode) const {
    MatPoly r(cols_, rows_, grade_);
    for (int k = 0; k <= grade_; ++k)
      r.coef_[k] = (mode == Involution::transpose) ? coef_[k].transpose() : coef_[k].conj_transpose();
    return r;
  }

  friend MatPoly operator+(const MatPoly& a, const MatPoly& b) {
    a.require_same(b);
    MatPoly r(a.rows_, a.cols_, a.grade_);
    for (int k = 0; k <= a.grade_; ++k) r.coef_[k] = a.coef_[k] + b.coef_[k];
    return r;
  }
  friend MatPoly operator-(const MatPoly& a, const MatPoly& b) {
    a.require_same(b);
    MatPoly r(a.rows_, a.cols_, a.grade_);
    for (int k = 0; k <= a.grade_; ++k) r.coef_[k] = a.coef_[k] - b.coef_[k];
    return r;
  }
  friend MatPoly operator-(const MatPoly& a) {
    MatPoly r(a.rows_, a.cols_, a.grade_);
    for (int k = 0; k <= a.grade_; ++k) r.coef_[k] = -a.coef_[k];
    return r;
  }
  MatPoly scaled(const T& c) const {
    MatPoly r(rows_, cols_, grade_);
    for (int k = 0; k <= grade_; ++k) r.coef_[k] = coef_[k].scaled(c);
    return r;
  }

  friend bool operator==(const MatPoly& a, const MatPoly& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.grade_ == b.grade_ && a.coef_ == b.coef_;
  }
  friend bool operator!=(const MatPoly& a, const MatPoly& b) { return !(a == b); }

  double max_coeff_norm() const {
    double m = 0.0;
    for (const auto& c : coef_) m = std::max(m, c.max_abs());
    return m;
  }

  // Polynomial equality up to grade padding, relative tolerance for floats.
  bool approx_equal(const MatPoly& b, double tau) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    double s = std::max(max_coeff_norm(), b.max_coeff_norm());
    int g = std::max(grade_, b.grade_);
    Matrix<T> zero(rows_, cols_);
    for (int k = 0; k <= g; ++k) {
      const Matrix<T>& x = k <= grade_ ? coef_[k] : zero;
      const Matrix<T>& y = k <= b.grade_ ? b.coef_[k] : zero;
      if constexpr (scalar_traits<T>::exact) {
        if (x != y) return false;
      } else {
        if (!x.approx_equal(y, tau, s)) return false;
      }
    }
    return true;
  }

  MatPoly regrade(int g) const {
    std::optional<int> d = degree();
    if (d && g < *d) throw std::invalid_argument("MatPoly::regrade: grade below degree");
    MatPoly r(rows_, cols_, g);
    for (int k = 0; k <= std::min(g, grade_); ++k) r.coef_[k] = coef_[k];
    return r;
  }

  MatPoly submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    MatPoly r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()), grade_);
    for (int k = 0; k <= grade_; ++k) r.coef_[k] = coef_[k].submatrix(row_idx, col_idx);
    return r;
  }

  Poly<T> entry(int i, int j) const {
    std::vector<T> c(grade_ + 1);
    for (int k = 0; k <= grade_; ++k) c[k] = coef_[k](i, j);
    return Poly<T>(std::move(c));
  }
  void set_entry(int i, int j, const Poly<T>& p) {
    auto d = p.degree();
    if (d && *d > grade_) throw std::invalid_argument("MatPoly::set_entry: entry degree exceeds grade");
    for (int k = 0; k <= grade_; ++k) coef_[k](i, j) = p.coeff(k);
  }

 private:
  void require_same(const MatPoly& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || grade_ != b.grade_)
      throw std::invalid_argument("MatPoly: shape or grade mismatch");
  }
  int rows_, cols_, grade_;
  std::vector<Matrix<T>> coef_;
};

// Coefficient convolution; the result grade is grade(A)+grade(B) by
// definition, independent of the observed degrees.
template <class T>
MatPoly<T> poly_matmul(const MatPoly<T>& a, const MatPoly<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("poly_matmul: inner dimensions disagree");
  MatPoly<T> r(a.rows(), b.cols(), a.grade() + b.grade());
  for (int i = 0; i <= a.grade(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (int j = 0; j <= b.grade(); ++j) {
      if (b.coeff(j).is_zero()) continue;
      r.coeff_mut(i + j) += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

template <class T>
MatPoly<T> kron_identity(const MatPoly<T>& q, int n) {
  if (n <= 0) throw std::invalid_argument("kron_identity: n must be positive");
  if (n == 1) return q;
  MatPoly<T> r(q.rows() * n, q.cols() * n, q.grade());
  for (int k = 0; k <= q.grade(); ++k)
    for (int i = 0; i < q.rows(); ++i)
      for (int j = 0; j < q.cols(); ++j) {
        const T& v = q.coeff(k)(i, j);
        if (scalar_traits<T>::is_zero(v)) continue;
        for (int b = 0; b < n; ++b) r.coeff_mut(k)(i * n + b, j * n + b) = v;
      }
  return r;
}

template <class T>
bool structure_check(const MatPoly<T>& p, StructureClass cls, double tau = 0.0) {
  if (p.rows() != p.cols()) throw std::invalid_argument("structure_check: square input required");
  int sigma = structure_sign(cls);
  MatPoly<T> flipped = p.involute(structure_involution(cls)).scaled(scalar_traits<T>::from_int(sigma));
  return p.approx_equal(flipped, tau);
}

// ---------------------------------------------------------------------------
// Block calculus: su, block Hadamard, block transpose.

struct BlockShape {
  int block_rows;  // p
  int block_cols;  // q
  int block_size;  // n

  void validate(int rows, int cols) const {
    if (block_rows <= 0 || block_cols <= 0 || block_size <= 0 ||
        block_rows * block_size != rows || block_cols * block_size != cols)
      throw std::invalid_argument("BlockShape incompatible with matrix dimensions");
  }
};

template <class T>
MatPoly<T> block_of(const MatPoly<T>& h, const BlockShape& shape, int bi, int bj) {
  int n = shape.block_size;
  std::vector<int> ri(n), ci(n);
  for (int k = 0; k < n; ++k) {
    ri[k] = bi * n + k;
    ci[k] = bj * n + k;
  }
  return h.submatrix(ri, ci);
}

template <class T>
void set_block(MatPoly<T>& h, const BlockShape& shape, int bi, int bj, const MatPoly<T>& blk) {
  int n = shape.block_size;
  for (int k = 0; k <= h.grade(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        h.coeff_mut(k)(bi * n + i, bj * n + j) = k <= blk.grade() ? blk.coeff(k)(i, j) : scalar_traits<T>::zero();
}

// Blocks move, their contents do not.
template <class T>
MatPoly<T> block_transpose(const MatPoly<T>& h, const BlockShape& shape) {
  shape.validate(h.rows(), h.cols());
  int n = shape.block_size;
  MatPoly<T> r(shape.block_cols * n, shape.block_rows * n, h.grade());
  for (int k = 0; k <= h.grade(); ++k)
    for (int bi = 0; bi < shape.block_rows; ++bi)
      for (int bj = 0; bj < shape.block_cols; ++bj)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            r.coeff_mut(k)(bj * n + i, bi * n + j) = h.coeff(k)(bi * n + i, bj * n + j);
  return r;
}

template <class T>
bool is_block_symmetric(const MatPoly<T>& h, const BlockShape& shape, double tau = 0.0) {
  return h.approx_equal(block_transpose(h, shape), tau);
}

// Blockwise matrix products of conformably partitioned operands.
template <class T>
MatPoly<T> block_hadamard(const MatPoly<T>& a, const MatPoly<T>& b, const BlockShape& shape) {
  shape.validate(a.rows(), a.cols());
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("block_hadamard: mismatched partitions");
  MatPoly<T> r(a.rows(), a.cols(), a.grade() + b.grade());
  for (int bi = 0; bi < shape.block_rows; ++bi)
    for (int bj = 0; bj < shape.block_cols; ++bj)
      set_block(r, shape, bi, bj,
                poly_matmul(block_of(a, shape, bi, bj), block_of(b, shape, bi, bj)));
  return r;
}

// Sum of all block entries. Accepts rectangular block grids so that the
// one-row/one-column conditions of the even-grade constructions can reuse it.
template <class T>
MatPoly<T> su(const MatPoly<T>& a, const BlockShape& shape) {
  shape.validate(a.rows(), a.cols());
  MatPoly<T> acc(shape.block_size, shape.block_size, a.grade());
  for (int bi = 0; bi < shape.block_rows; ++bi)
    for (int bj = 0; bj < shape.block_cols; ++bj) acc = acc + block_of(a, shape, bi, bj);
  return acc;
}

}  // namespace structlin
