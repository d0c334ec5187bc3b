#pragma once

#include <optional>
#include <string>
#include <vector>

#include "structlin/evenlin.hpp"
#include "structlin/oddlin.hpp"

namespace structlin {

enum class EigWhich { finite, infinite };
enum class EvenMode { direct, reversed };

enum class RecoveryKind { finite_eigvec, infinite_eigvec, minimal_basis };

template <class T>
struct RecoveryResult {
  RecoveryKind kind = RecoveryKind::minimal_basis;
  std::optional<T> lambda0;
  std::vector<MatPoly<T>> vectors;  // n x 1 vector polynomials (grade 0 when constant)
  std::vector<int> indices;
  std::vector<double> residuals;
  std::string diagnostics;
};

namespace detail {

template <class T>
std::vector<T> take_block(const std::vector<T>& z, int block, int n) {
  if (block * n + n > static_cast<int>(z.size()))
    throw std::invalid_argument("recover: vector length mismatch");
  return std::vector<T>(z.begin() + block * n, z.begin() + (block + 1) * n);
}

template <class T>
MatPoly<T> shift_lambda(const MatPoly<T>& p) {
  MatPoly<T> r(p.rows(), p.cols(), p.grade() + 1);
  for (int k = 0; k <= p.grade(); ++k) r.coeff_mut(k + 1) = p.coeff(k);
  return r;
}

template <class T>
MatPoly<T> row_slice(const MatPoly<T>& p, int first, int count) {
  std::vector<int> ri(count), ci(p.cols());
  for (int i = 0; i < count; ++i) ri[i] = first + i;
  for (int j = 0; j < p.cols(); ++j) ci[j] = j;
  return p.submatrix(ri, ci);
}

template <class T>
MatPoly<T> sub_padded(const MatPoly<T>& a, const MatPoly<T>& b) {
  int g = std::max(a.grade(), b.grade());
  return a.regrade(g) - b.regrade(g);
}

}  // namespace detail

// Finite eigenvalue: the (s+1)th block of z. Infinite: the first block.
template <class T>
std::vector<T> recover_eigvec_odd(const BlockKroneckerPencil<T>& l, const std::vector<T>& z,
                                  EigWhich which) {
  if (static_cast<int>(z.size()) != l.grade_d() * l.n)
    throw std::invalid_argument("recover_eigvec_odd: vector length mismatch");
  return detail::take_block(z, which == EigWhich::finite ? l.s : 0, l.n);
}

// Nonsingular-leading pencils have no infinite eigenvalues; the trailing
// (reversed) construction has none at zero. The extraction is the (t+1)th
// block in every legal case.
template <class T>
std::vector<T> recover_eigvec_even(int t, int n, const std::vector<T>& z, EvenMode mode,
                                   EigWhich which, const std::optional<T>& lambda0 = std::nullopt) {
  if (static_cast<int>(z.size()) != 2 * t * n)
    throw std::invalid_argument("recover_eigvec_even: vector length mismatch");
  if (mode == EvenMode::direct && which == EigWhich::infinite)
    throw std::invalid_argument(
        "recover_eigvec_even: no infinite eigenvalues with a nonsingular leading coefficient");
  if (mode == EvenMode::reversed && which == EigWhich::finite && lambda0 &&
      scalar_traits<T>::is_zero(*lambda0))
    throw std::invalid_argument(
        "recover_eigvec_even: no zero eigenvalue with a nonsingular trailing coefficient");
  return detail::take_block(z, t, n);
}

template <class T>
std::vector<T> recover_eigvec_even(const ModifiedBlockKroneckerPencil<T>& l, const std::vector<T>& z,
                                   EigWhich which) {
  return recover_eigvec_even<T>(l.t, l.n, z, EvenMode::direct, which);
}

template <class T>
std::vector<T> recover_eigvec_even(const TrailingVariant<T>& l, const std::vector<T>& z,
                                   EigWhich which, const std::optional<T>& lambda0 = std::nullopt) {
  return recover_eigvec_even<T>(l.base.t, l.base.n, z, EvenMode::reversed, which, lambda0);
}

// One-sided factorization of modified block Kronecker pencils:
//   L(lambda) [ Lambda_t (x) I ; N^_t (lambda B + A) (Lambda_t (x) I) ]
//     = e_{t+1} (x) P(lambda),
// verified as an exact polynomial identity.
template <class T>
MatPoly<T> right_factorization_column(const ModifiedBlockKroneckerPencil<T>& l) {
  int t = l.t, n = l.n;
  MatPoly<T> lam_col = make_basis<T>({BasisTag::Lambda, t, n}).involute(Involution::transpose);
  MatPoly<T> bottom = poly_matmul(poly_matmul(make_basis<T>({BasisTag::Nhat, t, n}), l.inner), lam_col);
  MatPoly<T> col(2 * t * n, n, std::max(lam_col.grade(), bottom.grade()));
  for (int k = 0; k <= lam_col.grade(); ++k)
    for (int i = 0; i < (t + 1) * n; ++i)
      for (int j = 0; j < n; ++j) col.coeff_mut(k)(i, j) = lam_col.coeff(k)(i, j);
  for (int k = 0; k <= bottom.grade(); ++k)
    for (int i = 0; i < (t - 1) * n; ++i)
      for (int j = 0; j < n; ++j) col.coeff_mut(k)((t + 1) * n + i, j) = bottom.coeff(k)(i, j);
  return col;
}

template <class T>
bool right_factorization_check(const ModifiedBlockKroneckerPencil<T>& l, const MatPoly<T>& p,
                               double tau = 0.0) {
  int t = l.t, n = l.n;
  if (p.rows() != n || p.cols() != n || p.grade() != 2 * t)
    throw std::invalid_argument("right_factorization_check: shape mismatch");
  MatPoly<T> product = poly_matmul(l.assembled, right_factorization_column(l));
  MatPoly<T> expected(2 * t * n, n, p.grade());
  for (int k = 0; k <= p.grade(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) expected.coeff_mut(k)(t * n + i, j) = p.coeff(k)(i, j);
  return product.approx_equal(expected, tau);
}

// Minimal bases and indices of P from those of the odd-grade linearization:
// blocks s+1 of the basis vectors, indices shifted down by s.
template <class T>
RecoveryResult<T> recover_minimal_data(const BlockKroneckerPencil<T>& l,
                                       const NullspaceBasis<T>& basis_of_l) {
  RecoveryResult<T> out;
  out.kind = RecoveryKind::minimal_basis;
  int n = l.n, s = l.s;
  for (size_t j = 0; j < basis_of_l.basis.size(); ++j) {
    if (basis_of_l.indices[j] < s)
      throw std::invalid_argument("recover_minimal_data: index inconsistent with shift rule");
    out.indices.push_back(basis_of_l.indices[j] - s);
    MatPoly<T> x = detail::row_slice(basis_of_l.basis[j], s * n, n);
    auto deg = x.degree();
    out.vectors.push_back(x.regrade(deg.value_or(0)));
    out.residuals.push_back(0.0);
  }
  if (!out.vectors.empty()) {
    std::vector<MatPoly<T>> rows = out.vectors;
    if constexpr (scalar_traits<T>::exact) {
      auto rep = is_minimal_basis(detail::stack_rows(rows, n));
      if (!rep.verdict) out.diagnostics = "extracted blocks failed the minimal-basis re-check";
    }
  }
  return out;
}

// Full-length nullvector of the odd-grade pencil from a nullvector of P.
// Top part Lambda_s (x) I times x; the Kronecker rows determine the rest by
// exact back substitution; the last block row is a consistency check.
template <class T>
MatPoly<T> embed_nullvector(const BlockKroneckerPencil<T>& l, const MatPoly<T>& x,
                            double tau = 0.0) {
  int n = l.n, s = l.s;
  if (x.rows() != n || x.cols() != 1)
    throw std::invalid_argument("embed_nullvector: x must be an n x 1 vector polynomial");
  MatPoly<T> lam_col = make_basis<T>({BasisTag::Lambda, s, n}).involute(Involution::transpose);
  MatPoly<T> top = poly_matmul(lam_col, x);
  MatPoly<T> rhs = -poly_matmul(l.inner, top);
  std::vector<MatPoly<T>> w(s);
  auto rhs_block = [&](int i) { return detail::row_slice(rhs, i * n, n); };
  for (int i = 0; i < s; ++i)
    w[i] = i == 0 ? -rhs_block(0) : detail::sub_padded(detail::shift_lambda(w[i - 1]), rhs_block(i));
  if (s > 0) {
    MatPoly<T> last = s == 0 ? MatPoly<T>(n, 1, 0) : detail::shift_lambda(w[s - 1]);
    if (!last.approx_equal(rhs_block(s), tau))
      throw std::runtime_error("embed_nullvector: embedding inconsistent");
  } else if (!rhs_block(0).approx_equal(MatPoly<T>(n, 1, rhs.grade()), tau)) {
    throw std::runtime_error("embed_nullvector: embedding inconsistent");
  }
  int zg = top.grade();
  for (const auto& wv : w) zg = std::max(zg, wv.grade());
  MatPoly<T> z(l.grade_d() * n, 1, zg);
  for (int k = 0; k <= top.grade(); ++k)
    for (int i = 0; i < (s + 1) * n; ++i) z.coeff_mut(k)(i, 0) = top.coeff(k)(i, 0);
  for (int b = 0; b < s; ++b)
    for (int k = 0; k <= w[b].grade(); ++k)
      for (int i = 0; i < n; ++i) z.coeff_mut(k)((s + 1 + b) * n + i, 0) = w[b].coeff(k)(i, 0);
  if (!poly_matmul(l.assembled, z).approx_equal(MatPoly<T>(l.grade_d() * n, 1, 0), tau))
    throw std::runtime_error("embed_nullvector: embedding inconsistent");
  return z;
}

// Regular-case embedding at a fixed eigenvalue.
template <class T>
MatPoly<T> embed_at_point(const BlockKroneckerPencil<T>& l, const MatPoly<T>& x, const T& lambda0,
                          double tau = 0.0) {
  int n = l.n, s = l.s;
  Matrix<T> xv = x.eval(lambda0);
  Matrix<T> inner_at = l.inner.eval(lambda0);
  Matrix<T> top((s + 1) * n, 1);
  T pw = scalar_traits<T>::one();
  for (int b = s; b >= 0; --b) {
    for (int i = 0; i < n; ++i) top(b * n + i, 0) = xv(i, 0) * pw;
    pw = pw * lambda0;
  }
  Matrix<T> rhs = -(inner_at * top);
  double scale = std::max(rhs.max_abs(), 1.0);
  std::vector<Matrix<T>> w(s, Matrix<T>(n, 1));
  for (int b = 0; b < s; ++b) {
    Matrix<T> rb(n, 1);
    for (int i = 0; i < n; ++i) rb(i, 0) = rhs(b * n + i, 0);
    w[b] = b == 0 ? -rb : w[b - 1].scaled(lambda0) - rb;
  }
  Matrix<T> last(n, 1);
  for (int i = 0; i < n; ++i) last(i, 0) = rhs(s * n + i, 0);
  Matrix<T> expect = s > 0 ? w[s - 1].scaled(lambda0) : Matrix<T>(n, 1);
  if (!expect.approx_equal(last, tau, scale))
    throw std::runtime_error("embed_nullvector: embedding inconsistent");
  MatPoly<T> z(l.grade_d() * n, 1, 0);
  for (int i = 0; i < (s + 1) * n; ++i) z.coeff_mut(0)(i, 0) = top(i, 0);
  for (int b = 0; b < s; ++b)
    for (int i = 0; i < n; ++i) z.coeff_mut(0)((s + 1 + b) * n + i, 0) = w[b](i, 0);
  Matrix<T> check = l.assembled.eval(lambda0) * z.coeff(0);
  if (!check.approx_equal(Matrix<T>(l.grade_d() * n, 1), tau, std::max(1.0, check.max_abs())))
    throw std::runtime_error("embed_nullvector: embedding inconsistent");
  return z;
}

template <class T>
std::vector<T> embed_nullvector(const BlockKroneckerPencil<T>& l, const std::vector<T>& x,
                                const T& lambda0, double tau = 0.0) {
  MatPoly<T> xp(l.n, 1, 0);
  for (int i = 0; i < l.n; ++i) xp.coeff_mut(0)(i, 0) = x[i];
  MatPoly<T> z = embed_at_point(l, xp, lambda0, tau);
  std::vector<T> out(l.grade_d() * l.n);
  for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i] = z.coeff(0)(i, 0);
  return out;
}

// Even case: the explicit factorization column evaluated at lambda0.
template <class T>
std::vector<T> embed_nullvector_even(const ModifiedBlockKroneckerPencil<T>& l,
                                     const std::vector<T>& x, const T& lambda0, double tau = 0.0) {
  int t = l.t, n = l.n;
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("embed_nullvector_even: x must have length n");
  Matrix<T> col = right_factorization_column(l).eval(lambda0);
  Matrix<T> xv(n, 1);
  for (int i = 0; i < n; ++i) xv(i, 0) = x[i];
  Matrix<T> z = col * xv;
  Matrix<T> check = l.assembled.eval(lambda0) * z;
  if (!check.approx_equal(Matrix<T>(2 * t * n, 1), tau, std::max(1.0, check.max_abs())))
    throw std::runtime_error("embed_nullvector_even: embedding inconsistent");
  std::vector<T> out(2 * t * n);
  for (int i = 0; i < 2 * t * n; ++i) out[i] = z(i, 0);
  return out;
}

// Rays, not vectors: recovery never normalizes, so tests compare up to a
// scalar factor via vanishing 2x2 minors.
template <class T>
bool is_scalar_multiple(const std::vector<T>& x, const std::vector<T>& y, double tau = 0.0) {
  if (x.size() != y.size()) return false;
  bool xz = true, yz = true;
  double scale = 1.0;
  for (const T& v : x) {
    xz = xz && scalar_traits<T>::is_zero(v);
    scale = std::max(scale, scalar_traits<T>::abs_approx(v));
  }
  for (const T& v : y) {
    yz = yz && scalar_traits<T>::is_zero(v);
    scale = std::max(scale, scalar_traits<T>::abs_approx(v));
  }
  if (xz || yz) return xz && yz;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) {
      T lhs = x[i] * y[j];
      T rhs = x[j] * y[i];
      if (!scalar_close(lhs, rhs, tau, scale * scale)) return false;
    }
  return true;
}

template <class T>
bool is_scalar_multiple(const MatPoly<T>& x, const MatPoly<T>& y, double tau = 0.0) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  int g = std::max(x.grade(), y.grade());
  std::vector<T> xf, yf;
  for (int k = 0; k <= g; ++k)
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) {
        xf.push_back(k <= x.grade() ? x.coeff(k)(i, j) : scalar_traits<T>::zero());
        yf.push_back(k <= y.grade() ? y.coeff(k)(i, j) : scalar_traits<T>::zero());
      }
  return is_scalar_multiple(xf, yf, tau);
}

}  // namespace structlin
