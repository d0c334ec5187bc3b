#pragma once

#include <stdexcept>
#include <vector>

#include "structlin/oddlin.hpp"

namespace structlin {

// Modified block Kronecker pencil for even grade d = 2t: the Kronecker
// borders use the hat pencil L^_t(lambda) with its leading zero column, so
// the inner pencil has a distinguished first block row/column (the
// M11/M12/M21/M22 partition).
template <class T>
struct ModifiedBlockKroneckerPencil {
  MatPoly<T> inner;  // (t+1)n square pencil
  int sigma = 1;
  int t = 1;
  int n = 0;
  Involution involution = Involution::transpose;
  MatPoly<T> assembled;  // 2tn square pencil

  int grade_d() const { return 2 * t; }

  MatPoly<T> m11() const { return slice(0, 1, 0, 1); }
  MatPoly<T> m12() const { return slice(0, 1, 1, t + 1); }
  MatPoly<T> m21() const { return slice(1, t + 1, 0, 1); }
  MatPoly<T> m22() const { return slice(1, t + 1, 1, t + 1); }

 private:
  MatPoly<T> slice(int r0, int r1, int c0, int c1) const {
    std::vector<int> ri, ci;
    for (int i = r0 * n; i < r1 * n; ++i) ri.push_back(i);
    for (int j = c0 * n; j < c1 * n; ++j) ci.push_back(j);
    return inner.submatrix(ri, ci);
  }
};

template <class T>
ModifiedBlockKroneckerPencil<T> assemble_modified(const MatPoly<T>& inner, int sigma, int t,
                                                  int n, Involution involution = Involution::transpose) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("assemble_modified: sigma must be +-1");
  if (t < 1 || n < 1) throw std::invalid_argument("assemble_modified: bad parameters");
  if (inner.rows() != (t + 1) * n || inner.cols() != (t + 1) * n)
    throw std::invalid_argument("assemble_modified: inner pencil size mismatch");
  if (inner.degree().value_or(0) > 1) throw std::invalid_argument("assemble_modified: inner must be a pencil");

  ModifiedBlockKroneckerPencil<T> out;
  out.inner = inner.regrade(1);
  out.sigma = sigma;
  out.t = t;
  out.n = n;
  out.involution = involution;

  const T one = scalar_traits<T>::one();
  const T sig = scalar_traits<T>::from_int(sigma);
  int d = 2 * t;
  MatPoly<T> a(d * n, d * n, 1);
  for (int k = 0; k <= 1; ++k)
    for (int i = 0; i < (t + 1) * n; ++i)
      for (int j = 0; j < (t + 1) * n; ++j) a.coeff_mut(k)(i, j) = out.inner.coeff(k)(i, j);
  for (int c = 0; c < t - 1; ++c)
    for (int e = 0; e < n; ++e) {
      a.coeff_mut(0)((c + 1) * n + e, (t + 1 + c) * n + e) = -one;  // L^_t^T (x) I
      a.coeff_mut(1)((c + 2) * n + e, (t + 1 + c) * n + e) = one;
      a.coeff_mut(0)((t + 1 + c) * n + e, (c + 1) * n + e) = -sig;  // sigma L^_t (x) I
      a.coeff_mut(1)((t + 1 + c) * n + e, (c + 2) * n + e) = sig;
    }
  out.assembled = std::move(a);
  return out;
}

struct EvenConditionReport {
  bool m11_ok = false;
  bool m12_ok = false;
  bool m21_ok = false;
  bool m22_ok = false;
  bool leading_nonsingular = false;  // reported, not part of the conditions

  bool conditions() const { return m11_ok && m12_ok && m21_ok && m22_ok; }
  explicit operator bool() const { return conditions(); }
};

namespace detail {

// Lambda_{t-1}^T (x) I_n laid out as a 1 x t block row, and its column twin.
template <class T>
MatPoly<T> lambda_row_grid(int t, int n) {
  MatPoly<T> g(n, t * n, t - 1);
  for (int j = 0; j < t; ++j)
    for (int e = 0; e < n; ++e) g.coeff_mut(t - 1 - j)(e, j * n + e) = scalar_traits<T>::one();
  return g;
}
template <class T>
MatPoly<T> lambda_col_grid(int t, int n) {
  MatPoly<T> g(t * n, n, t - 1);
  for (int i = 0; i < t; ++i)
    for (int e = 0; e < n; ++e) g.coeff_mut(t - 1 - i)(i * n + e, e) = scalar_traits<T>::one();
  return g;
}

}  // namespace detail

// Corollary conditions for even grade: P_d = -M11, lambda^t P_d equals the
// su-products of both off-partition rows, and Q = su(M22 (.) Gamma_{t-1}).
// Both M12 and M21 are validated independently so hand-built pencils check.
template <class T>
EvenConditionReport check_conditions_even(const ModifiedBlockKroneckerPencil<T>& l,
                                          const MatPoly<T>& p, double tau = 0.0) {
  int t = l.t, n = l.n, d = 2 * t;
  if (p.grade() != d || p.rows() != n || p.cols() != n)
    throw std::invalid_argument("check_conditions_even: shape mismatch");
  const Matrix<T>& pd = p.coeff(d);

  EvenConditionReport rep;
  MatPoly<T> m11 = l.m11();
  rep.m11_ok = m11.approx_equal(MatPoly<T>::constant(-pd, 1), tau);

  MatPoly<T> target(n, n, t);
  target.coeff_mut(t) = pd;
  rep.m12_ok = su(block_hadamard(l.m12(), detail::lambda_row_grid<T>(t, n), BlockShape{1, t, n}),
                  BlockShape{1, t, n})
                   .approx_equal(target, tau);
  rep.m21_ok = su(block_hadamard(l.m21(), detail::lambda_col_grid<T>(t, n), BlockShape{t, 1, n}),
                  BlockShape{t, 1, n})
                   .approx_equal(target, tau);

  MatPoly<T> q(n, n, d - 1);
  for (int k = 0; k < d; ++k) q.coeff_mut(k) = p.coeff(k);
  MatPoly<T> gamma = make_basis<T>({BasisTag::Gamma, t - 1, n});
  rep.m22_ok = su(block_hadamard(l.m22(), gamma, BlockShape{t, t, n}), BlockShape{t, t, n})
                   .approx_equal(q, tau);

  rep.leading_nonsingular = pd.rank(tau) == n;
  return rep;
}

// The telescoping solution row of lambda^t P_d = M12(lambda)(Lambda_{t-1} (x) I):
//   [lambda P_d + W_1, -lambda W_1 + W_2, ..., -lambda W_{t-1} + W_t]
// with W_t forced to zero; the product telescopes to lambda^t P_d exactly.
template <class T>
MatPoly<T> solve_M12(const Matrix<T>& pd, int t, int n, std::vector<Matrix<T>> w = {}) {
  if (pd.rows() != n || pd.cols() != n) throw std::invalid_argument("solve_M12: P_d must be n x n");
  if (t < 1) throw std::invalid_argument("solve_M12: t >= 1 required");
  if (static_cast<int>(w.size()) > t) throw std::invalid_argument("solve_M12: wrong block count");
  w.resize(t, Matrix<T>(n, n));
  for (const auto& m : w)
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("solve_M12: W block must be n x n");
  if (!w[t - 1].is_zero())
    throw std::invalid_argument("solve_M12: W_t must be zero; the telescoping row solves the condition only then");

  MatPoly<T> m12(n, t * n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m12.coeff_mut(1)(i, j) = pd(i, j);
      m12.coeff_mut(0)(i, j) = w[0](i, j);
    }
  for (int b = 1; b < t; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m12.coeff_mut(1)(i, b * n + j) = -w[b - 1](i, j);
        m12.coeff_mut(0)(i, b * n + j) = w[b](i, j);
      }
  return m12;
}

// Structured even-grade construction: M11 = -P_d, M12 from the telescoping
// row, M21 = sigma * invol(M12), M22 from the odd-grade structured solve
// applied to Q(lambda) = P(lambda) - lambda^d P_d with s = t-1.
template <class T>
ModifiedBlockKroneckerPencil<T> solve_even_structured(const MatPoly<T>& p, int sigma,
                                                      Involution involution,
                                                      std::vector<Matrix<T>> w = {},
                                                      const FreeParams<T>& free_params = {},
                                                      double tau = 0.0) {
  int d = p.grade();
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("solve_even_structured: even grade >= 2 required");
  if (p.rows() != p.cols()) throw std::invalid_argument("solve_even_structured: square input required");
  if (!structure_check(p, structure_class(sigma, involution), tau))
    throw std::invalid_argument("solve_even_structured: structure mismatch");
  int t = d / 2, n = p.rows();
  const Matrix<T>& pd = p.coeff(d);
  if (pd.rank(tau) != n)
    throw std::invalid_argument("solve_even_structured: nonsingular leading coefficient required");

  MatPoly<T> m12 = solve_M12(pd, t, n, std::move(w));
  MatPoly<T> m21 = m12.involute(involution).scaled(scalar_traits<T>::from_int(sigma));
  MatPoly<T> q(n, n, d - 1);
  for (int k = 0; k < d; ++k) q.coeff_mut(k) = p.coeff(k);
  MatPoly<T> m22 = solve_structured(q, sigma, involution, free_params, tau);

  MatPoly<T> inner((t + 1) * n, (t + 1) * n, 1);
  for (int k = 0; k <= 1; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        inner.coeff_mut(k)(i, j) = k == 0 ? -pd(i, j) : scalar_traits<T>::zero();
      for (int j = 0; j < t * n; ++j) inner.coeff_mut(k)(i, n + j) = m12.coeff(k)(i, j);
    }
    for (int i = 0; i < t * n; ++i) {
      for (int j = 0; j < n; ++j) inner.coeff_mut(k)(n + i, j) = m21.coeff(k)(i, j);
      for (int j = 0; j < t * n; ++j) inner.coeff_mut(k)(n + i, n + j) = m22.coeff(k)(i, j);
    }
  }
  return assemble_modified(inner, sigma, t, n, involution);
}

// Block order 1, 2, t+2, 3, t+3, ..., t+1: the banded display of the
// structured pencil with block-diagonal M22.
inline std::vector<int> interleave_permutation_even(int t) {
  std::vector<int> perm{0};
  for (int i = 1; i < t; ++i) {
    perm.push_back(i);
    perm.push_back(t + i);
  }
  perm.push_back(t);
  return perm;
}

template <class T>
PermutedPencil<T> permute_even_banded(const ModifiedBlockKroneckerPencil<T>& l, double tau = 0.0) {
  int t = l.t, n = l.n;
  MatPoly<T> zero(n, n, 1);
  BlockShape m22_shape{t, t, n};
  MatPoly<T> m12 = l.m12(), m22 = l.m22();
  for (int b = 1; b < t; ++b) {
    std::vector<int> rows(n), cols(n);
    for (int e = 0; e < n; ++e) {
      rows[e] = e;
      cols[e] = b * n + e;
    }
    if (!m12.submatrix(rows, cols).approx_equal(zero, tau))
      throw std::invalid_argument("permute_even_banded: non-blockdiag input");
  }
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (i != j && !block_of(m22, m22_shape, i, j).approx_equal(zero, tau))
        throw std::invalid_argument("permute_even_banded: non-blockdiag input");
  PermutedPencil<T> out;
  out.perm = interleave_permutation_even(t);
  out.permuted = apply_block_permutation(l.assembled, out.perm, n);
  return out;
}

// Nonsingular trailing coefficient: build the structured pencil for rev P
// (whose leading coefficient is P_0) and return its grade-1 reversal.
template <class T>
struct TrailingVariant {
  MatPoly<T> assembled;                  // rev of base.assembled
  ModifiedBlockKroneckerPencil<T> base;  // structured pencil of rev P
};

template <class T>
TrailingVariant<T> trailing_variant(const MatPoly<T>& p, int sigma, Involution involution,
                                    std::vector<Matrix<T>> w = {},
                                    const FreeParams<T>& free_params = {}, double tau = 0.0) {
  int d = p.grade();
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("trailing_variant: even grade >= 2 required");
  if (p.coeff(0).rank(tau) != p.rows())
    throw std::invalid_argument("trailing_variant: nonsingular trailing coefficient required");
  TrailingVariant<T> out;
  out.base = solve_even_structured(p.rev(d), sigma, involution, std::move(w), free_params, tau);
  out.assembled = out.base.assembled.rev(1);
  return out;
}

template <class T>
struct ConditionNewReport {
  bool holds = false;
  bool pattern_ok = false;
  bool nonsingular = false;
  Matrix<T> p_block;
  MatPoly<T> q_poly;
};

// Theorem hypothesis check: (Lambda^_t^T (x) I)(lambda B+A)(Lambda^_t (x) I)
// must equal [[-P, lambda^t P], [lambda^t P, Q]] with P nonsingular.
template <class T>
ConditionNewReport<T> check_condition_new(const ModifiedBlockKroneckerPencil<T>& l,
                                          double tau = 0.0) {
  int t = l.t, n = l.n;
  MatPoly<T> lam_hat = make_basis<T>({BasisTag::LambdaHat, t, n});
  MatPoly<T> g = poly_matmul(poly_matmul(lam_hat, l.inner), lam_hat.involute(Involution::transpose));
  BlockShape shape{2, 2, n};
  MatPoly<T> g11 = block_of(g, shape, 0, 0), g12 = block_of(g, shape, 0, 1);
  MatPoly<T> g21 = block_of(g, shape, 1, 0), g22 = block_of(g, shape, 1, 1);

  ConditionNewReport<T> rep;
  rep.p_block = -g11.coeff(0);
  MatPoly<T> expect12(n, n, std::max(t, g.grade()));
  expect12.coeff_mut(t) = rep.p_block;
  rep.pattern_ok = g11.approx_equal(MatPoly<T>::constant(-rep.p_block, 0), tau) &&
                   g12.approx_equal(expect12, tau) && g21.approx_equal(expect12, tau);
  rep.q_poly = g22.grade() == 2 * t - 1 ? g22 : g22.regrade(2 * t - 1);
  rep.nonsingular = rep.p_block.rank(tau) == n;
  rep.holds = rep.pattern_ok && rep.nonsingular;
  return rep;
}

enum class FprEvenName { L5, L6 };

template <class T>
struct FprEvenFixture {
  MatPoly<T> pencil;          // the printed FPR pencil built from P
  std::vector<int> perm;      // L5: block permutation onto modified Kronecker form
  MatPoly<T> transformed;     // L5: permuted; L6: first row/col sign flip + block reversal
};

// Degree-4 symmetric companion forms from the FPR literature: L5 (nonsingular
// leading) is a permuted modified block Kronecker pencil; L6 (nonsingular
// trailing) maps onto the reversal construction after a sign flip and a block
// reversal.
template <class T>
FprEvenFixture<T> fpr_even_fixtures(FprEvenName name, const MatPoly<T>& p) {
  if (p.grade() != 4 || p.rows() != p.cols())
    throw std::invalid_argument("fpr_even_fixtures: square grade-4 polynomial required");
  BlockPencilTemplate t(4);
  FprEvenFixture<T> out;
  if (name == FprEvenName::L5) {
    t.add_identity(0, 2, -1, 0);
    t.add_identity(0, 3, 1, 1);
    t.add_coeff(1, 1, -1, 0, 4);
    t.add_coeff(1, 2, 1, 1, 4);
    t.add_coeff(1, 2, -1, 0, 3);
    t.add_coeff(1, 3, 1, 1, 3);
    t.add_identity(2, 0, -1, 0);
    t.add_coeff(2, 1, 1, 1, 4);
    t.add_coeff(2, 1, -1, 0, 3);
    t.add_coeff(2, 2, 1, 1, 3);
    t.add_coeff(2, 2, -1, 0, 2);
    t.add_coeff(2, 3, 1, 1, 2);
    t.add_identity(3, 0, 1, 1);
    t.add_coeff(3, 1, 1, 1, 3);
    t.add_coeff(3, 2, 1, 1, 2);
    t.add_coeff(3, 3, 1, 1, 1);
    t.add_coeff(3, 3, 1, 0, 0);
    out.pencil = t.instantiate(p);
    out.perm = {1, 2, 3, 0};
    out.transformed = apply_block_permutation(out.pencil, out.perm, p.rows());
  } else {
    t.add_identity(0, 1, -1, 0);
    t.add_identity(0, 2, 1, 1);
    t.add_identity(1, 0, -1, 0);
    t.add_coeff(1, 1, 1, 1, 4);
    t.add_coeff(1, 1, -1, 0, 3);
    t.add_coeff(1, 2, 1, 1, 3);
    t.add_identity(2, 0, 1, 1);
    t.add_coeff(2, 1, 1, 1, 3);
    t.add_coeff(2, 2, 1, 1, 2);
    t.add_coeff(2, 2, 1, 0, 1);
    t.add_coeff(2, 3, 1, 0, 0);
    t.add_coeff(3, 2, 1, 0, 0);
    t.add_coeff(3, 3, -1, 1, 0);
    out.pencil = t.instantiate(p);
    int n = p.rows(), blocks = 4;
    MatPoly<T> flipped = out.pencil;
    for (int k = 0; k <= flipped.grade(); ++k)
      for (int i = 0; i < flipped.rows(); ++i)
        for (int j = 0; j < flipped.cols(); ++j) {
          bool fi = i < n, fj = j < n;
          if (fi != fj) flipped.coeff_mut(k)(i, j) = -flipped.coeff(k)(i, j);
        }
    std::vector<int> reversal(blocks);
    for (int i = 0; i < blocks; ++i) reversal[i] = blocks - 1 - i;
    out.perm = reversal;
    out.transformed = apply_block_permutation(flipped, reversal, n);
  }
  return out;
}

}  // namespace structlin
