#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "structlin/bases.hpp"
#include "structlin/det.hpp"
#include "structlin/matpoly.hpp"

namespace structlin {

// The decidable shadow of strong linearization: det L = c * det P and
// det rev L = c' * det rev_g P with nonzero constants c, c'. The unimodular
// transformations themselves are out of scope.
template <class T>
struct Certificate {
  bool is_linearization = false;
  bool is_strong = false;
  T ratio = scalar_traits<T>::zero();      // c
  T ratio_rev = scalar_traits<T>::zero();  // c'
  Poly<T> det_p, det_l, det_rev_p, det_rev_l;
  std::string notes;
};

namespace detail {

// detL == c * detP for a nonzero constant c?
template <class T>
std::pair<bool, T> constant_ratio(const Poly<T>& det_l, const Poly<T>& det_p, double tau) {
  if (det_l.is_zero()) return {false, scalar_traits<T>::zero()};
  int k0 = -1;
  for (int k = 0; k <= det_p.degree().value_or(-1); ++k)
    if (!scalar_traits<T>::is_zero(det_p.coeff(k))) {
      k0 = k;
      break;
    }
  if (k0 < 0) return {false, scalar_traits<T>::zero()};
  if constexpr (!scalar_traits<T>::exact) {
    // Pick the largest coefficient of det_p for a well-conditioned ratio.
    double best = 0.0;
    for (int k = 0; k <= *det_p.degree(); ++k)
      if (scalar_traits<T>::abs_approx(det_p.coeff(k)) > best) {
        best = scalar_traits<T>::abs_approx(det_p.coeff(k));
        k0 = k;
      }
  }
  T c = det_l.coeff(k0) / det_p.coeff(k0);
  if (scalar_traits<T>::is_zero(c)) return {false, c};
  return {det_l.approx_equal(det_p.scaled(c), tau), c};
}

}  // namespace detail

template <class T>
Certificate<T> certificate(const MatPoly<T>& l, const MatPoly<T>& p, int grade_p,
                           double tau = 1e-10) {
  if (p.rows() != p.cols()) throw std::invalid_argument("certificate: P must be square");
  if (l.rows() != l.cols()) throw std::invalid_argument("certificate: L must be square");
  if (l.degree().value_or(0) > 1) throw std::invalid_argument("certificate: L must be a pencil");
  MatPoly<T> pg = p.regrade(std::max(grade_p, p.grade()));

  Certificate<T> cert;
  cert.det_p = detpoly(p, tau);
  if (cert.det_p.is_zero())
    throw std::invalid_argument("certificate: regular input required; use minimal-index comparison");
  cert.det_l = detpoly(l.regrade(std::max(1, l.grade())), tau);
  auto [lin_ok, c] = detail::constant_ratio(cert.det_l, cert.det_p, tau);
  cert.is_linearization = lin_ok;
  cert.ratio = c;

  cert.det_rev_p = detpoly(pg.rev(grade_p), tau);
  cert.det_rev_l = detpoly(l.regrade(std::max(1, l.grade())).rev(1), tau);
  auto [rev_ok, c2] = detail::constant_ratio(cert.det_rev_l, cert.det_rev_p, tau);
  cert.ratio_rev = c2;
  cert.is_strong = lin_ok && rev_ok;

  if (l.rows() != p.rows() * grade_p)
    cert.notes = "pencil size differs from n * grade; determinant identity checked as stated";
  return cert;
}

// Right nullspace of a constant matrix: exact reduced row echelon form, or
// tau-thresholded elimination with column pivoting for float kinds.
template <class T>
std::vector<std::vector<T>> nullspace_at(const Matrix<T>& m, double tau = 0.0) {
  return m.right_nullspace(tau);
}

// ||P(l0) x||_inf / (||x||_inf * sum_k ||P_k||_inf |l0|^k); 0/0 -> 0.
template <class T>
double residual(const MatPoly<T>& p, const T& lambda0, const std::vector<T>& x, double tau = 0.0) {
  (void)tau;
  if (static_cast<int>(x.size()) != p.cols())
    throw std::invalid_argument("residual: vector length mismatch");
  bool all_zero = true;
  for (const T& v : x) all_zero = all_zero && scalar_traits<T>::is_zero(v);
  if (all_zero) throw std::invalid_argument("residual: x must be nonzero");

  Matrix<T> xv(p.cols(), 1);
  for (int i = 0; i < p.cols(); ++i) xv(i, 0) = x[i];
  Matrix<T> r = p.eval(lambda0) * xv;
  if constexpr (scalar_traits<T>::exact) {
    if (r.is_zero()) return 0.0;
  }
  double num = r.max_abs();
  if (num == 0.0) return 0.0;
  double xn = 0.0;
  for (const T& v : x) xn = std::max(xn, scalar_traits<T>::abs_approx(v));
  double lam = scalar_traits<T>::abs_approx(lambda0);
  double pw = 1.0, psum = 0.0;
  for (int k = 0; k <= p.grade(); ++k) {
    psum += p.coeff(k).max_abs() * pw;
    pw *= lam;
  }
  double den = xn * psum;
  return den == 0.0 ? 0.0 : num / den;
}

// Singular fixtures with prescribed right minimal indices: a block-diagonal
// core of L_eps blocks (zero columns for index 0, a regular diagonal tail of
// degree d, zero rows to square up), conjugated by random integer matrices
// with determinant +-1. Strict equivalence preserves the singular structure,
// so the indices survive; callers certify post hoc with the nullspace oracle.
template <class T>
MatPoly<T> make_singular_example(int n, int d, std::vector<int> indices, uint64_t seed = 0x5eed) {
  static_assert(scalar_traits<T>::exact, "make_singular_example: exact arithmetic required");
  if (n < 1 || d < 1) throw std::invalid_argument("make_singular_example: bad size or grade");
  std::sort(indices.begin(), indices.end());
  long total = 0;
  for (int e : indices) {
    if (e < 0) throw std::invalid_argument("make_singular_example: negative index");
    total += e;
  }
  int p = static_cast<int>(indices.size());
  if (total + p > n) throw std::invalid_argument("make_singular_example: unrealizable request");
  int tail = n - static_cast<int>(total) - p;

  MatPoly<T> core(n, n, d);
  int r = 0, c = 0;
  const T one = scalar_traits<T>::one();
  for (int e : indices) {
    if (e == 0) {
      ++c;  // zero column: a constant right null vector
      continue;
    }
    for (int i = 0; i < e; ++i) {
      core.coeff_mut(0)(r + i, c + i) = -one;
      core.coeff_mut(1)(r + i, c + i + 1) = one;
    }
    r += e;
    c += e + 1;
  }
  for (int j = 0; j < tail; ++j) {
    core.coeff_mut(d)(r + j, c + j) = one;
    core.coeff_mut(0)(r + j, c + j) = scalar_traits<T>::from_int(-(j + 2));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> pick(0, n - 1);
  auto random_unimodular = [&]() {
    Matrix<T> u = Matrix<T>::identity(n);
    for (int step = 0; step < 2 * n + 2; ++step) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      T f = scalar_traits<T>::from_int(small(rng));
      for (int k = 0; k < n; ++k) u(j, k) = u(j, k) + f * u(i, k);
    }
    return u;
  };
  Matrix<T> u = random_unimodular();
  Matrix<T> v = random_unimodular();
  MatPoly<T> out(n, n, d);
  for (int k = 0; k <= d; ++k) out.coeff_mut(k) = u * core.coeff(k) * v;
  return out;
}

}  // namespace structlin
