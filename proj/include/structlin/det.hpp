#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "structlin/matpoly.hpp"
#include "structlin/matrix.hpp"
#include "structlin/poly.hpp"

namespace structlin {

namespace detail {

template <class T>
T real_scalar(double x) {
  if constexpr (scalar_traits<T>::complex_field && !scalar_traits<T>::exact) {
    return T(x, 0.0);
  } else {
    return static_cast<T>(x);
  }
}

// Least-squares solve of V c = b for a tall Vandermonde system, Householder QR.
template <class T>
std::vector<T> qr_least_squares(std::vector<std::vector<T>> v, std::vector<T> b) {
  int m = static_cast<int>(v.size());
  int n = m > 0 ? static_cast<int>(v[0].size()) : 0;
  for (int k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (int i = k; i < m; ++i) {
      double av = scalar_traits<T>::abs_approx(v[i][k]);
      norm2 += av * av;
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    double akk = scalar_traits<T>::abs_approx(v[k][k]);
    T alpha = (akk == 0.0) ? real_scalar<T>(-norm) : v[k][k] * real_scalar<T>(-norm / akk);
    std::vector<T> w(m, scalar_traits<T>::zero());
    w[k] = v[k][k] - alpha;
    for (int i = k + 1; i < m; ++i) w[i] = v[i][k];
    double wn = 0.0;
    for (int i = k; i < m; ++i) {
      double aw = scalar_traits<T>::abs_approx(w[i]);
      wn += aw * aw;
    }
    if (wn == 0.0) continue;
    auto reflect = [&](auto&& get, auto&& set) {
      T dot = scalar_traits<T>::zero();
      for (int i = k; i < m; ++i) dot = dot + scalar_traits<T>::conj(w[i]) * get(i);
      T f = dot * real_scalar<T>(2.0 / wn);
      for (int i = k; i < m; ++i) set(i, get(i) - w[i] * f);
    };
    for (int j = k; j < n; ++j)
      reflect([&](int i) { return v[i][j]; }, [&](int i, const T& val) { v[i][j] = val; });
    reflect([&](int i) { return b[i]; }, [&](int i, const T& val) { b[i] = val; });
  }
  std::vector<T> c(n, scalar_traits<T>::zero());
  for (int i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (int j = i + 1; j < n; ++j) s = s - v[i][j] * c[j];
    if (scalar_traits<T>::abs_approx(v[i][i]) > 0.0) c[i] = s / v[i][i];
  }
  return c;
}

}  // namespace detail

// det P(lambda) for square P, degree bound rows*grade.
//
// Exact kinds: evaluate at the integer nodes 0, 1, -1, 2, -2, ... with exact
// per-node determinants and exact Newton interpolation.
// Float kinds: Chebyshev-spread nodes on [-2, 2] to control conditioning,
// least-squares fit, then truncation of coefficients below tau * max|coeff|.
template <class T>
Poly<T> detpoly(const MatPoly<T>& p, double tau = 1e-10) {
  if (p.rows() != p.cols()) throw std::invalid_argument("detpoly: square input required");
  if (p.rows() == 0) return Poly<T>::constant(scalar_traits<T>::one());
  int num_coeffs = p.rows() * p.grade() + 1;

  if constexpr (scalar_traits<T>::exact) {
    std::vector<T> nodes(num_coeffs), values(num_coeffs);
    for (int i = 0; i < num_coeffs; ++i) {
      long x = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);  // 0, 1, -1, 2, -2, ...
      nodes[i] = scalar_traits<T>::from_int(x);
      values[i] = p.eval(nodes[i]).det();
    }
    return interpolate(nodes, values);
  } else {
    int num_nodes = 2 * num_coeffs;
    std::vector<std::vector<T>> vander(num_nodes, std::vector<T>(num_coeffs));
    std::vector<T> values(num_nodes);
    for (int i = 0; i < num_nodes; ++i) {
      double x = 2.0 * std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * num_nodes));
      T node = detail::real_scalar<T>(x);
      values[i] = p.eval(node).det();
      T pw = scalar_traits<T>::one();
      for (int j = 0; j < num_coeffs; ++j) {
        vander[i][j] = pw;
        pw = pw * node;
      }
    }
    Poly<T> result{detail::qr_least_squares(std::move(vander), std::move(values))};
    result.truncate_below(tau * std::max(result.max_abs(), 1.0));
    return result;
  }
}

// Fraction-free Bareiss elimination over F[lambda]. Reports the normal rank
// and, when the matrix has full row rank, a column subset whose maximal minor
// is a nonzero polynomial, together with that minor (up to sign).
template <class T>
struct PolyEliminationResult {
  int normal_rank = 0;
  std::vector<int> pivot_cols;
  Poly<T> pivot_minor;
};

template <class T>
PolyEliminationResult<T> poly_bareiss(const MatPoly<T>& q) {
  static_assert(scalar_traits<T>::exact, "poly_bareiss requires exact arithmetic");
  int m = q.rows(), n = q.cols();
  std::vector<std::vector<Poly<T>>> a(m, std::vector<Poly<T>>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = q.entry(i, j);

  PolyEliminationResult<T> res;
  Poly<T> prev = Poly<T>::constant(scalar_traits<T>::one());
  int sign = 1;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (!a[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (int i = r + 1; i < m; ++i) {
      for (int j = c + 1; j < n; ++j)
        a[i][j] = Poly<T>::div_exact(a[i][j] * a[r][c] - a[i][c] * a[r][j], prev);
      a[i][c] = Poly<T>();
    }
    prev = a[r][c];
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.normal_rank = r;
  if (m == 0) {
    res.pivot_minor = Poly<T>::constant(scalar_traits<T>::one());
  } else if (r == m) {
    res.pivot_minor = sign > 0 ? prev : -prev;
  }
  return res;
}

}  // namespace structlin
