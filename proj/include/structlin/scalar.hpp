#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace structlin {

// Exact rational scalar. mpq_class keeps values canonical (gcd-reduced,
// positive denominator), so equality is plain comparison.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("invalid rational literal: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Rational + i*Rational. Field operations only; no ordering.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational nrm = b.re * b.re + b.im * b.im;
    if (nrm == 0) throw std::domain_error("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / nrm, (a.im * b.re - a.re * b.im) / nrm};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline std::string to_string(const GaussianRational& z) {
  return z.re.get_str() + (sgn(z.im) >= 0 ? "+" : "") + z.im.get_str() + "i";
}

using Complex = std::complex<double>;

// Per-scalar facts the generic code needs: exactness, conjugation, the JSON
// field tag, and a double approximation for norms and pivot magnitudes.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool complex_field = false;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational conj(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double abs_approx(const Rational& x) { return std::abs(x.get_d()); }
  static const char* field_name() { return "rational"; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr bool complex_field = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {Rational(1)}; }
  static GaussianRational from_int(long v) { return {Rational(v)}; }
  static GaussianRational conj(const GaussianRational& x) { return {x.re, -x.im}; }
  static bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }
  static double abs_approx(const GaussianRational& x) {
    return std::hypot(x.re.get_d(), x.im.get_d());
  }
  static const char* field_name() { return "gaussian"; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr bool complex_field = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double conj(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static double abs_approx(double x) { return std::abs(x); }
  static const char* field_name() { return "f64"; }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr bool complex_field = true;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static double abs_approx(const Complex& x) { return std::abs(x); }
  static const char* field_name() { return "c64"; }
};

// Scalars compare exactly in exact fields; float fields compare against
// tau scaled by the caller-supplied magnitude (never a stored global).
template <class T>
bool scalar_close(const T& a, const T& b, double tau, double scale) {
  if constexpr (scalar_traits<T>::exact) {
    (void)tau;
    (void)scale;
    return a == b;
  } else {
    return scalar_traits<T>::abs_approx(a - b) <= tau * (scale > 1.0 ? scale : 1.0);
  }
}

template <class T>
T rational_to(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, GaussianRational>) {
    return GaussianRational(q);
  } else if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    return Complex(q.get_d(), 0.0);
  }
}

}  // namespace structlin
