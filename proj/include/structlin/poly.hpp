#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "structlin/scalar.hpp"

namespace structlin {

// Scalar polynomial over the field T, stored densely from the constant
// coefficient up. Trailing zero coefficients are trimmed on normalize().
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, int power) {
    std::vector<T> c(power + 1, scalar_traits<T>::zero());
    c[power] = v;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  std::optional<int> degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
  }
  T coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return scalar_traits<T>::zero();
    return c_[k];
  }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_nonzero_constant() const { return c_.size() == 1; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), scalar_traits<T>::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), scalar_traits<T>::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<T> r(a.c_);
    for (T& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, scalar_traits<T>::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (scalar_traits<T>::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const T& v) const {
    std::vector<T> r(c_);
    for (T& x : r) x = x * v;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  T eval(const T& x) const {
    T acc = scalar_traits<T>::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // k-reversal: lambda^k * p(1/lambda). Requires k >= deg(p).
  Poly rev(int k) const {
    if (!c_.empty() && k < static_cast<int>(c_.size()) - 1)
      throw std::invalid_argument("Poly::rev: grade too small for reversal");
    std::vector<T> r(k + 1, scalar_traits<T>::zero());
    for (size_t i = 0; i < c_.size(); ++i) r[k - i] = c_[i];
    return Poly(std::move(r));
  }

  // Euclidean division. Exact over a field whenever deg(b) <= deg(a).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    std::vector<T> rem(a.c_);
    int db = *b.degree();
    T lead_inv = scalar_traits<T>::one() / b.c_.back();
    std::vector<T> quot;
    if (static_cast<int>(rem.size()) - 1 >= db)
      quot.assign(rem.size() - db, scalar_traits<T>::zero());
    for (int k = static_cast<int>(rem.size()) - 1 - db; k >= 0; --k) {
      T q = rem[k + db] * lead_inv;
      quot[k] = q;
      if (scalar_traits<T>::is_zero(q)) continue;
      for (int j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.c_[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  static Poly div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
    return q;
  }

  // Monic gcd by the Euclidean algorithm (exact fields).
  static Poly gcd(Poly a, Poly b) {
    static_assert(scalar_traits<T>::exact, "gcd requires an exact scalar kind");
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(scalar_traits<T>::one() / a.c_.back());
    return a;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : c_) m = std::max(m, scalar_traits<T>::abs_approx(v));
    return m;
  }

  bool approx_equal(const Poly& b, double tau) const {
    if constexpr (scalar_traits<T>::exact) {
      return *this == b;
    } else {
      double s = std::max(max_abs(), b.max_abs());
      size_t n = std::max(c_.size(), b.c_.size());
      for (size_t i = 0; i < n; ++i)
        if (!scalar_close(coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)), tau, s)) return false;
      return true;
    }
  }

  void truncate_below(double thresh) {
    for (T& v : c_)
      if (scalar_traits<T>::abs_approx(v) < thresh) v = scalar_traits<T>::zero();
    normalize();
  }

 private:
  void normalize() {
    while (!c_.empty() && scalar_traits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

// Newton-form interpolation through (nodes[i], values[i]), exact over the
// field. Returns the unique polynomial of degree < nodes.size().
template <class T>
Poly<T> interpolate(const std::vector<T>& nodes, const std::vector<T>& values) {
  size_t n = nodes.size();
  if (values.size() != n || n == 0) throw std::invalid_argument("interpolate: node/value mismatch");
  std::vector<T> dd(values);
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
  Poly<T> result = Poly<T>::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    Poly<T> shift(std::vector<T>{-nodes[i], scalar_traits<T>::one()});
    result = result * shift + Poly<T>::constant(dd[i]);
  }
  return result;
}

}  // namespace structlin
