#pragma once

#include "polobstruct/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polobstruct {

/// Dense univariate polynomial, coefficients in ascending degree.
/// Canonical form has no trailing zero coefficients; the zero
/// polynomial has an empty coefficient vector.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
  static Poly monomial(std::size_t deg, const T& a = T(1)) {
    std::vector<T> c(deg + 1, T(0));
    c[deg] = a;
    return Poly(std::move(c));
  }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  T operator()(const T& x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return Poly(std::move(d));
  }

  std::string to_string(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T& a = c_[k];
      if (a == 0) continue;
      const bool neg = a < 0;
      T mag = neg ? T(-a) : a;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (k == 0 || mag != 1) os << mag;
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
    }
    return os.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rational(const IntPoly& f) {
  std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
  return RatPoly(std::move(c));
}

/// Clears denominators and removes the content. The scale factor is
/// positive, so the sign of f at every point is preserved.
inline IntPoly primitive_part(const RatPoly& f) {
  if (f.is_zero()) return {};
  Integer den = 1;
  for (const auto& a : f.coeffs()) den = lcm(den, a.get_den());
  std::vector<Integer> c;
  c.reserve(f.coeffs().size());
  Integer content = 0;
  for (const auto& a : f.coeffs()) {
    Integer v = a.get_num() * (den / a.get_den());
    content = gcd(content, v);
    c.push_back(v);
  }
  for (auto& v : c) v /= content;
  return IntPoly(std::move(c));
}

inline IntPoly to_integer(const RatPoly& f) {
  std::vector<Integer> c;
  for (const auto& a : f.coeffs()) {
    if (a.get_den() != 1) throw std::domain_error("polynomial has non-integral coefficients");
    c.push_back(a.get_num());
  }
  return IntPoly(std::move(c));
}

/// Division with remainder over the rationals.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lb = b.leading();
  for (long k = a.degree(); k >= db; --k) {
    Rational f = r[static_cast<std::size_t>(k)] / lb;
    if (f == 0) continue;
    q[static_cast<std::size_t>(k - db)] = f;
    for (long j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

inline RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  return (Rational(1) / f.leading()) * f;
}

/// Monic gcd over the rationals (zero if both inputs are zero).
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

inline RatPoly lcm(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return make_monic(divmod(a * b, gcd(a, b)).first);
}

inline bool divides(const RatPoly& d, const RatPoly& f) { return divmod(f, d).second.is_zero(); }

/// f(A) by Horner's rule.
template <class T>
Matrix<T> evaluate(const Poly<T>& f, const Matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("polynomial evaluation at non-square matrix");
  Matrix<T> acc(a.rows(), a.cols());
  const auto& c = f.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * a;
    for (std::size_t i = 0; i < a.rows(); ++i) acc(i, i) += c[k];
  }
  return acc;
}

/// f(A) v without forming f(A).
template <class T>
std::vector<T> evaluate(const Poly<T>& f, const Matrix<T>& a, const std::vector<T>& v) {
  std::vector<T> acc(v.size(), T(0));
  const auto& c = f.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = a * acc;
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += c[k] * v[i];
  }
  return acc;
}

}  // namespace polobstruct
