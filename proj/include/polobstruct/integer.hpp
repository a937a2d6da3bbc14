#pragma once

// Arbitrary-precision scalars and small number-theoretic helpers.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polobstruct {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline void require_odd_prime(long p, const char* who) {
  if (!is_odd_prime(p))
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) +
                                " is not an odd prime");
}

inline int sign(const Integer& x) { return sgn(x); }
inline int sign(const Rational& x) { return sgn(x); }

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  Integer r = abs(x);
  long v = 0;
  while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

inline long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

/// x with every factor of p removed.
inline Integer strip_prime(const Integer& x, const Integer& p) {
  Integer r = x;
  while (r != 0 && mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t()))
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Floor division, rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Truncating division (toward zero).
inline Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool is_perfect_square(const Integer& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

inline bool fits_int64(const Integer& x) { return x.fits_slong_p(); }

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline Integer parse_integer(std::string_view text) {
  const std::string t = trim(text);
  Integer x;
  const char* s = t.c_str();
  if (!t.empty() && t[0] == '+') ++s;
  if (t.empty() || x.set_str(s, 10) != 0)
    throw std::invalid_argument("not an integer: '" + t + "'");
  return x;
}

/// Accepts "a" or "a/b"; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(t));
  const Integer num = parse_integer(std::string_view(t).substr(0, slash));
  const Integer den = parse_integer(std::string_view(t).substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + t + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace polobstruct
