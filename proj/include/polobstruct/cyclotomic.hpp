#pragma once

// Arithmetic in K = Q(zeta_p) and its maximal real subfield K+.
//
// Elements of K are stored in the power basis 1, zeta, ..., zeta^(p-2) and
// reduced modulo Phi_p after every product; elements of K+ use the basis
// 1, eta, ..., eta^((p-3)/2) with eta = zeta + zeta^-1.

#include "polobstruct/bigfloat.hpp"
#include "polobstruct/intlinalg.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polobstruct {

/// 1 + x + ... + x^(p-1)
inline IntPoly cyclotomic_poly(long p) {
  require_odd_prime(p, "cyclotomic_poly");
  return IntPoly(std::vector<Integer>(static_cast<std::size_t>(p), Integer(1)));
}

class CycElem {
 public:
  CycElem(long p, std::vector<Rational> coords) : p_(p), c_(std::move(coords)) {
    require_odd_prime(p, "CycElem");
    if (c_.size() != static_cast<std::size_t>(p - 1))
      throw std::invalid_argument("CycElem: expected " + std::to_string(p - 1) + " coordinates");
  }

  static CycElem scalar(long p, const Rational& q) {
    require_odd_prime(p, "CycElem");
    std::vector<Rational> c(static_cast<std::size_t>(p - 1), Rational(0));
    c[0] = q;
    return {p, std::move(c)};
  }

  /// zeta^k for any integer k.
  static CycElem zeta_power(long p, long k) {
    require_odd_prime(p, "CycElem");
    std::vector<Rational> exps(static_cast<std::size_t>(p), Rational(0));
    exps[static_cast<std::size_t>(((k % p) + p) % p)] = 1;
    return from_exponents(p, std::move(exps));
  }

  /// Element sum_k e[k] zeta^k for a coefficient vector of any length.
  static CycElem from_exponents(long p, std::vector<Rational> e) {
    std::vector<Rational> folded(static_cast<std::size_t>(p), Rational(0));
    for (std::size_t k = 0; k < e.size(); ++k) folded[k % static_cast<std::size_t>(p)] += e[k];
    const Rational top = folded.back();
    folded.pop_back();
    if (top != 0)
      for (auto& x : folded) x -= top;
    return {p, std::move(folded)};
  }

  long prime() const { return p_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// True iff the element lies in Z[zeta], the ring of integers.
  bool is_integral() const {
    for (const auto& x : c_)
      if (x.get_den() != 1) return false;
    return true;
  }

  friend bool operator==(const CycElem& a, const CycElem& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

  friend CycElem operator+(const CycElem& a, const CycElem& b) {
    a.check_same_field(b);
    std::vector<Rational> c = a.c_;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.c_[k];
    return {a.p_, std::move(c)};
  }
  friend CycElem operator-(const CycElem& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x = -x;
    return {a.p_, std::move(c)};
  }
  friend CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }
  friend CycElem operator*(const CycElem& a, const CycElem& b) {
    a.check_same_field(b);
    std::vector<Rational> prod(2 * a.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return from_exponents(a.p_, std::move(prod));
  }
  friend CycElem operator*(const Rational& s, const CycElem& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return {a.p_, std::move(c)};
  }

  std::string to_string() const {
    std::ostringstream os;
    os << p_ << ";";
    for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? ", " : " ") << c_[k];
    return os.str();
  }

 private:
  void check_same_field(const CycElem& o) const {
    if (p_ != o.p_) throw std::invalid_argument("CycElem: elements of different fields");
  }

  long p_;
  std::vector<Rational> c_;
};

/// Multiplication-by-a matrix in the power basis: column j holds the
/// coordinates of a * zeta^j.
inline RatMatrix regular_rep(const CycElem& a) {
  const std::size_t n = a.coords().size();
  RatMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const CycElem col = a * CycElem::zeta_power(a.prime(), static_cast<long>(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coords()[i];
  }
  return m;
}

inline Rational norm_to_Q(const CycElem& a) { return det(regular_rep(a)); }

/// Image under zeta -> zeta^-1.
inline CycElem complex_conj(const CycElem& a) {
  const long p = a.prime();
  std::vector<Rational> e(static_cast<std::size_t>(p), Rational(0));
  for (std::size_t k = 0; k < a.coords().size(); ++k)
    e[(static_cast<std::size_t>(p) - k) % static_cast<std::size_t>(p)] += a.coords()[k];
  return CycElem::from_exponents(p, std::move(e));
}

inline CycElem inverse(const CycElem& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero in Q(zeta)");
  // a^-1 is the first column of regular_rep(a)^-1.
  const RatMatrix inv = inverse(regular_rep(a));
  return {a.prime(), inv.column(0)};
}

// ---------------------------------------------------------------------------
// Maximal real subfield

inline std::size_t real_degree(long p) { return static_cast<std::size_t>((p - 1) / 2); }

inline CycElem eta(long p) { return CycElem::zeta_power(p, 1) + CycElem::zeta_power(p, -1); }

class RealElem {
 public:
  RealElem(long p, std::vector<Rational> coords) : p_(p), c_(std::move(coords)) {
    require_odd_prime(p, "RealElem");
    if (c_.size() != real_degree(p))
      throw std::invalid_argument("RealElem: expected " + std::to_string(real_degree(p)) + " coordinates");
  }

  static RealElem scalar(long p, const Rational& q) {
    require_odd_prime(p, "RealElem");
    std::vector<Rational> c(real_degree(p), Rational(0));
    c[0] = q;
    return {p, std::move(c)};
  }

  long prime() const { return p_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_integral() const {
    for (const auto& x : c_)
      if (x.get_den() != 1) return false;
    return true;
  }

  friend bool operator==(const RealElem& a, const RealElem& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const RealElem& a, const RealElem& b) { return !(a == b); }

  friend RealElem operator*(const Rational& s, const RealElem& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return {a.p_, std::move(c)};
  }

 private:
  long p_;
  std::vector<Rational> c_;
};

/// Columns are the power-basis coordinates of eta^0, ..., eta^(m-1).
inline RatMatrix eta_power_matrix(long p) {
  const std::size_t m = real_degree(p);
  RatMatrix e(static_cast<std::size_t>(p - 1), m);
  CycElem pw = CycElem::scalar(p, Rational(1));
  const CycElem h = eta(p);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < e.rows(); ++i) e(i, k) = pw.coords()[i];
    pw = pw * h;
  }
  return e;
}

struct EtaBasis {
  RatMatrix e;     // eta_power_matrix
  RatMatrix left;  // (e^T e)^-1 e^T
};

/// Per-prime cache of the eta basis and a left inverse of it.
inline const EtaBasis& eta_basis(long p) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<EtaBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) {
    RatMatrix e = eta_power_matrix(p);
    const RatMatrix et = e.transpose();
    RatMatrix left = inverse(et * e) * et;
    slot = std::make_unique<EtaBasis>(EtaBasis{std::move(e), std::move(left)});
  }
  return *slot;
}

inline CycElem lift(const RealElem& a) { return {a.prime(), eta_basis(a.prime()).e * a.coords()}; }

/// eta coordinates of a power-basis vector, or nullopt if it is not in K+.
inline std::optional<std::vector<Rational>> eta_coordinates(long p, const std::vector<Rational>& v) {
  const EtaBasis& b = eta_basis(p);
  std::vector<Rational> x = b.left * v;
  if (b.e * x != v) return std::nullopt;
  return x;
}

inline RealElem restrict_to_real(const CycElem& a) {
  if (complex_conj(a) != a)
    throw std::domain_error("restrict_to_real: element is not fixed by complex conjugation");
  auto x = eta_coordinates(a.prime(), a.coords());
  if (!x) throw std::logic_error("restrict_to_real: conjugation-fixed element outside K+");
  return {a.prime(), std::move(*x)};
}

inline RealElem operator*(const RealElem& a, const RealElem& b) {
  return restrict_to_real(lift(a) * lift(b));
}

/// Multiplication-by-a on K+ in the eta basis.
inline RatMatrix real_regular_rep(const RealElem& a) {
  const long p = a.prime();
  const std::size_t m = real_degree(p);
  const RatMatrix& e = eta_basis(p).e;
  const CycElem h = eta(p);
  CycElem prod{p, e * a.coords()};
  RatMatrix out(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) prod = prod * h;
    auto x = eta_coordinates(p, prod.coords());
    if (!x) throw std::logic_error("real_regular_rep: product left K+");
    for (std::size_t i = 0; i < m; ++i) out(i, j) = (*x)[i];
  }
  return out;
}

inline Rational norm_real_to_Q(const RealElem& a) { return det(real_regular_rep(a)); }

// ---------------------------------------------------------------------------
// Sturm sequences

/// Sign variations of a sequence, zeros skipped.
inline std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Sturm sequence of the squarefree part of f, each term scaled to a
/// primitive integer polynomial by a positive factor.
inline std::vector<IntPoly> sturm_sequence(const RatPoly& f) {
  if (f.is_zero()) throw std::domain_error("sturm_sequence of zero polynomial");
  const RatPoly g = divmod(f, gcd(f, f.derivative())).first;
  std::vector<IntPoly> seq{primitive_part(g)};
  RatPoly prev = g;
  RatPoly cur = g.derivative();
  while (!cur.is_zero()) {
    seq.push_back(primitive_part(cur));
    RatPoly next = -divmod(prev, cur).second;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return seq;
}

/// Number of distinct real roots of f in (-inf, 0].
inline std::size_t count_nonpositive_roots(const RatPoly& f) {
  const auto seq = sturm_sequence(f);
  std::vector<int> at_minus_inf;
  std::vector<int> at_zero;
  for (const auto& s : seq) {
    const int lead = sign(s.leading());
    at_minus_inf.push_back(s.degree() % 2 == 0 ? lead : -lead);
    at_zero.push_back(sign(s.coeff(0)));
  }
  std::size_t below = sign_variations(at_minus_inf) - sign_variations(at_zero);
  if (seq.front().coeff(0) == 0) ++below;
  return below;
}

/// Exact test that every real embedding of a is positive. All roots of
/// the characteristic polynomial of multiplication-by-a are real because
/// K+ is totally real, so a is totally positive iff none is <= 0.
inline bool is_totally_positive(const RealElem& a) {
  if (a.is_zero()) throw std::domain_error("is_totally_positive: zero element");
  return count_nonpositive_roots(charpoly(real_regular_rep(a))) == 0;
}

/// Totally positive square root of x in K+, if one exists.
///
/// The candidate is recovered numerically from the embeddings (a totally
/// positive square root is unique) and then certified exactly.
inline std::optional<RealElem> totally_positive_sqrt(const RealElem& x) {
  if (x.is_zero() || !is_totally_positive(x)) return std::nullopt;
  const long p = x.prime();
  const std::size_t m = real_degree(p);
  Integer d = 1;
  for (const auto& c : x.coords()) d = lcm(d, c.get_den());
  const RealElem y = Rational(d * d) * x;
  const Rational ny = norm_real_to_Q(y);
  if (ny.get_den() != 1 || !is_perfect_square(Integer(ny.get_num()))) return std::nullopt;

  Integer size = 1;
  for (const auto& c : y.coords()) size = std::max(size, Integer(abs(c.get_num())));
  const mpfr_prec_t base = 128 + static_cast<mpfr_prec_t>(mpz_sizeinbase(size.get_mpz_t(), 2)) +
                           16 * static_cast<mpfr_prec_t>(m);
  for (mpfr_prec_t prec = base; prec <= 8 * base; prec *= 2) {
    // Vandermonde system in the embeddings eta_j = 2 cos(2 pi j / p).
    std::vector<std::vector<BigFloat>> v(m, std::vector<BigFloat>(m + 1, BigFloat(prec)));
    for (std::size_t j = 0; j < m; ++j) {
      const BigFloat e = BigFloat::two_cos(static_cast<long>(j) + 1, p, prec);
      BigFloat pw(Rational(1), prec);
      BigFloat val(prec);
      for (std::size_t k = 0; k < m; ++k) {
        v[j][k] = pw;
        val = val + BigFloat(y.coords()[k], prec) * pw;
        pw = pw * e;
      }
      if (val.sign() <= 0) return std::nullopt;
      v[j][m] = sqrt(val);
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < m; ++r)
        if (abs(v[piv][c]) < abs(v[r][c])) piv = r;
      std::swap(v[piv], v[c]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const BigFloat f = v[r][c] / v[c][c];
        for (std::size_t k = c; k <= m; ++k) v[r][k] = v[r][k] - f * v[c][k];
      }
    }
    std::vector<Rational> coords;
    for (std::size_t k = 0; k < m; ++k) coords.emplace_back((v[k][m] / v[k][k]).round());
    const RealElem cand{p, std::move(coords)};
    if (!cand.is_zero() && cand * cand == y && is_totally_positive(cand))
      return Rational(Integer(1), d) * cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text format "p; c0, c1, ..." with rational entries "a/b". Missing
// trailing coordinates are zero.

inline CycElem parse_cyc_elem(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw std::invalid_argument("element must look like 'p; c0, c1, ...'");
  const Integer pz = parse_integer(text.substr(0, semi));
  if (!pz.fits_slong_p() || !is_odd_prime(pz.get_si()))
    throw std::invalid_argument("element prime is not an odd prime: " + pz.get_str());
  const long p = pz.get_si();
  std::vector<Rational> c;
  std::string_view rest = text.substr(semi + 1);
  while (!trim(rest).empty()) {
    const auto comma = rest.find(',');
    c.push_back(parse_rational(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (c.size() > static_cast<std::size_t>(p - 1))
    throw std::invalid_argument("too many coordinates for p = " + std::to_string(p));
  c.resize(static_cast<std::size_t>(p - 1), Rational(0));
  return {p, std::move(c)};
}

}  // namespace polobstruct
