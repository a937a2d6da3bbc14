#pragma once

// X[p] as an F_p-module with zeta-action, its (zeta-1)-adic filtration,
// and E[p]-rank bookkeeping.
//
// E[p] is treated as an opaque simple module of rank p^2; the Galois group
// itself is never represented.

#include "polobstruct/twist.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polobstruct {

/// Dense matrix over F_p with entries in [0, p).
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, std::int64_t p) : rows_(rows), cols_(cols), p_(p), d_(rows * cols, 0) {}

  static FpMatrix reduce(const IntMatrix& a, std::int64_t p) {
    FpMatrix m(a.rows(), a.cols(), p);
    const Integer pz = p;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), pz.get_mpz_t());
        m(i, j) = r.get_si();
      }
    return m;
  }

  static FpMatrix identity(std::size_t n, std::int64_t p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t modulus() const { return p_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  bool is_zero() const {
    for (auto x : d_)
      if (x) return false;
    return true;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.d_ == b.d_;
  }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("FpMatrix product: dimension mismatch");
    FpMatrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::int64_t aik = a(i, k);
        if (!aik) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = (c(i, j) + aik * b(k, j)) % a.p_;
      }
    return c;
  }

  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix c = a;
    for (std::size_t k = 0; k < c.d_.size(); ++k) c.d_[k] = ((a.d_[k] - b.d_[k]) % a.p_ + a.p_) % a.p_;
    return c;
  }

  /// Column basis of the column space, in reduced column-echelon form.
  FpMatrix column_space() const {
    FpMatrix t = transpose();
    const std::size_t r = t.row_reduce();
    FpMatrix basis(rows_, r, p_);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < rows_; ++i) basis(i, k) = t(k, i);
    return basis;
  }

  std::size_t rank() const {
    FpMatrix t = *this;
    return t.row_reduce();
  }

  FpMatrix transpose() const {
    FpMatrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  FpMatrix hconcat(const FpMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat: row mismatch");
    FpMatrix c(rows_, cols_ + o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) c(i, cols_ + j) = o(i, j);
    }
    return c;
  }

 private:
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, base = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return r;
  }

  /// Reduced row-echelon form in place; returns the rank.
  std::size_t row_reduce() {
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols_ && r < rows_; ++j) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, j) == 0) ++piv;
      if (piv == rows_) continue;
      for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(piv, k), (*this)(r, k));
      const std::int64_t f = inv((*this)(r, j));
      for (std::size_t k = 0; k < cols_; ++k) (*this)(r, k) = (*this)(r, k) * f % p_;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, j) == 0) continue;
        const std::int64_t g = (*this)(i, j);
        for (std::size_t k = 0; k < cols_; ++k)
          (*this)(i, k) = (((*this)(i, k) - g * (*this)(r, k)) % p_ + p_) % p_;
      }
      ++r;
    }
    return r;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::int64_t p_;
  std::vector<std::int64_t> d_;
};

/// Kronecker product a (x) I_k.
inline FpMatrix kron_identity(const FpMatrix& a, std::size_t k) {
  FpMatrix m(a.rows() * k, a.cols() * k, a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t t = 0; t < k; ++t) m(i * k + t, j * k + t) = a(i, j);
  return m;
}

struct TorsionModule {
  long p;
  std::size_t dim;
  FpMatrix action;
};

/// X[p] = E[p]^(p-1) with zeta acting through zeta (x) I_2.
inline TorsionModule build_ptorsion(long p) {
  require_odd_prime(p, "build_ptorsion");
  const FpMatrix z = FpMatrix::reduce(build_zeta(p), p);
  TorsionModule m{p, static_cast<std::size_t>(2 * (p - 1)), kron_identity(z, 2)};
  FpMatrix nil = m.action - FpMatrix::identity(m.dim, p);
  FpMatrix pw = FpMatrix::identity(m.dim, p);
  for (long k = 0; k < p - 1; ++k) pw = pw * nil;
  if (!pw.is_zero()) throw std::logic_error("build_ptorsion: (zeta - 1)^(p-1) is not zero mod p");
  return m;
}

/// Successive images V_i = (zeta - 1)^i X[p] for i = 0, ..., p-1, as
/// column bases.
inline std::vector<FpMatrix> filtration(const TorsionModule& m) {
  const FpMatrix nil = m.action - FpMatrix::identity(m.dim, m.p);
  std::vector<FpMatrix> steps{FpMatrix::identity(m.dim, m.p)};
  for (long i = 1; i <= m.p - 1; ++i) steps.push_back((nil * steps.back()).column_space());
  return steps;
}

inline std::vector<std::size_t> filtration_dims(const TorsionModule& m) {
  std::vector<std::size_t> dims;
  for (const auto& s : filtration(m)) dims.push_back(s.cols());
  return dims;
}

inline std::string ep_label(long p) { return "E[" + std::to_string(p) + "]"; }

/// Composition factors read off the filtration. Each graded piece must be
/// two-dimensional with zeta acting trivially on it.
inline std::vector<std::string> composition_factors(const TorsionModule& m) {
  const FpMatrix nil = m.action - FpMatrix::identity(m.dim, m.p);
  const auto steps = filtration(m);
  std::vector<std::string> factors;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    const std::size_t d = steps[i].cols() - steps[i + 1].cols();
    if (d != 2)
      throw std::logic_error("composition_factors: graded piece " + std::to_string(i) + " has dimension " +
                             std::to_string(d));
    // (zeta - 1) V_i must land in V_{i+1}.
    const FpMatrix moved = nil * steps[i];
    if (steps[i + 1].hconcat(moved).rank() != steps[i + 1].cols())
      throw std::logic_error("composition_factors: zeta acts nontrivially on graded piece " + std::to_string(i));
    factors.push_back(ep_label(m.p));
  }
  if (steps.back().cols() != 0) throw std::logic_error("composition_factors: filtration does not reach 0");
  return factors;
}

/// The socle ker(zeta - 1) equals the diagonal copy of E[p].
inline bool socle_is_diagonal(const TorsionModule& m) {
  const FpMatrix nil = m.action - FpMatrix::identity(m.dim, m.p);
  const std::size_t n = m.dim / 2;
  FpMatrix diag(m.dim, 2, m.p);
  for (std::size_t i = 0; i < n; ++i) {
    diag(2 * i, 0) = 1;
    diag(2 * i + 1, 1) = 1;
  }
  const std::size_t kernel_dim = m.dim - nil.rank();
  return kernel_dim == 2 && (nil * diag).is_zero();
}

struct EpRank {
  long value;
  bool odd() const { return value % 2 != 0; }
};

/// E[p]-rank of a kernel of the given order: v_p(order) / 2, since every
/// p-part composition factor is E[p], of rank p^2.
inline EpRank e_rank_of_order(const Integer& order, long p) {
  require_odd_prime(p, "e_rank_of_order");
  if (order <= 0) throw std::invalid_argument("e_rank_of_order: order must be positive");
  const long v = valuation(order, Integer(p));
  if (v % 2 != 0)
    throw std::invalid_argument("e_rank_of_order: p-adic valuation " + std::to_string(v) +
                                " is odd, so the order is not that of a kernel in this class");
  return {v / 2};
}

/// Dual isogenies have Cartier-dual kernels of the same order; E[p] is
/// self-dual, so the rank is unchanged.
inline EpRank dual_e_rank(const Integer& order, long p) { return e_rank_of_order(order, p); }

struct ParityResult {
  long p;
  Integer n;
  Integer degree;  // p^2 n^4
  EpRank rank;
};

/// E[p]-rank of the kernel of a polarization of degree p^2 n^4.
inline ParityResult polarization_parity(long p, const Integer& n) {
  require_odd_prime(p, "polarization_parity");
  if (n <= 0) throw std::invalid_argument("polarization_parity: n must be positive");
  const Integer deg = Integer(p) * p * n * n * n * n;
  return {p, n, deg, e_rank_of_order(deg, p)};
}

}  // namespace polobstruct
