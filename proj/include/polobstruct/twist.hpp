#pragma once

// The twist of E^(p-1) by the cocycle sigma -> zeta, the polarization
// matrix b, and the descent criteria for endomorphisms and polarizations.
// Endomorphisms of E^(p-1) are integer matrices acting on Z^(p-1).

#include "polobstruct/cyclotomic.hpp"
#include "polobstruct/intlinalg.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polobstruct {

/// First row all -1, ones on the subdiagonal.
inline IntMatrix build_zeta(long p) {
  require_odd_prime(p, "build_zeta");
  const std::size_t n = static_cast<std::size_t>(p - 1);
  IntMatrix z(n, n);
  for (std::size_t j = 0; j < n; ++j) z(0, j) = -1;
  for (std::size_t i = 1; i < n; ++i) z(i, i - 1) = 1;
  return z;
}

/// The cyclic shift of E^p restricted to the trace-zero sublattice and
/// written in the coordinates given by projecting onto the first p-1
/// factors.
inline IntMatrix reduce_shift(long p) {
  require_odd_prime(p, "reduce_shift");
  const std::size_t full = static_cast<std::size_t>(p);
  const std::size_t n = full - 1;
  // (x_1, ..., x_p) -> (x_p, x_1, ..., x_{p-1})
  IntMatrix shift(full, full);
  for (std::size_t i = 0; i < full; ++i) shift((i + 1) % full, i) = 1;
  // Inverse of the projection: y -> (y, -sum y), landing in the trace-zero sublattice.
  IntMatrix section(full, n);
  for (std::size_t i = 0; i < n; ++i) {
    section(i, i) = 1;
    section(n, i) = -1;
  }
  IntMatrix projection(n, full);
  for (std::size_t i = 0; i < n; ++i) projection(i, i) = 1;

  const IntMatrix moved = shift * section;
  for (std::size_t j = 0; j < n; ++j) {
    Integer trace = 0;
    for (std::size_t i = 0; i < full; ++i) trace += moved(i, j);
    if (trace != 0) throw std::logic_error("reduce_shift: shift does not preserve the trace-zero sublattice");
  }
  return projection * moved;
}

/// 2 on the diagonal, 1 elsewhere.
inline IntMatrix build_b(long p) {
  require_odd_prime(p, "build_b");
  const std::size_t n = static_cast<std::size_t>(p - 1);
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = i == j ? 2 : 1;
  return b;
}

struct TwistData {
  long p;
  IntMatrix zeta;
  IntMatrix b;
  RatMatrix b_inv;

  static TwistData build(long p) {
    IntMatrix b = build_b(p);
    RatMatrix b_inv = inverse(to_rational(b));
    return {p, build_zeta(p), std::move(b), std::move(b_inv)};
  }
  std::size_t dim() const { return zeta.rows(); }
};

/// Descent criterion for endomorphisms: alpha commutes with the cocycle value.
inline bool endo_descends(const IntMatrix& alpha, const TwistData& t) {
  if (alpha.rows() != t.dim() || alpha.cols() != t.dim())
    throw std::invalid_argument("endo_descends: dimension mismatch");
  return t.zeta * alpha == alpha * t.zeta;
}

/// Descent criterion b^-1 zeta^T b zeta = 1, tested as zeta^T b zeta = b.
inline bool pol_descends(const TwistData& t) { return t.zeta.transpose() * t.b * t.zeta == t.b; }

/// x -> b^-1 x^T b
inline RatMatrix rosati(const RatMatrix& x, const TwistData& t) {
  if (x.rows() != t.dim() || x.cols() != t.dim()) throw std::invalid_argument("rosati: dimension mismatch");
  return t.b_inv * x.transpose() * to_rational(t.b);
}

inline RatMatrix rosati(const IntMatrix& x, const TwistData& t) { return rosati(to_rational(x), t); }

/// Degree of the isogeny given by alpha: det(alpha)^2.
inline Integer endo_degree(const IntMatrix& alpha) {
  const Integer d = det(alpha);
  if (d == 0) throw std::domain_error("endo_degree: singular matrix is not an isogeny");
  return d * d;
}

/// The linear map x -> zeta x - x zeta on (p-1)x(p-1) matrices, with x
/// flattened row-major, as a sparse system.
inline SparseSystem commutator_system(const IntMatrix& zeta) {
  const std::size_t n = zeta.rows();
  SparseSystem sys{n * n, {}};
  sys.rows.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::map<std::size_t, Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (zeta(i, k) != 0) row[k * n + j] += zeta(i, k);
      for (std::size_t l = 0; l < n; ++l)
        if (zeta(l, j) != 0) row[i * n + l] -= zeta(l, j);
      SparseRow r;
      for (auto& [c, v] : row)
        if (v != 0) r.emplace_back(c, v);
      sys.rows.push_back(std::move(r));
    }
  return sys;
}

inline IntMatrix unflatten(const std::vector<Integer>& v, std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

/// HNF (columns) of the lattice of integer matrices commuting with zeta,
/// each matrix flattened row-major.
inline IntMatrix centralizer_lattice(long p) {
  require_odd_prime(p, "centralizer_basis");
  return int_kernel(commutator_system(build_zeta(p)));
}

inline std::vector<IntMatrix> centralizer_basis(long p) {
  const IntMatrix k = centralizer_lattice(p);
  const std::size_t n = static_cast<std::size_t>(p - 1);
  std::vector<IntMatrix> out;
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(unflatten(k.column(j), n));
  return out;
}

/// HNF (columns) of the lattice spanned by zeta^0, ..., zeta^(p-2).
inline IntMatrix zeta_power_lattice(long p) {
  const IntMatrix z = build_zeta(p);
  const std::size_t n = z.rows();
  std::vector<std::vector<Integer>> cols;
  IntMatrix pw = IntMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    cols.push_back(vectorize(pw));
    pw = pw * z;
  }
  return hnf_cols(from_columns(cols, n * n));
}

/// Change of basis C with build_zeta(p) C = C regular_rep(zeta), so that
/// a field element a acts on E^(p-1) by C regular_rep(a) C^-1.
///
/// C = [v, Zv, ..., Z^(p-2) v] for v = e_1; the result is verified to be
/// unimodular and to intertwine the two matrices.
inline IntMatrix basis_change(long p) {
  const IntMatrix z = build_zeta(p);
  const std::size_t n = z.rows();
  std::vector<std::vector<Integer>> cols;
  std::vector<Integer> v(n, Integer(0));
  v[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    cols.push_back(v);
    v = z * v;
  }
  const IntMatrix c = from_columns(cols, n);
  if (abs(det(c)) != 1) throw std::logic_error("basis_change: e_1 is not a cyclic vector over Z");
  const IntMatrix r = to_integer(regular_rep(CycElem::zeta_power(p, 1)));
  if (z * c != c * r) throw std::logic_error("basis_change: matrices are not intertwined");
  return c;
}

/// The endomorphism of E^(p-1) given by a field element, in the same
/// coordinates as build_zeta.
inline RatMatrix field_to_endo(const CycElem& a, const RatMatrix& change, const RatMatrix& change_inv) {
  return change * regular_rep(a) * change_inv;
}

inline RatMatrix field_to_endo(const CycElem& a, const IntMatrix& change) {
  const RatMatrix c = to_rational(change);
  return field_to_endo(a, c, inverse(c));
}

inline RatMatrix field_to_endo(const CycElem& a) { return field_to_endo(a, basis_change(a.prime())); }

}  // namespace polobstruct
