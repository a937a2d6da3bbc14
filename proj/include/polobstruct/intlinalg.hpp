#pragma once

// Exact linear algebra over Z and Q: determinants, Hermite and Smith
// normal forms, characteristic and minimal polynomials, integer kernels.

#include "polobstruct/matrix.hpp"
#include "polobstruct/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polobstruct {

namespace detail {

inline void require_square(const IntMatrix& a, const char* who) {
  if (!a.is_square()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
}

inline void require_square(const RatMatrix& a, const char* who) {
  if (!a.is_square()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
}

inline Integer divexact(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMatrix& a) {
  detail::require_square(a, "det");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int s = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(i, k);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = detail::divexact(t, prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return s * m(n - 1, n - 1);
}

/// Determinant of a rational matrix; each row is scaled to integers first.
inline Rational det(const RatMatrix& a) {
  detail::require_square(a, "det");
  const std::size_t n = a.rows();
  IntMatrix m(n, n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, a(i, j).get_den());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  Rational d(det(m), scale);
  d.canonicalize();
  return d;
}

/// Rank over Q.
template <class T>
std::size_t rank(const Matrix<T>& a) {
  RatMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, j) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (m(i, j) != 0) m.add_row_multiple(i, r, Rational(-m(i, j) / m(r, j)));
    ++r;
  }
  return r;
}

/// Gauss-Jordan inverse over Q. Throws on singular input.
inline RatMatrix inverse(const RatMatrix& a) {
  detail::require_square(a, "inverse");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = j;
    while (piv < n && m(piv, j) == 0) ++piv;
    if (piv == n) throw std::domain_error("inverse: matrix is singular");
    m.swap_rows(piv, j);
    inv.swap_rows(piv, j);
    const Rational f = 1 / m(j, j);
    for (std::size_t k = 0; k < n; ++k) {
      m(j, k) *= f;
      inv(j, k) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || m(i, j) == 0) continue;
      const Rational g = -m(i, j);
      m.add_row_multiple(i, j, g);
      inv.add_row_multiple(i, j, g);
    }
  }
  return inv;
}

/// Some solution of a x = b over Q, or nullopt if the system is
/// inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve(const RatMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t n = a.cols();
  RatMatrix m(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m.rows(); ++j) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, j) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    const Rational f = 1 / m(r, j);
    for (std::size_t k = j; k <= n; ++k) m(r, k) *= f;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, j) != 0) m.add_row_multiple(i, r, Rational(-m(i, j)));
    pivots.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < m.rows(); ++i)
    if (m(i, n) != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = m(i, n);
  return x;
}

/// Row Hermite normal form: echelon form with positive pivots, entries
/// above each pivot reduced into [0, pivot), zero rows dropped. Two
/// integer matrices have the same row lattice iff their HNFs are equal.
inline IntMatrix hnf_rows(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m(i, j) != 0 && (best == rows || abs(m(i, j)) < abs(m(best, j)))) best = i;
      if (best == rows) break;
      m.swap_rows(best, r);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, j) == 0) continue;
        const Integer q = trunc_div(m(i, j), m(r, j));
        m.add_row_multiple(i, r, Integer(-q));
        if (m(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(r, j) == 0) continue;
    if (m(r, j) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (m(i, j) == 0) continue;
      const Integer q = floor_div(m(i, j), m(r, j));
      m.add_row_multiple(i, r, Integer(-q));
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

/// Column Hermite normal form: canonical basis (as columns) of the
/// lattice spanned by the columns of a.
inline IntMatrix hnf_cols(const IntMatrix& a) { return hnf_rows(a.transpose()).transpose(); }

struct SnfResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

struct Position {
  std::size_t row;
  std::size_t col;
};

/// Smallest nonzero |entry| among those accepted by `in_scope`; ties go to
/// the lowest row, then the lowest column.
template <class Pred>
std::optional<Position> smallest_nonzero(const IntMatrix& d, std::size_t t, Pred in_scope) {
  std::optional<Position> best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0 || !in_scope(i, j)) continue;
      if (!best || abs(d(i, j)) < abs(d(best->row, best->col))) best = Position{i, j};
    }
  return best;
}

}  // namespace detail

/// Smith normal form with transforms: U a V = D, U and V unimodular,
/// D diagonal with d1 | d2 | ... and all d_i >= 0.
inline SnfResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfResult res{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& D = res.D;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;

  auto bring_to = [&](std::size_t t, detail::Position p) {
    D.swap_rows(t, p.row);
    U.swap_rows(t, p.row);
    D.swap_cols(t, p.col);
    V.swap_cols(t, p.col);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto piv = detail::smallest_nonzero(D, t, [](std::size_t, std::size_t) { return true; });
    if (!piv) break;
    bring_to(t, *piv);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = -trunc_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, q);
        U.add_row_multiple(i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = -trunc_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, q);
        V.add_col_multiple(j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        auto p = detail::smallest_nonzero(
            D, t, [t](std::size_t i, std::size_t j) { return i == t || j == t; });
        bring_to(t, *p);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      D.add_row_multiple(t, *bad_row, Integer(1));
      U.add_row_multiple(t, *bad_row, Integer(1));
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return res;
}

inline std::vector<Integer> invariant_factors(const IntMatrix& a) { return snf(a).diagonal(); }

/// Characteristic polynomial over Q via reduction to upper Hessenberg form.
inline RatPoly charpoly(const RatMatrix& a) {
  detail::require_square(a, "charpoly");
  const std::size_t n = a.rows();
  RatMatrix h = a;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      h.swap_rows(piv, j + 1);
      h.swap_cols(piv, j + 1);
    }
    for (std::size_t r = j + 2; r < n; ++r) {
      if (h(r, j) == 0) continue;
      const Rational f = h(r, j) / h(j + 1, j);
      h.add_row_multiple(r, j + 1, Rational(-f));
      h.add_col_multiple(j + 1, r, f);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{k=m-i+1}^{m} h_{k,k-1}) p_{m-i-1}
  // with 1-based indices.
  auto H = [&h](std::size_t i, std::size_t j) -> const Rational& { return h(i - 1, j - 1); };
  std::vector<RatPoly> p(n + 1);
  p[0] = RatPoly::constant(Rational(1));
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = (RatPoly::x() - RatPoly::constant(H(m, m))) * p[m - 1];
    Rational prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      prod *= H(m - i + 1, m - i);
      if (prod == 0) break;
      const Rational c = H(m - i, m) * prod;
      if (c != 0) p[m] = p[m] - c * p[m - i - 1];
    }
  }
  return p[n];
}

/// Monic characteristic polynomial det(xI - a) with integer coefficients.
inline IntPoly charpoly(const IntMatrix& a) {
  detail::require_square(a, "charpoly");
  return to_integer(charpoly(to_rational(a)));
}

/// Monic generator of {f : f(a) v = 0}.
inline RatPoly local_minpoly(const RatMatrix& a, const std::vector<Rational>& v) {
  const std::size_t n = a.rows();
  struct Reduced {
    std::vector<Rational> vec;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Reduced> basis;
  std::vector<Rational> w = v;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    std::vector<Rational> r = w;
    for (const auto& b : basis) {
      if (r[b.pivot] == 0) continue;
      const Rational f = r[b.pivot] / b.vec[b.pivot];
      for (std::size_t i = 0; i < n; ++i)
        if (b.vec[i] != 0) r[i] -= f * b.vec[i];
      for (std::size_t t = 0; t < b.combo.size(); ++t) combo[t] -= f * b.combo[t];
    }
    std::size_t piv = 0;
    while (piv < n && r[piv] == 0) ++piv;
    if (piv == n) return RatPoly(std::move(combo));
    basis.push_back({std::move(r), std::move(combo), piv});
    w = a * w;
  }
  throw std::logic_error("local_minpoly: Krylov sequence did not terminate");
}

/// Minimal polynomial as the lcm of the local minimal polynomials of the
/// standard basis vectors, skipping vectors already annihilated.
inline RatPoly minpoly(const RatMatrix& a) {
  detail::require_square(a, "minpoly");
  const std::size_t n = a.rows();
  RatPoly m = RatPoly::constant(Rational(1));
  for (std::size_t j = 0; j < n && m.degree() < static_cast<long>(n); ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    const auto w = evaluate(m, a, e);
    if (std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; })) continue;
    m = lcm(m, local_minpoly(a, e));
  }
  return m;
}

inline IntPoly minpoly(const IntMatrix& a) {
  detail::require_square(a, "minpoly");
  return to_integer(minpoly(to_rational(a)));
}

// ---------------------------------------------------------------------------
// Integer kernels

/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

struct SparseSystem {
  std::size_t cols = 0;
  std::vector<SparseRow> rows;

  static SparseSystem from_dense(const IntMatrix& a) {
    SparseSystem s{a.cols(), {}};
    for (std::size_t i = 0; i < a.rows(); ++i) {
      SparseRow r;
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0) r.emplace_back(j, a(i, j));
      s.rows.push_back(std::move(r));
    }
    return s;
  }
};

namespace detail {

/// dst - f * src
inline SparseRow axpy(const SparseRow& dst, const Integer& f, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, Integer(-f * src[j].second));
      ++j;
    } else {
      Integer v = dst[i].second - f * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Row-HNF basis of the integer kernel of a dense matrix, via the
/// unimodular reduction of [a^T | I].
inline IntMatrix dense_kernel_rows(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix aug(n, m + n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug(j, i) = a(i, j);
    aug(j, m + j) = 1;
  }
  const IntMatrix h = hnf_rows(aug);
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    bool zero_prefix = true;
    for (std::size_t i = 0; i < m && zero_prefix; ++i) zero_prefix = h(r, i) == 0;
    if (zero_prefix) keep.push_back(r);
  }
  IntMatrix k(keep.size(), n);
  for (std::size_t t = 0; t < keep.size(); ++t)
    for (std::size_t j = 0; j < n; ++j) k(t, j) = h(keep[t], m + j);
  return k;
}

}  // namespace detail

/// Basis (as HNF columns) of the lattice {v in Z^n : a v = 0}.
///
/// Unit-coefficient pivots are eliminated sparsely first, which is
/// unimodular and keeps everything integral; whatever rows remain are
/// handled by a dense Hermite reduction over the surviving variables.
inline IntMatrix int_kernel(const SparseSystem& sys) {
  const std::size_t n = sys.cols;
  std::vector<SparseRow> rows;
  for (const auto& r : sys.rows) {
    for (const auto& [c, v] : r)
      if (c >= n) throw std::invalid_argument("int_kernel: column index out of range");
    if (!r.empty()) rows.push_back(r);
  }

  std::vector<std::set<std::size_t>> col_rows(n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);

  std::set<std::pair<std::size_t, std::size_t>> queue;  // (length, row)
  for (std::size_t i = 0; i < rows.size(); ++i) queue.emplace(rows[i].size(), i);
  std::vector<bool> alive(rows.size(), true);
  std::vector<bool> eliminated(n, false);
  std::vector<std::pair<std::size_t, SparseRow>> pivots;  // (column, defining row)
  std::set<std::size_t> stuck;

  while (!queue.empty()) {
    const std::size_t r = queue.begin()->second;
    queue.erase(queue.begin());
    std::optional<std::size_t> col;
    for (const auto& [c, v] : rows[r]) {
      if (abs(v) != 1) continue;
      if (!col || col_rows[c].size() < col_rows[*col].size()) col = c;
    }
    if (!col) {
      stuck.insert(r);
      continue;
    }
    const std::size_t c = *col;
    const SparseRow prow = rows[r];
    Integer unit = 0;
    for (const auto& [cc, v] : prow)
      if (cc == c) unit = v;
    const std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
    for (const std::size_t s : targets) {
      if (s == r) continue;
      Integer coef = 0;
      for (const auto& [cc, v] : rows[s])
        if (cc == c) coef = v;
      for (const auto& [cc, v] : rows[s]) col_rows[cc].erase(s);
      if (stuck.erase(s) == 0) queue.erase({rows[s].size(), s});
      rows[s] = detail::axpy(rows[s], Integer(coef * unit), prow);
      for (const auto& [cc, v] : rows[s]) col_rows[cc].insert(s);
      if (rows[s].empty())
        alive[s] = false;
      else
        queue.emplace(rows[s].size(), s);
    }
    for (const auto& [cc, v] : prow) col_rows[cc].erase(r);
    alive[r] = false;
    eliminated[c] = true;
    pivots.emplace_back(c, prow);
  }

  std::vector<std::size_t> free_vars;
  std::vector<std::size_t> free_index(n, n);
  for (std::size_t j = 0; j < n; ++j)
    if (!eliminated[j]) {
      free_index[j] = free_vars.size();
      free_vars.push_back(j);
    }

  IntMatrix free_basis;
  std::vector<std::size_t> rest;
  for (std::size_t s : stuck)
    if (alive[s]) rest.push_back(s);
  if (rest.empty()) {
    free_basis = IntMatrix::identity(free_vars.size());
  } else {
    IntMatrix dense(rest.size(), free_vars.size());
    for (std::size_t t = 0; t < rest.size(); ++t)
      for (const auto& [c, v] : rows[rest[t]]) dense(t, free_index[c]) = v;
    free_basis = detail::dense_kernel_rows(dense);
  }

  IntMatrix kernel(n, free_basis.rows());
  for (std::size_t k = 0; k < free_basis.rows(); ++k) {
    std::vector<Integer> v(n, Integer(0));
    for (std::size_t t = 0; t < free_vars.size(); ++t) v[free_vars[t]] = free_basis(k, t);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const std::size_t c = it->first;
      Integer unit = 0;
      Integer acc = 0;
      for (const auto& [cc, coef] : it->second) {
        if (cc == c)
          unit = coef;
        else if (v[cc] != 0)
          acc += coef * v[cc];
      }
      v[c] = -unit * acc;
    }
    for (std::size_t i = 0; i < n; ++i) kernel(i, k) = v[i];
  }
  return hnf_cols(kernel);
}

inline IntMatrix int_kernel(const IntMatrix& a) { return int_kernel(SparseSystem::from_dense(a)); }

/// Coordinates of v in the lattice basis given by the (independent)
/// columns of `basis`, or nullopt if v is not in the lattice.
inline std::optional<std::vector<Integer>> lattice_coordinates(const IntMatrix& basis,
                                                               const std::vector<Integer>& v) {
  std::vector<Rational> rhs(v.begin(), v.end());
  auto x = solve(to_rational(basis), rhs);
  if (!x) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& q : *x) {
    if (q.get_den() != 1) return std::nullopt;
    out.push_back(q.get_num());
  }
  return out;
}

}  // namespace polobstruct
