#pragma once

// Per-prime verification report and multi-prime sweep.

#include "polobstruct/galmod.hpp"
#include "polobstruct/kergroup.hpp"
#include "polobstruct/matrix_io.hpp"
#include "polobstruct/twist.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace polobstruct {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Integral element with coordinates uniform in [-bound, bound].
inline CycElem random_integral(long p, std::mt19937_64& rng, long bound = 5) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<Rational> c;
  for (long k = 0; k < p - 1; ++k) c.emplace_back(d(rng));
  return {p, std::move(c)};
}

inline CycElem random_nonzero_integral(long p, std::mt19937_64& rng, long bound = 5) {
  while (true) {
    CycElem a = random_integral(p, rng, bound);
    if (!a.is_zero()) return a;
  }
}

struct CheckResult {
  std::string name;
  bool pass = false;
  Json witness;
};

struct VerifyReport {
  long p = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }

  Json to_json() const {
    Json j;
    j["p"] = p;
    j["seed"] = seed;
    Json status = Json::object();
    Json witness = Json::object();
    for (const auto& c : checks) {
      status[c.name] = c.pass ? "pass" : "fail";
      witness[c.name] = c.witness;
    }
    j["checks"] = std::move(status);
    j["witness"] = std::move(witness);
    j["overall"] = pass() ? "pass" : "fail";
    return j;
  }
};

namespace detail {

inline void run_check(VerifyReport& r, const std::string& name, const std::function<bool(Json&)>& body) {
  CheckResult c{name, false, Json()};
  try {
    c.pass = body(c.witness);
  } catch (const std::exception& e) {
    c.pass = false;
    c.witness = Json{{"error", e.what()}};
  }
  r.checks.push_back(std::move(c));
}

}  // namespace detail

/// Construction, descent, centralizer, degree, filtration and parity
/// checks for one prime. Deterministic for a given (p, seed).
inline VerifyReport run_verify_suite(long p, std::uint64_t seed) {
  require_odd_prime(p, "verify");
  VerifyReport r{p, seed, {}};
  std::mt19937_64 rng(seed);
  const TwistData t = TwistData::build(p);
  const std::size_t n = t.dim();
  const IntMatrix id = IntMatrix::identity(n);

  detail::run_check(r, "zeta_minpoly", [&](Json& w) {
    const IntPoly m = minpoly(t.zeta);
    w = Json{{"degree", m.degree()}};
    return m == cyclotomic_poly(p);
  });
  detail::run_check(r, "zeta_order", [&](Json&) { return t.zeta != id && power(t.zeta, p) == id; });
  detail::run_check(r, "reduce_shift", [&](Json&) { return reduce_shift(p) == t.zeta; });
  detail::run_check(r, "b_positive_definite", [&](Json&) {
    if (!t.b.is_symmetric()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      IntMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = t.b(i, j);
      if (det(minor) <= 0) return false;
    }
    return true;
  });
  detail::run_check(r, "det_b", [&](Json& w) {
    const Integer d = det(t.b);
    w = integer_to_json(d);
    return d == p;
  });
  detail::run_check(r, "pol_descends", [&](Json&) { return pol_descends(t); });
  detail::run_check(r, "pol_degree", [&](Json& w) {
    const Integer d = endo_degree(t.b);
    w = integer_to_json(d);
    return d == Integer(p) * p;
  });
  RatMatrix change;
  RatMatrix change_inv;
  IntMatrix change_z;
  IntMatrix change_inv_z;
  detail::run_check(r, "basis_change", [&](Json&) {
    change_z = basis_change(p);
    change = to_rational(change_z);
    change_inv = inverse(change);
    if (!is_integral(change_inv)) return false;
    change_inv_z = to_integer(change_inv);
    return true;
  });
  detail::run_check(r, "endo_descends", [&](Json& w) {
    if (!endo_descends(t.zeta, t) || !endo_descends(id, t)) return false;
    IntMatrix e12(n, n);
    e12(0, 1) = 1;
    if (endo_descends(e12, t)) return false;
    const int samples = 10;
    for (int s = 0; s < samples; ++s) {
      const RatMatrix m = field_to_endo(random_integral(p, rng), change, change_inv);
      if (!is_integral(m) || !endo_descends(to_integer(m), t)) return false;
    }
    w = Json{{"samples", samples}};
    return true;
  });
  detail::run_check(r, "centralizer", [&](Json& w) {
    const IntMatrix c = centralizer_lattice(p);
    w = Json{{"rank", c.cols()}};
    return c.cols() == n && c == zeta_power_lattice(p);
  });
  detail::run_check(r, "rosati_zeta", [&](Json&) { return rosati(t.zeta, t) == to_rational(power(t.zeta, p - 1)); });
  detail::run_check(r, "rosati_conj", [&](Json& w) {
    const int samples = 10;
    for (int s = 0; s < samples; ++s) {
      const CycElem a = random_integral(p, rng);
      // rosati(x) = y  <=>  x^T b = b y, with both sides integral.
      const IntMatrix x = change_z * to_integer(regular_rep(a)) * change_inv_z;
      const IntMatrix y = change_z * to_integer(regular_rep(complex_conj(a))) * change_inv_z;
      if (x.transpose() * t.b != t.b * y) return false;
    }
    w = Json{{"samples", samples}};
    return true;
  });
  detail::run_check(r, "degree_norm", [&](Json& w) {
    const int samples = 20;
    for (int s = 0; s < samples; ++s) {
      const CycElem a = random_nonzero_integral(p, rng);
      const Rational nm = norm_to_Q(a);
      if (Rational(endo_degree(to_integer(regular_rep(a)))) != nm * nm) return false;
    }
    w = Json{{"samples", samples}};
    return true;
  });
  TorsionModule tm{p, 0, FpMatrix(0, 0, p)};
  detail::run_check(r, "ptorsion_nilpotent", [&](Json& w) {
    tm = build_ptorsion(p);
    w = Json{{"dim", tm.dim}};
    return tm.dim == 2 * n;
  });
  detail::run_check(r, "filtration", [&](Json& w) {
    const auto dims = filtration_dims(tm);
    w = dims;
    if (dims.size() != static_cast<std::size_t>(p)) return false;
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (dims[i] != 2 * (n - i)) return false;
    return true;
  });
  detail::run_check(r, "composition_factors", [&](Json& w) {
    const auto f = composition_factors(tm);
    w = Json{{"count", f.size()}};
    for (const auto& l : f)
      if (l != ep_label(p)) return false;
    return f.size() == n;
  });
  detail::run_check(r, "socle_diagonal", [&](Json&) { return socle_is_diagonal(tm); });
  detail::run_check(r, "polarization_parity", [&](Json& w) {
    std::uniform_int_distribution<long> d(1, 1000);
    const int samples = 10;
    for (int s = 0; s < samples; ++s) {
      const Integer m = d(rng);
      const ParityResult pr = polarization_parity(p, m);
      if (pr.rank.value != 1 + 2 * valuation(m, Integer(p)) || !pr.rank.odd()) return false;
    }
    w = Json{{"samples", samples}};
    return true;
  });
  detail::run_check(r, "no_principal_polarization", [&](Json& w) {
    const ModelDescriptor m = theorem_model(p);
    const BGroups g = compute_b_groups(m);
    const int parity = parity_hom(m.s_c.front(), m.labels, p);
    const bool principal = attainable(KerClass::zero(1), m).attainable;
    const bool seeded = attainable(m.s_c.front(), m).attainable;
    w = Json{{"b1", g.b1.to_string()}, {"i_c_parity", parity}, {"r1_samples", g.r1_samples}};
    return g.b1.nontrivial_factors() == std::vector<Integer>{2} && parity == 1 && !principal && seeded;
  });
  return r;
}

struct SweepRow {
  long p = 0;
  Integer det_b;
  Integer pol_degree;
  std::size_t centralizer_rank = 0;
  std::size_t filtration_length = 0;
  int i_c_parity = 0;
};

inline SweepRow sweep_row(long p) {
  const TwistData t = TwistData::build(p);
  SweepRow row;
  row.p = p;
  row.det_b = det(t.b);
  row.pol_degree = endo_degree(t.b);
  row.centralizer_rank = centralizer_lattice(p).cols();
  row.filtration_length = composition_factors(build_ptorsion(p)).size();
  const ModelDescriptor m = theorem_model(p);
  row.i_c_parity = parity_hom(m.s_c.front(), m.labels, p);
  return row;
}

/// One row per odd prime p <= p_max, in increasing order of p, computed on
/// up to `jobs` threads.
inline std::vector<SweepRow> sweep(long p_max, unsigned jobs = 1) {
  if (p_max < 3) throw std::invalid_argument("sweep: p_max must be at least 3");
  std::vector<long> primes;
  for (long p = 3; p <= p_max; p += 2)
    if (is_odd_prime(p)) primes.push_back(p);
  std::vector<SweepRow> rows(primes.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(primes.size());
  auto worker = [&] {
    for (std::size_t i; (i = next++) < primes.size();) {
      try {
        rows[i] = sweep_row(primes[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (!errors[i].empty()) throw std::runtime_error("sweep at p = " + std::to_string(primes[i]) + ": " + errors[i]);
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "p,det_b,pol_degree,centralizer_rank,filtration_length,i_c_parity\n";
  for (const auto& r : rows)
    os << r.p << ',' << r.det_b << ',' << r.pol_degree << ',' << r.centralizer_rank << ',' << r.filtration_length << ','
       << r.i_c_parity << '\n';
  return os.str();
}

}  // namespace polobstruct
