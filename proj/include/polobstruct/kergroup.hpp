#pragma once

// Classes of polarization kernels in the Grothendieck group G(Ker_C).
//
// G(Ker_C) is free on the simple kernel objects, so a class is an integer
// vector over a declared label set. Group schemes are never modelled:
// ranks, Cartier duals and the existence of alternating pairings are
// declared per label.

#include "polobstruct/cyclotomic.hpp"
#include "polobstruct/galmod.hpp"
#include "polobstruct/intlinalg.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polobstruct {

/// Inconsistent or malformed model data.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimpleLabel {
  std::string name;
  Integer rank;
  std::string dual;
  bool alt_pairing = false;
  // The rank-2 local-local group scheme in characteristic 2 carries a
  // non-degenerate alternating pairing without having square rank.
  bool char2_exception = false;
};

class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<SimpleLabel> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].rank < 2) throw ModelError("label '" + labels_[i].name + "' has rank < 2");
      if (!index_.emplace(labels_[i].name, i).second)
        throw ModelError("duplicate label '" + labels_[i].name + "'");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const auto it = index_.find(labels_[i].dual);
      if (it == index_.end())
        throw ModelError("label '" + labels_[i].name + "' has unknown dual '" + labels_[i].dual + "'");
      const SimpleLabel& d = labels_[it->second];
      if (d.dual != labels_[i].name) throw ModelError("duality is not an involution at '" + labels_[i].name + "'");
      if (d.rank != labels_[i].rank) throw ModelError("label '" + labels_[i].name + "' and its dual differ in rank");
      dual_.push_back(it->second);
    }
  }

  std::size_t size() const { return labels_.size(); }
  const SimpleLabel& operator[](std::size_t i) const { return labels_.at(i); }
  std::size_t dual_index(std::size_t i) const { return dual_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw ModelError("unknown label '" + name + "'");
  }

 private:
  std::vector<SimpleLabel> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> dual_;
};

struct KerClass {
  std::vector<Integer> coeffs;

  static KerClass zero(std::size_t n) { return {std::vector<Integer>(n, Integer(0))}; }
  static KerClass unit(std::size_t n, std::size_t i) {
    KerClass c = zero(n);
    c.coeffs.at(i) = 1;
    return c;
  }

  std::size_t size() const { return coeffs.size(); }

  bool is_effective() const {
    for (const auto& c : coeffs)
      if (c < 0) return false;
    return true;
  }

  friend bool operator==(const KerClass& a, const KerClass& b) { return a.coeffs == b.coeffs; }
  friend KerClass operator+(const KerClass& a, const KerClass& b) {
    if (a.size() != b.size()) throw std::invalid_argument("KerClass: label sets differ");
    KerClass c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.coeffs[i] += b.coeffs[i];
    return c;
  }
  friend KerClass operator-(const KerClass& a) {
    KerClass c = a;
    for (auto& x : c.coeffs) x = -x;
    return c;
  }
  friend KerClass operator-(const KerClass& a, const KerClass& b) { return a + (-b); }
  friend KerClass operator*(const Integer& s, const KerClass& a) {
    KerClass c = a;
    for (auto& x : c.coeffs) x *= s;
    return c;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
    return os.str();
  }
};

inline void require_labels(const KerClass& c, const LabelSet& labels) {
  if (c.size() != labels.size())
    throw std::invalid_argument("class has " + std::to_string(c.size()) + " coefficients, label set has " +
                                std::to_string(labels.size()));
}

/// P -> P-bar: coefficients permuted by the label duality.
inline KerClass cartier_dual(const KerClass& c, const LabelSet& labels) {
  require_labels(c, labels);
  KerClass d = KerClass::zero(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) d.coeffs[labels.dual_index(i)] += c.coeffs[i];
  return d;
}

/// Generators e_i + dual(e_i) of B(C) = {P + P-bar}, one per label.
inline std::vector<KerClass> b_subgroup_gens(const LabelSet& labels) {
  std::vector<KerClass> gens;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    KerClass g = KerClass::unit(labels.size(), i);
    g.coeffs[labels.dual_index(i)] += 1;
    gens.push_back(std::move(g));
  }
  return gens;
}

/// Rank (order) of an effective class: the product of label ranks.
inline Integer class_rank(const KerClass& c, const LabelSet& labels) {
  require_labels(c, labels);
  if (!c.is_effective()) throw std::domain_error("class_rank: class is not effective");
  Integer r = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), labels[i].rank.get_mpz_t(), c.coeffs[i].get_ui());
    r *= f;
  }
  return r;
}

/// Whether c may be declared as a generator of Z(C): square rank (or only
/// characteristic-2 exceptional labels at odd multiplicity) and a
/// non-degenerate alternating pairing, which is declared per label and
/// automatic for classes of the form P + P-bar.
inline bool admissible_z_generator(const KerClass& c, const LabelSet& labels) {
  require_labels(c, labels);
  if (!c.is_effective()) return false;
  bool square = is_perfect_square(class_rank(c, labels));
  if (!square) {
    square = true;
    Integer rest = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c.coeffs[i] == 0) continue;
      if (labels[i].char2_exception) continue;
      Integer f;
      mpz_pow_ui(f.get_mpz_t(), labels[i].rank.get_mpz_t(), c.coeffs[i].get_ui());
      rest *= f;
    }
    square = is_perfect_square(rest);
  }
  if (!square) return false;
  bool declared = true;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.coeffs[i] != 0 && !labels[i].alt_pairing) declared = false;
  if (declared) return true;
  // Hyperbolic: c = P + P-bar for an integral P.
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t j = labels.dual_index(i);
    if (c.coeffs[i] != c.coeffs[j]) return false;
    if (i == j && !mpz_even_p(c.coeffs[i].get_mpz_t())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Local squares

/// Whether q is a square in Q_p: even valuation, and a unit part that is a
/// square mod p (odd p) or congruent to 1 mod 8 (p = 2).
inline bool is_square_in_Qp(const Rational& q, long p) {
  if (q == 0) throw std::domain_error("is_square_in_Qp: q = 0");
  if (p < 2 || (p != 2 && !is_odd_prime(p))) throw std::invalid_argument("is_square_in_Qp: p is not prime");
  const Integer pz = p;
  if (valuation(q, pz) % 2 != 0) return false;
  // u = num/den with p stripped; u is a square iff num*den is.
  const Integer u = strip_prime(Integer(q.get_num()), pz) * strip_prime(Integer(q.get_den()), pz);
  if (p == 2) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
    return r == 1;
  }
  return mpz_legendre(u.get_mpz_t(), pz.get_mpz_t()) == 1;
}

// ---------------------------------------------------------------------------
// Endomorphism algebras and the groups R_0, R_1, R_2

enum class AlgebraType { I, II, III, IV };

enum class CenterKind { Rationals, Cyclotomic, RealCyclotomic };

struct Center {
  CenterKind kind = CenterKind::Rationals;
  long p = 0;

  bool totally_real() const { return kind != CenterKind::Cyclotomic; }
  std::string to_string() const {
    switch (kind) {
      case CenterKind::Rationals: return "Q";
      case CenterKind::Cyclotomic: return "Q(zeta_" + std::to_string(p) + ")";
      case CenterKind::RealCyclotomic: return "Q(zeta_" + std::to_string(p) + ")+";
    }
    return "?";
  }
};

inline std::string to_string(AlgebraType t) {
  switch (t) {
    case AlgebraType::I: return "I";
    case AlgebraType::II: return "II";
    case AlgebraType::III: return "III";
    case AlgebraType::IV: return "IV";
  }
  return "?";
}

struct AlgebraFactor {
  AlgebraType type = AlgebraType::I;
  Center center;
  long n = 1;
  std::vector<long> ramified;  // finite ramified primes, quaternion types over Q
};

/// Checks the type/center conditions that are decidable here.
inline void validate(const AlgebraFactor& f) {
  if (f.n < 1) throw ModelError("matrix size must be positive");
  if (f.center.kind != CenterKind::Rationals && !is_odd_prime(f.center.p))
    throw ModelError("cyclotomic center needs an odd prime conductor");
  const bool quaternion = f.type == AlgebraType::II || f.type == AlgebraType::III;
  if (f.type == AlgebraType::IV) {
    if (f.center.kind != CenterKind::Cyclotomic) throw ModelError("type IV needs a CM center Q(zeta_p)");
  } else if (!f.center.totally_real()) {
    throw ModelError("type " + to_string(f.type) + " needs a totally real center");
  }
  if (!quaternion && !f.ramified.empty()) throw ModelError("ramified places only apply to types II and III");
  if (quaternion && f.center.kind == CenterKind::Rationals) {
    for (long q : f.ramified)
      if (q != 2 && !is_odd_prime(q)) throw ModelError("ramified place " + std::to_string(q) + " is not prime");
    for (std::size_t i = 0; i < f.ramified.size(); ++i)
      for (std::size_t j = i + 1; j < f.ramified.size(); ++j)
        if (f.ramified[i] == f.ramified[j]) throw ModelError("repeated ramified place");
    // A quaternion algebra over Q ramifies at an even number of places;
    // type II is split at infinity, type III ramified there.
    const bool even = f.ramified.size() % 2 == 0;
    if (f.type == AlgebraType::II && !even) throw ModelError("type II over Q needs an even number of ramified primes");
    if (f.type == AlgebraType::III && even) throw ModelError("type III over Q needs an odd number of ramified primes");
  }
}

struct AlgebraDescriptor {
  std::vector<AlgebraFactor> factors;

  void validate() const {
    if (factors.empty()) throw ModelError("algebra has no factors");
    for (const auto& f : factors) polobstruct::validate(f);
  }
};

using FieldElem = std::variant<Rational, CycElem, RealElem>;

namespace detail {

inline void check_kind(const FieldElem& x, const Center& c) {
  const bool ok = (c.kind == CenterKind::Rationals && std::holds_alternative<Rational>(x)) ||
                  (c.kind == CenterKind::Cyclotomic && std::holds_alternative<CycElem>(x) &&
                   std::get<CycElem>(x).prime() == c.p) ||
                  (c.kind == CenterKind::RealCyclotomic && std::holds_alternative<RealElem>(x) &&
                   std::get<RealElem>(x).prime() == c.p);
  if (!ok) throw std::invalid_argument("element does not lie in the center " + c.to_string());
}

inline bool is_zero(const FieldElem& x) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>)
          return v == 0;
        else
          return v.is_zero();
      },
      x);
}

/// Totally positive element of the totally real center.
inline bool totally_positive(const FieldElem& x) {
  if (const auto* q = std::get_if<Rational>(&x)) return *q > 0;
  return is_totally_positive(std::get<RealElem>(x));
}

/// Square of a totally positive element of the center.
inline bool square_of_totally_positive(const FieldElem& x) {
  if (const auto* q = std::get_if<Rational>(&x))
    return *q > 0 && is_perfect_square(Integer(q->get_num())) && is_perfect_square(Integer(q->get_den()));
  return totally_positive_sqrt(std::get<RealElem>(x)).has_value();
}

}  // namespace detail

/// Membership of x in R_level(D) for one simple factor.
inline bool r_membership(const FieldElem& x, int level, const AlgebraFactor& f) {
  if (level < 0 || level > 2) throw std::invalid_argument("r_membership: level must be 0, 1 or 2");
  validate(f);
  detail::check_kind(x, f.center);
  if (detail::is_zero(x)) throw std::invalid_argument("r_membership: zero element");
  switch (f.type) {
    case AlgebraType::I:
      return level == 0 || detail::totally_positive(x);
    case AlgebraType::II: {
      if (level == 0) return true;
      if (!detail::totally_positive(x)) return false;
      if (level == 1) return true;
      if (f.center.kind != CenterKind::Rationals)
        throw std::invalid_argument("r_membership: type II local tests need a rational center");
      const Rational& q = std::get<Rational>(x);
      for (long place : f.ramified)
        if (!is_square_in_Qp(q, place)) return false;
      return true;
    }
    case AlgebraType::III:
      if (level == 0) return detail::totally_positive(x);
      return detail::square_of_totally_positive(x);
    case AlgebraType::IV: {
      if (level == 0) return true;
      const CycElem& a = std::get<CycElem>(x);
      if (complex_conj(a) != a) return false;
      return is_totally_positive(restrict_to_real(a));
    }
  }
  return false;
}

/// Membership in R_level(A) = product over the simple factors.
inline bool r_membership(const std::vector<FieldElem>& x, int level, const AlgebraDescriptor& alg) {
  if (x.size() != alg.factors.size()) throw std::invalid_argument("r_membership: one element per factor expected");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!r_membership(x[i], level, alg.factors[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Prin and Phi, p-primary part in the cyclotomic model

/// p-part of Prin(alpha) for alpha in Q(zeta_p) acting on X: the E[p]
/// coefficient is v_p(N(alpha)), since deg(beta) = N(beta)^2 and E[p] has
/// rank p^2.
inline KerClass prin_p_part(const CycElem& alpha, const LabelSet& labels) {
  if (alpha.is_zero()) throw std::invalid_argument("prin_p_part: alpha = 0");
  const long p = alpha.prime();
  const std::size_t at = labels.index(ep_label(p));
  KerClass c = KerClass::zero(labels.size());
  c.coeffs[at] = valuation(norm_to_Q(alpha), Integer(p));
  return c;
}

/// Phi(a) = Prin(alpha) for a certificate alpha of norm a.
inline KerClass phi_p_part(const Rational& a, const std::optional<CycElem>& certificate, const LabelSet& labels) {
  if (!certificate) throw std::invalid_argument("phi_p_part: no preimage certificate supplied");
  if (norm_to_Q(*certificate) != a)
    throw std::invalid_argument("phi_p_part: certificate has norm " + norm_to_Q(*certificate).get_str() + ", not " +
                                a.get_str());
  return prin_p_part(*certificate, labels);
}

/// Coefficient of [E[p]] mod 2.
inline int parity_hom(const KerClass& c, const LabelSet& labels, long p) {
  require_labels(c, labels);
  const Integer& v = c.coeffs[labels.index(ep_label(p))];
  return mpz_odd_p(v.get_mpz_t()) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Quotients

struct AbGroupPresentation {
  std::size_t generator_count = 0;
  IntMatrix relations;  // generator_count x (number of relations), columns are relations

  /// d_1 | d_2 | ... for each generator; 0 marks a free factor.
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> d(generator_count, Integer(0));
    if (relations.cols() > 0) {
      const auto diag = snf(relations).diagonal();
      for (std::size_t i = 0; i < diag.size(); ++i) d[i] = diag[i];
    }
    // snf leaves zeros after the nonzero block; order nontrivial first.
    std::stable_partition(d.begin(), d.end(), [](const Integer& x) { return x != 0; });
    return d;
  }

  /// Invariant factors other than 1.
  std::vector<Integer> nontrivial_factors() const {
    std::vector<Integer> out;
    for (auto& d : invariant_factors())
      if (d != 1) out.push_back(d);
    return out;
  }

  bool is_two_torsion() const {
    for (const auto& d : invariant_factors())
      if (d != 1 && d != 2) return false;
    return true;
  }

  std::string to_string() const {
    const auto f = nontrivial_factors();
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) s += " x ";
      s += f[i] == 0 ? "Z" : "Z/" + f[i].get_str();
    }
    return s;
  }
};

/// span(z_gens) / span(rel_gens). Throws ModelError if a relation does not
/// lie in span(z_gens).
inline AbGroupPresentation quotient_group(const std::vector<KerClass>& z_gens, const std::vector<KerClass>& rel_gens) {
  if (z_gens.empty()) return {};
  const std::size_t n = z_gens.front().size();
  std::vector<std::vector<Integer>> cols;
  for (const auto& g : z_gens) {
    if (g.size() != n) throw std::invalid_argument("quotient_group: inconsistent class sizes");
    cols.push_back(g.coeffs);
  }
  const IntMatrix basis = hnf_cols(from_columns(cols, n));
  AbGroupPresentation out{basis.cols(), IntMatrix(basis.cols(), rel_gens.size())};
  for (std::size_t j = 0; j < rel_gens.size(); ++j) {
    if (rel_gens[j].size() != n) throw std::invalid_argument("quotient_group: inconsistent class sizes");
    auto coords = lattice_coordinates(basis, rel_gens[j].coeffs);
    if (!coords) throw ModelError("relation (" + rel_gens[j].to_string() + ") lies outside the subgroup");
    for (std::size_t i = 0; i < coords->size(); ++i) out.relations(i, j) = (*coords)[i];
  }
  return out;
}

/// Whether v lies in the lattice spanned by gens.
inline bool in_span(const KerClass& v, const std::vector<KerClass>& gens) {
  if (gens.empty()) return std::all_of(v.coeffs.begin(), v.coeffs.end(), [](const Integer& x) { return x == 0; });
  std::vector<std::vector<Integer>> cols;
  for (const auto& g : gens) cols.push_back(g.coeffs);
  const IntMatrix basis = hnf_cols(from_columns(cols, v.size()));
  if (basis.cols() == 0) return std::all_of(v.coeffs.begin(), v.coeffs.end(), [](const Integer& x) { return x == 0; });
  return lattice_coordinates(basis, v.coeffs).has_value();
}

// ---------------------------------------------------------------------------
// Model descriptors and attainability

struct PhiSample {
  Rational norm;
  std::optional<CycElem> alpha;       // certificate in the cyclotomic model
  std::optional<KerClass> declared;   // user-declared Phi value
  std::optional<int> declared_level;  // highest i with the sample in R_i
};

struct ModelDescriptor {
  LabelSet labels;
  std::vector<KerClass> z_gens;
  AlgebraDescriptor algebra;
  std::vector<PhiSample> phi_samples;
  std::vector<KerClass> s_c;

  /// The prime p when the model is the single-factor type IV model over
  /// Q(zeta_p) carrying an E[p] label.
  std::optional<long> cyclotomic_prime() const {
    if (algebra.factors.size() != 1) return std::nullopt;
    const auto& f = algebra.factors.front();
    if (f.type != AlgebraType::IV || f.center.kind != CenterKind::Cyclotomic) return std::nullopt;
    if (!labels.find(ep_label(f.center.p))) return std::nullopt;
    return f.center.p;
  }

  void validate() const {
    algebra.validate();
    if (z_gens.empty()) throw ModelError("model declares no Z(C) generators");
    for (const auto& g : z_gens) {
      require_labels(g, labels);
      if (!admissible_z_generator(g, labels))
        throw ModelError("Z(C) generator (" + g.to_string() + ") lacks square rank or an alternating pairing");
    }
    if (s_c.empty()) throw ModelError("model declares an empty S_C");
    for (const auto& s : s_c) require_labels(s, labels);
    for (const auto& smp : phi_samples) {
      if (smp.declared) {
        require_labels(*smp.declared, labels);
        if (!smp.declared_level) throw ModelError("declared Phi sample needs a level");
      } else if (smp.alpha) {
        if (!cyclotomic_prime() || smp.alpha->prime() != *cyclotomic_prime())
          throw ModelError("Phi certificates are only computed in the type IV model over Q(zeta_p)");
      } else {
        throw ModelError("Phi sample has neither a certificate nor a declared class");
      }
    }
  }
};

/// Whether a sample's R-element lies in R_level.
inline bool sample_in_r(const PhiSample& s, int level, const ModelDescriptor& m) {
  if (s.declared) return *s.declared_level >= level;
  return r_membership(FieldElem{*s.alpha}, level, m.algebra.factors.front());
}

inline KerClass sample_phi(const PhiSample& s, const ModelDescriptor& m) {
  if (s.declared) return *s.declared;
  return phi_p_part(s.norm, s.alpha, m.labels);
}

/// Relations generating B(C) + Phi(R_level) from the sampled elements.
inline std::vector<KerClass> b_relations(const ModelDescriptor& m, int level) {
  std::vector<KerClass> rels = b_subgroup_gens(m.labels);
  for (const auto& s : m.phi_samples)
    if (sample_in_r(s, level, m)) rels.push_back(sample_phi(s, m));
  return rels;
}

struct BGroups {
  AbGroupPresentation b1;
  AbGroupPresentation b2;
  std::size_t r1_samples = 0;
  std::size_t r2_samples = 0;
};

inline BGroups compute_b_groups(const ModelDescriptor& m) {
  m.validate();
  BGroups g;
  const auto rel1 = b_relations(m, 1);
  const auto rel2 = b_relations(m, 2);
  g.b1 = quotient_group(m.z_gens, rel1);
  g.b2 = quotient_group(m.z_gens, rel2);
  g.r1_samples = rel1.size() - m.labels.size();
  g.r2_samples = rel2.size() - m.labels.size();
  return g;
}

struct Attainability {
  bool attainable;
  std::string reason;  // "attainable", "not_effective", "not_in_Z", "not_in_S_C"
};

/// Attainable iff effective, in Z(C), and congruent modulo
/// B(C) + Phi(R_2) to a declared element of S_C.
inline Attainability attainable(const KerClass& c, const ModelDescriptor& m) {
  m.validate();
  require_labels(c, m.labels);
  if (!c.is_effective()) return {false, "not_effective"};
  if (!in_span(c, m.z_gens)) return {false, "not_in_Z"};
  const auto rels = b_relations(m, 2);
  for (const auto& s : m.s_c)
    if (in_span(c - s, rels)) return {true, "attainable"};
  return {false, "not_in_S_C"};
}

/// The model for the reduced restriction of scalars of a p-isolated curve
/// along a degree-p extension: one simple p-kernel E[p], End^0 = Q(zeta_p)
/// of type IV, and S_C seeded by the degree-p^2 polarization.
inline ModelDescriptor theorem_model(long p) {
  require_odd_prime(p, "theorem_model");
  ModelDescriptor m;
  const Integer rank = Integer(p) * p;
  m.labels = LabelSet({SimpleLabel{ep_label(p), rank, ep_label(p), true, false}});
  m.z_gens = {KerClass::unit(1, 0)};
  m.algebra.factors = {AlgebraFactor{AlgebraType::IV, Center{CenterKind::Cyclotomic, p}, 1, {}}};
  m.s_c = {KerClass::unit(1, 0)};

  const CycElem one = CycElem::scalar(p, Rational(1));
  const CycElem z = CycElem::zeta_power(p, 1);
  const CycElem h = eta(p);
  std::vector<CycElem> alphas = {
      one,
      CycElem::scalar(p, Rational(2)),
      CycElem::scalar(p, Rational(p)),
      z,
      one - z,
      CycElem::scalar(p, Rational(2)) + h,
      CycElem::scalar(p, Rational(3)) + h,
      CycElem::scalar(p, Rational(2)) - h,  // (1 - zeta)(1 - zeta^-1)
      h * h,
      CycElem::scalar(p, Rational(-1)),
  };
  for (auto& a : alphas) m.phi_samples.push_back(PhiSample{norm_to_Q(a), a, std::nullopt, std::nullopt});
  return m;
}

// ---------------------------------------------------------------------------
// Quaternion algebras over Q

/// (a, b)_Q with i^2 = a, j^2 = b, ij = -ji = k.
struct QuaternionAlgebra {
  Rational a;
  Rational b;
};

struct Quaternion {
  Rational x0, x1, x2, x3;

  friend bool operator==(const Quaternion& u, const Quaternion& v) {
    return u.x0 == v.x0 && u.x1 == v.x1 && u.x2 == v.x2 && u.x3 == v.x3;
  }
  friend Quaternion operator+(const Quaternion& u, const Quaternion& v) {
    return {u.x0 + v.x0, u.x1 + v.x1, u.x2 + v.x2, u.x3 + v.x3};
  }
  friend Quaternion operator*(const Rational& s, const Quaternion& u) {
    return {s * u.x0, s * u.x1, s * u.x2, s * u.x3};
  }
};

inline Quaternion multiply(const QuaternionAlgebra& h, const Quaternion& x, const Quaternion& y) {
  const Rational& a = h.a;
  const Rational& b = h.b;
  return {x.x0 * y.x0 + a * x.x1 * y.x1 + b * x.x2 * y.x2 - a * b * x.x3 * y.x3,
          x.x0 * y.x1 + x.x1 * y.x0 - b * x.x2 * y.x3 + b * x.x3 * y.x2,
          x.x0 * y.x2 + x.x2 * y.x0 + a * x.x1 * y.x3 - a * x.x3 * y.x1,
          x.x0 * y.x3 + x.x3 * y.x0 + x.x1 * y.x2 - x.x2 * y.x1};
}

/// Standard involution x -> Trd(x) - x.
inline Quaternion conjugate(const Quaternion& x) { return {x.x0, -x.x1, -x.x2, -x.x3}; }

inline Rational reduced_trace(const Quaternion& x) { return 2 * x.x0; }

inline Rational reduced_norm(const QuaternionAlgebra& h, const Quaternion& x) {
  return x.x0 * x.x0 - h.a * x.x1 * x.x1 - h.b * x.x2 * x.x2 + h.a * h.b * x.x3 * x.x3;
}

inline Quaternion inverse(const QuaternionAlgebra& h, const Quaternion& x) {
  const Rational n = reduced_norm(h, x);
  if (n == 0) throw std::domain_error("quaternion is not invertible");
  return Rational(1 / n) * conjugate(x);
}

/// Coordinates of a 2x2 rational matrix in the split algebra (1, 1)_Q,
/// with i = diag(1, -1), j = [[0, 1], [1, 0]], k = ij.
inline Quaternion from_split_matrix(const RatMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("from_split_matrix: need a 2x2 matrix");
  const Rational half(1, 2);
  return {half * (m(0, 0) + m(1, 1)), half * (m(0, 0) - m(1, 1)), half * (m(0, 1) + m(1, 0)),
          half * (m(0, 1) - m(1, 0))};
}

struct WitnessCheck {
  bool antisymmetric;     // beta + beta* = 0
  bool norm_matches;      // beta beta* = -b c1
  bool totally_positive;  // beta alpha1^-1 totally positive
  bool ok() const { return antisymmetric && norm_matches && totally_positive; }
};

/// The three witness conditions for a type II reduced-norm preimage, over
/// a quaternion algebra with rational center (one real place).
inline WitnessCheck quaternion_witness_details(const QuaternionAlgebra& h, const Quaternion& beta,
                                               const Quaternion& alpha1, const Rational& b, const Rational& c1) {
  WitnessCheck w{};
  w.antisymmetric = beta + conjugate(beta) == Quaternion{0, 0, 0, 0};
  const Quaternion bb = multiply(h, beta, conjugate(beta));
  w.norm_matches = bb == Quaternion{-b * c1, 0, 0, 0};
  const Quaternion y = multiply(h, beta, inverse(h, alpha1));
  // Both roots of t^2 - Trd(y) t + Nrd(y) must be real and positive.
  const Rational tr = reduced_trace(y);
  const Rational nr = reduced_norm(h, y);
  w.totally_positive = tr > 0 && nr > 0 && tr * tr - 4 * nr >= 0;
  return w;
}

inline bool quaternion_witness_check(const QuaternionAlgebra& h, const Quaternion& beta, const Quaternion& alpha1,
                                     const Rational& b, const Rational& c1) {
  return quaternion_witness_details(h, beta, alpha1, b, c1).ok();
}

}  // namespace polobstruct
