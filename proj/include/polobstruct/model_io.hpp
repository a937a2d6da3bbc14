#pragma once

// JSON form of a ModelDescriptor:
//
// {"labels": [{"name", "rank", "dual", "alt_pairing", "char2_exception"?}],
//  "z_gens": [[...]],
//  "algebra": {"factors": [{"type", "center", "n", "ramified": [...]}]},
//  "phi_samples": [{"norm": "...", "alpha_coords": [...]}
//                  | {"class": [...], "level": 0|1|2}],
//  "s_c": [[...]]}
//
// Centers are written "Q", "Q(zeta_p)" or "Q(zeta_p)+". Integer and
// rational fields accept JSON numbers or decimal strings.

#include "polobstruct/kergroup.hpp"
#include "polobstruct/matrix_io.hpp"

#include <fstream>
#include <regex>
#include <string>
#include <vector>

namespace polobstruct {

inline AlgebraType algebra_type_from_string(const std::string& s) {
  if (s == "I") return AlgebraType::I;
  if (s == "II") return AlgebraType::II;
  if (s == "III") return AlgebraType::III;
  if (s == "IV") return AlgebraType::IV;
  throw ModelError("unknown algebra type '" + s + "'");
}

inline Center center_from_string(const std::string& s) {
  if (s == "Q") return {CenterKind::Rationals, 0};
  static const std::regex cyc(R"(Q\(zeta_(\d+)\)(\+?))");
  std::smatch m;
  if (!std::regex_match(s, m, cyc)) throw ModelError("unknown center '" + s + "'");
  const long p = std::stol(m[1].str());
  if (!is_odd_prime(p)) throw ModelError("center conductor " + m[1].str() + " is not an odd prime");
  return {m[2].length() ? CenterKind::RealCyclotomic : CenterKind::Cyclotomic, p};
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ModelError(where + ": missing '" + key + "'");
  return j.at(key);
}

inline KerClass class_from_json(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw ModelError(where + ": class must be an array");
  KerClass c;
  for (const auto& x : j) c.coeffs.push_back(integer_from_json(x));
  if (c.size() != n)
    throw ModelError(where + ": class has " + std::to_string(c.size()) + " coefficients, expected " + std::to_string(n));
  return c;
}

inline Json class_to_json(const KerClass& c) {
  Json a = Json::array();
  for (const auto& x : c.coeffs) a.push_back(integer_to_json(x));
  return a;
}

}  // namespace detail

inline ModelDescriptor model_from_json(const Json& j) {
  try {
    ModelDescriptor m;
    std::vector<SimpleLabel> labels;
    for (const auto& l : detail::field(j, "labels", "model")) {
      SimpleLabel s;
      s.name = detail::field(l, "name", "label").get<std::string>();
      s.rank = integer_from_json(detail::field(l, "rank", "label " + s.name));
      s.dual = detail::field(l, "dual", "label " + s.name).get<std::string>();
      s.alt_pairing = detail::field(l, "alt_pairing", "label " + s.name).get<bool>();
      s.char2_exception = l.value("char2_exception", false);
      labels.push_back(std::move(s));
    }
    m.labels = LabelSet(std::move(labels));
    const std::size_t n = m.labels.size();

    for (const auto& g : detail::field(j, "z_gens", "model")) m.z_gens.push_back(detail::class_from_json(g, n, "z_gens"));
    for (const auto& s : detail::field(j, "s_c", "model")) m.s_c.push_back(detail::class_from_json(s, n, "s_c"));

    for (const auto& f : detail::field(detail::field(j, "algebra", "model"), "factors", "algebra")) {
      AlgebraFactor a;
      a.type = algebra_type_from_string(detail::field(f, "type", "factor").get<std::string>());
      a.center = center_from_string(detail::field(f, "center", "factor").get<std::string>());
      a.n = f.value("n", 1L);
      if (f.contains("ramified"))
        for (const auto& q : f.at("ramified")) a.ramified.push_back(q.get<long>());
      m.algebra.factors.push_back(std::move(a));
    }

    if (j.contains("phi_samples")) {
      for (const auto& s : j.at("phi_samples")) {
        PhiSample smp;
        if (s.contains("class")) {
          smp.declared = detail::class_from_json(s.at("class"), n, "phi_samples");
          smp.declared_level = detail::field(s, "level", "phi_samples").get<int>();
          if (s.contains("norm")) smp.norm = rational_from_json(s.at("norm"));
        } else {
          const auto prime = m.cyclotomic_prime();
          if (!prime) throw ModelError("alpha_coords samples need a type IV model over Q(zeta_p) with an E[p] label");
          std::vector<Rational> c;
          for (const auto& x : detail::field(s, "alpha_coords", "phi_samples")) c.push_back(rational_from_json(x));
          if (c.size() > static_cast<std::size_t>(*prime - 1)) throw ModelError("phi_samples: too many alpha_coords");
          c.resize(static_cast<std::size_t>(*prime - 1), Rational(0));
          smp.alpha = CycElem(*prime, std::move(c));
          smp.norm = rational_from_json(detail::field(s, "norm", "phi_samples"));
          if (norm_to_Q(*smp.alpha) != smp.norm)
            throw ModelError("phi_samples: alpha has norm " + norm_to_Q(*smp.alpha).get_str() + ", declared " +
                             smp.norm.get_str());
        }
        m.phi_samples.push_back(std::move(smp));
      }
    }
    m.validate();
    return m;
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(e.what());
  }
}

inline Json to_json(const ModelDescriptor& m) {
  Json j;
  Json labels = Json::array();
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    const auto& l = m.labels[i];
    Json o;
    o["name"] = l.name;
    o["rank"] = integer_to_json(l.rank);
    o["dual"] = l.dual;
    o["alt_pairing"] = l.alt_pairing;
    if (l.char2_exception) o["char2_exception"] = true;
    labels.push_back(std::move(o));
  }
  j["labels"] = std::move(labels);
  j["z_gens"] = Json::array();
  for (const auto& g : m.z_gens) j["z_gens"].push_back(detail::class_to_json(g));
  Json factors = Json::array();
  for (const auto& f : m.algebra.factors) {
    Json o;
    o["type"] = to_string(f.type);
    o["center"] = f.center.to_string();
    o["n"] = f.n;
    o["ramified"] = f.ramified;
    factors.push_back(std::move(o));
  }
  j["algebra"]["factors"] = std::move(factors);
  j["phi_samples"] = Json::array();
  for (const auto& s : m.phi_samples) {
    Json o;
    if (s.declared) {
      o["class"] = detail::class_to_json(*s.declared);
      o["level"] = *s.declared_level;
    } else {
      o["norm"] = s.norm.get_str();
      Json c = Json::array();
      for (const auto& x : s.alpha->coords()) c.push_back(rational_to_json(x));
      o["alpha_coords"] = std::move(c);
    }
    j["phi_samples"].push_back(std::move(o));
  }
  j["s_c"] = Json::array();
  for (const auto& s : m.s_c) j["s_c"].push_back(detail::class_to_json(s));
  return j;
}

inline ModelDescriptor read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ModelError(path + ": " + e.what());
  }
  return model_from_json(j);
}

/// Class text "c0,c1,...".
inline KerClass parse_class(std::string_view text) {
  KerClass c;
  while (true) {
    const auto comma = text.find(',');
    c.coeffs.push_back(parse_integer(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return c;
}

}  // namespace polobstruct
