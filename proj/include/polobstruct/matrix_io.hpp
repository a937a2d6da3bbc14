#pragma once

// Matrix files: {"rows": R, "cols": C, "entries": [[...], ...]}. Entries
// that do not fit in 64 bits are written as decimal strings; either form
// is accepted on input.

#include "polobstruct/matrix.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace polobstruct {

using Json = nlohmann::ordered_json;

inline Json integer_to_json(const Integer& x) {
  if (fits_int64(x)) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

/// Integers, decimal strings, or "a/b" strings.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return Rational(integer_from_json(j));
}

inline Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return Json(q.get_str());
}

inline Json to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = std::move(entries);
  return out;
}

inline IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::invalid_argument("matrix JSON needs rows, cols and entries");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const Json& e = j.at("entries");
  if (!e.is_array() || e.size() != rows) throw std::invalid_argument("matrix JSON: wrong number of rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(e[i][k]);
  }
  return m;
}

inline void write_matrix(const std::string& path, const IntMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(m).dump() << '\n';
}

inline IntMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return matrix_from_json(Json::parse(in));
}

}  // namespace polobstruct
