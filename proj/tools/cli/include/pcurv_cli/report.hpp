#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pcurv/arith/matrix.hpp"
#include "pcurv/arith/number_field.hpp"
#include "pcurv/arith/rational_function.hpp"

namespace pcurv::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  int schema_version = kSchemaVersion;
  std::string tool;
  std::string tool_version = kToolVersion;
  /// Subcommand name, spec path and effective options.
  json command = json::object();
  json results = json::array();
  json summary = json::object();
  /// Wall-clock fields; the only nondeterministic part of a report.
  json timing = json::object();

  json to_json() const;
  /// Throws SpecError on missing or mistyped fields.
  static Report from_json(const json& j);
  bool operator==(const Report&) const = default;
};

/// Two-space indented JSON plus a trailing newline.
std::string render(const Report& r);

std::string rational_json(const BigRational& q);
json coordinates_json(const NumberFieldElement& e);
json nf_matrix_json(const Matrix<NumberFieldElement>& m);
json rational_matrix_json(const Matrix<BigRational>& m);

template <class K>
json rf_matrix_json(const Matrix<RationalFunction<K>>& m, const std::string& variable) {
  json rows = json::array();
  const std::span<const std::string> vars(&variable, 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string(vars));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pcurv::cli
