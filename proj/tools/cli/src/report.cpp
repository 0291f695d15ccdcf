#include "pcurv_cli/report.hpp"

#include "pcurv_cli/spec.hpp"

namespace pcurv::cli {

json Report::to_json() const {
  return json{{"schema_version", schema_version}, {"tool", tool},       {"tool_version", tool_version},
              {"command", command},               {"results", results}, {"summary", summary},
              {"timing", timing}};
}

Report Report::from_json(const json& j) {
  Report r;
  const auto& v = require(j, "schema_version", "");
  if (!v.is_number_integer()) throw SpecError("/schema_version", "expected an integer");
  r.schema_version = v.get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw SpecError("/schema_version", "unsupported schema version " + std::to_string(r.schema_version));
  }
  auto text = [&](const char* key) {
    const auto& s = require(j, key, "");
    if (!s.is_string()) throw SpecError(child("", key), "expected a string");
    return s.get<std::string>();
  };
  r.tool = text("tool");
  r.tool_version = text("tool_version");
  r.command = require(j, "command", "");
  r.results = require(j, "results", "");
  r.summary = require(j, "summary", "");
  r.timing = require(j, "timing", "");
  if (!r.results.is_array()) throw SpecError("/results", "expected an array");
  return r;
}

std::string render(const Report& r) { return r.to_json().dump(2) + "\n"; }

std::string rational_json(const BigRational& q) { return q.to_string(); }

json coordinates_json(const NumberFieldElement& e) {
  json out = json::array();
  for (const auto& c : e.coordinates()) out.push_back(rational_json(c));
  return out;
}

json nf_matrix_json(const Matrix<NumberFieldElement>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(coordinates_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rational_matrix_json(const Matrix<BigRational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pcurv::cli
