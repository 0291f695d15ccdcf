#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/expression.hpp"
#include "pcurv/arith/prime_field.hpp"
#include "pcurv/arith/rational.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/deformation.hpp"
#include "pcurv/surface/certify.hpp"

namespace pcurv::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitObstructed = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;

/// Malformed specification document; `where` is a JSON pointer.
class SpecError : public Error {
 public:
  SpecError(const std::string& where, const std::string& message)
      : Error((where.empty() ? std::string("/") : where) + ": " + message), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Bad command-line value.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Reads and parses a JSON file; syntax errors report line and column.
json load_spec(const std::string& path);
json parse_spec_text(std::string_view text);

struct PrimeRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 50;
};
/// "A..B" with 2 <= A <= B.
PrimeRange parse_prime_range(std::string_view text);
std::vector<std::uint64_t> primes_in(const PrimeRange& r);

std::string child(const std::string& where, std::string_view key);
std::string child(const std::string& where, std::size_t index);
const json& require(const json& obj, std::string_view key, const std::string& where);

/// Integer or "num/den" string.
BigRational parse_rational(const json& v, const std::string& where);
std::uint64_t parse_unsigned(const json& v, const std::string& where);

/// "Q" (default when absent), "GF(p)" or {"prime": p}. Empty means Q.
std::optional<std::uint64_t> parse_base_field(const json& spec, const std::string& where);

template <Field K>
ExpressionSymbols<RationalFunction<K>> rf_symbols(std::string variable, typename K::Context ctx) {
  using RF = RationalFunction<K>;
  return {[ctx](const BigInt& n) { return RF::from_integer(ctx, n); },
          [ctx, variable](std::string_view name) -> std::optional<RF> {
            if (name == variable) return RF::variable(ctx);
            return std::nullopt;
          }};
}

/// Runs an expression parser, rewrapping grammar errors with the JSON location.
template <class T>
T parse_entry(const json& v, const ExpressionSymbols<T>& symbols, const std::string& where) {
  std::string text;
  if (v.is_number_integer()) {
    text = v.dump();
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    throw SpecError(where, "expected an expression string or integer");
  }
  try {
    return parse_expression(text, symbols);
  } catch (const ParseError& e) {
    throw SpecError(where, e.what());
  } catch (const ArithmeticError& e) {
    throw SpecError(where, e.what());
  }
}

template <class T>
Matrix<T> parse_square_matrix(const json& v, const ExpressionSymbols<T>& symbols, const std::string& where) {
  if (!v.is_array() || v.empty()) throw SpecError(where, "expected a nonempty array of rows");
  const std::size_t n = v.size();
  std::vector<T> entries;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = v[i];
    if (!row.is_array() || row.size() != n) throw SpecError(child(where, i), "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) entries.push_back(parse_entry(row[j], symbols, child(child(where, i), j)));
  }
  return Matrix<T>(n, n, std::move(entries));
}

/// "d/dx", "x*d/dx" or an expression for the multiplier u of u*d/dx.
template <Field K>
Derivation<K> parse_derivation(const json& spec, const ExpressionSymbols<RationalFunction<K>>& symbols,
                               const std::string& variable, const typename K::Context& ctx,
                               const std::string& where) {
  Derivation<K> d = Derivation<K>::x_d_dx(ctx);
  if (spec.contains("derivation")) {
    const auto& v = spec["derivation"];
    const std::string loc = child(where, "derivation");
    if (!v.is_string()) throw SpecError(loc, "expected a string");
    std::string text = v.get<std::string>();
    std::erase(text, ' ');
    const std::string suffix = "d/d" + variable;
    if (text == suffix) {
      d = Derivation<K>::d_dx(ctx);
    } else {
      if (text.size() > suffix.size() + 1 && text.ends_with("*" + suffix)) {
        text = text.substr(0, text.size() - suffix.size() - 1);
      }
      d.multiplier = parse_entry(json(text), symbols, loc);
      if (d.multiplier.is_zero()) throw SpecError(loc, "zero derivation");
    }
  }
  d.variable = variable;
  return d;
}

std::string variable_name(const json& spec, std::string_view key, std::string_view fallback, const std::string& where);

struct RepresentationSpec {
  std::shared_ptr<const NumberField> field;
  /// Names usable in entry expressions, e.g. the adjoined roots.
  std::map<std::string, NumberFieldElement> symbols;
  SurfacePresentation presentation{0, 0};
  TargetGroup target = TargetGroup::SL2;
  std::vector<NFMatrix> generators;
  CertifyOptions options;
};

/// {"field": {"adjoin": [{"name", "min_poly"}...]} | "Q", "surface": {"genus",
/// "punctures"}, "target": "SL2" | "GL2", "generators": {name: 2x2}, caps}.
/// Entries are expressions in the adjoined names or coordinate arrays.
RepresentationSpec parse_representation_spec(const json& spec);

template <Field K>
struct FamilySpec {
  TruncatedFamily<K> family;
  std::string variable;
  std::string parameter;
  std::size_t ansatz_degree = 2;
};

/// Builds the family from "layers" (list of matrices in x) or from "matrix"
/// with entries polynomial in the parameter, truncated at "order".
template <Field K>
FamilySpec<K> parse_family_spec(const json& spec, const typename K::Context& ctx);

struct ConjugationSpec {
  std::vector<QMatrix> sigma;
  std::vector<std::vector<QMatrix>> tau;
  std::size_t m = 1;
};
ConjugationSpec parse_conjugation_spec(const json& spec);

}  // namespace pcurv::cli
