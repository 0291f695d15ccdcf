#include "pcurv_cli/spec.hpp"

#include <fstream>
#include <sstream>

namespace pcurv::cli {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

json parse_spec_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..." after a bracketed id
    std::string msg = e.what();
    if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw SpecError("", msg);
  }
}

json load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

PrimeRange parse_prime_range(std::string_view text) {
  const auto dots = text.find("..");
  auto number = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw UsageError("malformed prime range '" + std::string(text) + "', expected A..B");
    }
    return std::stoull(std::string(s));
  };
  PrimeRange r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.lo < 2 || r.hi < r.lo) throw UsageError("prime range needs 2 <= A <= B");
  return r;
}

std::vector<std::uint64_t> primes_in(const PrimeRange& r) { return primes_in_range(r.lo, r.hi); }

std::string child(const std::string& where, std::string_view key) { return where + "/" + std::string(key); }
std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const json& require(const json& obj, std::string_view key, const std::string& where) {
  if (!obj.is_object()) throw SpecError(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(where, "missing field '" + std::string(key) + "'");
  return *it;
}

BigRational parse_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigRational(BigInt(v.dump()));
  if (!v.is_string()) throw SpecError(where, "expected a rational as integer or \"num/den\" string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  auto integer = [&](const std::string& t) {
    const std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos) {
      throw SpecError(where, "malformed rational '" + s + "'");
    }
    return BigInt(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return BigRational(integer(s));
  const BigInt den = integer(s.substr(slash + 1));
  if (den == 0) throw SpecError(where, "zero denominator in '" + s + "'");
  return BigRational(integer(s.substr(0, slash)), den);
}

std::uint64_t parse_unsigned(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw SpecError(where, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::optional<std::uint64_t> parse_base_field(const json& spec, const std::string& where) {
  if (!spec.contains("field")) return std::nullopt;
  const auto& f = spec["field"];
  const std::string loc = child(where, "field");
  std::optional<std::uint64_t> p;
  if (f.is_string()) {
    const std::string s = f.get<std::string>();
    if (s == "Q" || s == "QQ") return std::nullopt;
    if (s.starts_with("GF(") && s.ends_with(")")) {
      const std::string digits = s.substr(3, s.size() - 4);
      if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw SpecError(loc, "malformed field '" + s + "'");
      }
      p = std::stoull(digits);
    } else {
      throw SpecError(loc, "unknown field '" + s + "', expected \"Q\" or \"GF(p)\"");
    }
  } else if (f.is_object()) {
    p = parse_unsigned(require(f, "prime", loc), child(loc, "prime"));
  } else {
    throw SpecError(loc, "expected \"Q\", \"GF(p)\" or {\"prime\": p}");
  }
  if (!is_prime(*p) || *p > (1ULL << 31)) throw SpecError(loc, std::to_string(*p) + " is not a supported prime");
  return p;
}

std::string variable_name(const json& spec, std::string_view key, std::string_view fallback, const std::string& where) {
  if (!spec.contains(key)) return std::string(fallback);
  const auto& v = spec[std::string(key)];
  const std::string loc = child(where, key);
  if (!v.is_string()) throw SpecError(loc, "expected a variable name");
  const std::string s = v.get<std::string>();
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])) ||
      s.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") != std::string::npos) {
    throw SpecError(loc, "invalid variable name '" + s + "'");
  }
  return s;
}

namespace {

QPoly parse_min_poly(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() < 2) throw SpecError(where, "expected ascending coefficients of degree >= 1");
  std::vector<BigRational> coeffs;
  for (std::size_t i = 0; i < v.size(); ++i) coeffs.push_back(parse_rational(v[i], child(where, i)));
  if (coeffs.back() == 0) throw SpecError(where, "leading coefficient is zero");
  return rational_polynomial(coeffs).monic();
}

NumberFieldElement parse_nf_entry(const json& v, const RepresentationSpec& rs, const std::string& where) {
  if (v.is_array()) {
    if (v.size() > rs.field->degree()) throw SpecError(where, "more coordinates than the field degree");
    std::vector<BigRational> coords;
    for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(parse_rational(v[i], child(where, i)));
    coords.resize(rs.field->degree(), BigRational(0));
    return NumberFieldElement(rs.field, std::move(coords));
  }
  const auto field = rs.field;
  const ExpressionSymbols<NumberFieldElement> symbols{
      [field](const BigInt& n) { return NumberFieldElement(field, BigRational(n)); },
      [&rs](std::string_view name) -> std::optional<NumberFieldElement> {
        const auto it = rs.symbols.find(std::string(name));
        if (it == rs.symbols.end()) return std::nullopt;
        return it->second;
      }};
  return parse_entry(v, symbols, where);
}

void parse_number_field(const json& spec, RepresentationSpec& rs) {
  const std::string loc = "/field";
  if (!spec.contains("field") || (spec["field"].is_string() && spec["field"] == "Q")) {
    rs.field = NumberField::rationals();
    return;
  }
  const auto& f = spec["field"];
  if (!f.is_object()) throw SpecError(loc, "expected \"Q\" or an object with \"adjoin\"");
  const auto& adjoin = require(f, "adjoin", loc);
  const std::string aloc = child(loc, "adjoin");
  if (!adjoin.is_array() || adjoin.empty() || adjoin.size() > 2) {
    throw SpecError(aloc, "expected one or two adjoined roots");
  }
  std::vector<std::pair<std::string, QPoly>> roots;
  for (std::size_t i = 0; i < adjoin.size(); ++i) {
    const std::string rloc = child(aloc, i);
    const std::string name = variable_name(adjoin[i], "name", i == 0 ? "t" : "s", rloc);
    roots.emplace_back(name, parse_min_poly(require(adjoin[i], "min_poly", rloc), child(rloc, "min_poly")));
  }
  try {
    if (roots.size() == 1) {
      rs.field = NumberField::create(roots[0].second, roots[0].first);
      rs.symbols.emplace(roots[0].first, NumberFieldElement::generator(rs.field));
    } else {
      if (roots[0].first == roots[1].first) throw SpecError(aloc, "adjoined roots need distinct names");
      const std::string gen = variable_name(f, "generator", "t", loc);
      auto comp = compositum(roots[0].second, roots[1].second, gen);
      rs.field = comp.field;
      rs.symbols.emplace(roots[0].first, comp.first);
      rs.symbols.emplace(roots[1].first, comp.second);
      rs.symbols.emplace(gen, NumberFieldElement::generator(rs.field));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(aloc, e.what());
  }
}

}  // namespace

RepresentationSpec parse_representation_spec(const json& spec) {
  if (!spec.is_object()) throw SpecError("", "expected an object");
  RepresentationSpec rs;
  parse_number_field(spec, rs);

  const auto& surface = require(spec, "surface", "");
  const std::size_t genus = parse_unsigned(require(surface, "genus", "/surface"), "/surface/genus");
  const std::size_t punctures = parse_unsigned(require(surface, "punctures", "/surface"), "/surface/punctures");
  if (2 * genus + punctures > 20) throw SpecError("/surface", "at most 20 generators are supported");
  rs.presentation = SurfacePresentation(genus, punctures);

  if (spec.contains("target")) {
    const auto& t = spec["target"];
    if (t == "SL2") {
      rs.target = TargetGroup::SL2;
    } else if (t == "GL2") {
      rs.target = TargetGroup::GL2;
    } else {
      throw SpecError("/target", "expected \"SL2\" or \"GL2\"");
    }
  }

  const auto& gens = require(spec, "generators", "");
  if (!gens.is_object()) throw SpecError("/generators", "expected an object keyed by generator name");
  const auto& names = rs.presentation.names();
  for (const auto& [key, value] : gens.items()) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw SpecError(child("/generators", key), "unknown generator '" + key + "'");
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string loc = child("/generators", names[i]);
    if (!gens.contains(names[i])) {
      if (i + 1 == names.size() && punctures > 0) break;
      throw SpecError("/generators", "missing generator '" + names[i] + "'");
    }
    const auto& m = gens[names[i]];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2) {
      throw SpecError(loc, "expected a 2x2 matrix");
    }
    std::vector<NumberFieldElement> entries;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) entries.push_back(parse_nf_entry(m[r][c], rs, child(child(loc, r), c)));
    }
    rs.generators.push_back(NFMatrix(2, 2, std::move(entries)));
  }

  if (spec.contains("max_elements")) rs.options.max_elements = parse_unsigned(spec["max_elements"], "/max_elements");
  if (spec.contains("max_order")) rs.options.max_order = parse_unsigned(spec["max_order"], "/max_order");
  if (spec.contains("projective")) {
    if (!spec["projective"].is_boolean()) throw SpecError("/projective", "expected a boolean");
    rs.options.projective = spec["projective"].get<bool>();
  }
  if (spec.contains("evidence_tolerance")) {
    const BigRational tol = parse_rational(spec["evidence_tolerance"], "/evidence_tolerance");
    if (tol <= 0) throw SpecError("/evidence_tolerance", "tolerance must be positive");
    rs.options.evidence_tolerance = tol;
  }
  if (spec.contains("precision_cap")) {
    rs.options.precision_cap = static_cast<unsigned>(parse_unsigned(spec["precision_cap"], "/precision_cap"));
  }
  return rs;
}

template <Field K>
FamilySpec<K> parse_family_spec(const json& spec, const typename K::Context& ctx) {
  using RF = RationalFunction<K>;
  using RF2 = RationalFunction<RF>;
  if (!spec.is_object()) throw SpecError("", "expected an object");
  FamilySpec<K> out;
  out.variable = variable_name(spec, "variable", "x", "");
  out.parameter = variable_name(spec, "parameter", "q", "");
  if (out.variable == out.parameter) throw SpecError("/parameter", "parameter and variable must differ");
  const auto symbols = rf_symbols<K>(out.variable, ctx);
  out.family.derivation = parse_derivation<K>(spec, symbols, out.variable, ctx, "");
  if (spec.contains("ansatz_degree")) out.ansatz_degree = parse_unsigned(spec["ansatz_degree"], "/ansatz_degree");

  if (spec.contains("layers")) {
    const auto& layers = spec["layers"];
    if (!layers.is_array() || layers.empty()) throw SpecError("/layers", "expected a nonempty list of matrices");
    for (std::size_t k = 0; k < layers.size(); ++k) {
      out.family.layers.push_back(parse_square_matrix(layers[k], symbols, child("/layers", k)));
      if (out.family.layers.back().rows() != out.family.layers[0].rows()) {
        throw SpecError(child("/layers", k), "layer shapes differ");
      }
    }
    if (spec.contains("order")) {
      const std::size_t m = parse_unsigned(spec["order"], "/order");
      if (m == 0) throw SpecError("/order", "order must be positive");
      const RFMatrix<K> zero(out.family.layers[0].rows(), out.family.layers[0].rows(), RF::zero(ctx));
      out.family.layers.resize(m, zero);
    }
    return out;
  }

  const std::size_t m = parse_unsigned(require(spec, "order", ""), "/order");
  if (m == 0) throw SpecError("/order", "order must be positive");
  const std::string x = out.variable, q = out.parameter;
  const ExpressionSymbols<RF2> symbols2{
      [ctx](const BigInt& n) { return RF2::from_integer(ctx, n); },
      [ctx, x, q](std::string_view name) -> std::optional<RF2> {
        if (name == x) return RF2::constant(RF::variable(ctx));
        if (name == q) return RF2::variable(ctx);
        return std::nullopt;
      }};
  const auto full = parse_square_matrix(require(spec, "matrix", ""), symbols2, "/matrix");
  const std::size_t r = full.rows();
  out.family.layers.assign(m, RFMatrix<K>(r, r, RF::zero(ctx)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const auto& e = full(i, j);
      if (e.denominator().degree() > 0) {
        throw SpecError(child(child("/matrix", i), j), "entry must be polynomial in " + q);
      }
      const RF den = e.denominator().leading();
      for (std::size_t k = 0; k < m; ++k) out.family.layers[k](i, j) = e.numerator().coefficient(k) / den;
    }
  }
  return out;
}

template FamilySpec<BigRational> parse_family_spec<BigRational>(const json&, const BigRational::Context&);
template FamilySpec<Fp> parse_family_spec<Fp>(const json&, const Fp::Context&);

namespace {

QMatrix parse_rational_matrix(const json& v, const std::string& where, std::size_t n) {
  if (!v.is_array() || v.size() != n) throw SpecError(where, "expected " + std::to_string(n) + " rows");
  std::vector<BigRational> entries;
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n) throw SpecError(child(where, i), "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) entries.push_back(parse_rational(v[i][j], child(child(where, i), j)));
  }
  return QMatrix(n, n, std::move(entries));
}

}  // namespace

ConjugationSpec parse_conjugation_spec(const json& spec) {
  if (!spec.is_object()) throw SpecError("", "expected an object");
  ConjugationSpec out;
  out.m = parse_unsigned(require(spec, "m", ""), "/m");
  if (out.m == 0) throw SpecError("/m", "m must be at least 1");
  const auto& sigma = require(spec, "sigma", "");
  const auto& tau = require(spec, "tau", "");
  if (!sigma.is_array() || sigma.empty()) throw SpecError("/sigma", "expected a nonempty list of matrices");
  if (!tau.is_array() || tau.size() != sigma.size()) throw SpecError("/tau", "expected one layer list per generator");
  if (!sigma[0].is_array() || sigma[0].empty()) throw SpecError("/sigma/0", "expected a square matrix");
  const std::size_t n = sigma[0].size();
  for (std::size_t g = 0; g < sigma.size(); ++g) {
    out.sigma.push_back(parse_rational_matrix(sigma[g], child("/sigma", g), n));
    const std::string tloc = child("/tau", g);
    if (!tau[g].is_array() || tau[g].empty() || tau[g].size() > out.m + 1) {
      throw SpecError(tloc, "expected layers 0.." + std::to_string(out.m));
    }
    std::vector<QMatrix> layers;
    for (std::size_t k = 0; k < tau[g].size(); ++k) layers.push_back(parse_rational_matrix(tau[g][k], child(tloc, k), n));
    out.tau.push_back(std::move(layers));
  }
  return out;
}

}  // namespace pcurv::cli
