#include "pcurv_cli/commands.hpp"

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "pcurv/surface/certify.hpp"
#include "pcurv/valuation.hpp"

namespace pcurv::cli {

namespace {

using Clock = std::chrono::steady_clock;

json elapsed_since(Clock::time_point start) {
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
  return json{{"elapsed_ms", static_cast<double>(us) / 1000.0}};
}

Report make_report(const std::string& tool, const std::string& name, const std::string& spec_path, json options) {
  Report r;
  r.tool = tool;
  r.command = json{{"name", name}, {"spec", spec_path}, {"options", std::move(options)}};
  return r;
}

template <Field K>
ConnectionMatrix<K> parse_connection(const json& spec, const typename K::Context& ctx, const std::string& var) {
  const auto symbols = rf_symbols<K>(var, ctx);
  auto d = parse_derivation<K>(spec, symbols, var, ctx, "");
  if (spec.contains("companion")) {
    const auto& col = spec["companion"];
    if (!col.is_array() || col.empty()) throw SpecError("/companion", "expected a nonempty list (f_0, ..., f_r-1)");
    std::vector<RationalFunction<K>> f;
    for (std::size_t i = 0; i < col.size(); ++i) f.push_back(parse_entry(col[i], symbols, child("/companion", i)));
    return CompanionConnection<K>{std::move(f), std::move(d)}.connection();
  }
  return {parse_square_matrix(require(spec, "matrix", ""), symbols, "/matrix"), std::move(d)};
}

std::optional<PrimeRange> spec_primes(const json& spec) {
  if (!spec.contains("primes")) return std::nullopt;
  const auto& v = spec["primes"];
  if (!v.is_string()) return std::nullopt;
  try {
    return parse_prime_range(v.get<std::string>());
  } catch (const UsageError& e) {
    throw SpecError("/primes", e.what());
  }
}

json scan_row(const PCurvatureReport& r, bool emit_psi, const std::string& var) {
  json row{{"prime", r.prime}, {"good_prime", r.good_prime}};
  row["vanishes"] = r.good_prime ? json(r.vanishes) : json(nullptr);
  if (emit_psi && r.psi) row["psi"] = rf_matrix_json(*r.psi, var);
  return row;
}

}  // namespace

CommandResult run_scan(const json& spec, const std::string& spec_path, const ScanOptions& options) {
  const auto start = Clock::now();
  if (!spec.is_object()) throw SpecError("", "expected an object");
  const auto prime_field = parse_base_field(spec, "");
  const std::string var = variable_name(spec, "variable", "x", "");
  PrimeRange range = options.primes.value_or(spec_primes(spec).value_or(PrimeRange{}));

  std::vector<PCurvatureReport> rows;
  if (prime_field) {
    const Fp::Context ctx{*prime_field};
    rows.push_back(p_curvature(parse_connection<Fp>(spec, ctx, var)));
    range = {*prime_field, *prime_field};
  } else {
    rows = scan_primes(parse_connection<BigRational>(spec, {}, var), range.lo, range.hi, options.jobs);
  }

  CommandResult out;
  out.report = make_report("pcurv", "scan", spec_path,
                           json{{"primes", std::to_string(range.lo) + ".." + std::to_string(range.hi)},
                                {"jobs", options.jobs},
                                {"emit_psi", options.emit_psi}});
  std::size_t good = 0, vanishing = 0;
  for (const auto& r : rows) {
    out.report.results.push_back(scan_row(r, options.emit_psi, var));
    if (r.good_prime) {
      ++good;
      if (r.vanishes) ++vanishing;
    }
  }
  out.report.summary = json{{"primes", rows.size()},
                            {"good", good},
                            {"bad", rows.size() - good},
                            {"vanishing", vanishing},
                            {"nonvanishing", good - vanishing}};
  out.report.timing = elapsed_since(start);
  return out;
}

namespace {

json valuation_json(const QValuation& v) {
  if (v.is_finite()) return v.value;
  return v.to_string();
}

json analyze_prime(const json& spec, std::uint64_t p, std::uint64_t seed) {
  const Fp::Context ctx{p};
  const std::string x = variable_name(spec, "variable", "x", "");
  const std::string q = variable_name(spec, "parameter", "q", "");
  if (x == q) throw SpecError("/parameter", "parameter and variable must differ");
  const ExpressionSymbols<FpQX> symbols{
      [ctx](const BigInt& n) { return FpQX::from_integer(ctx, n); },
      [ctx, x, q](std::string_view name) -> std::optional<FpQX> {
        if (name == x) return FpQX::variable(ctx);
        if (name == q) return FpQX::constant(FpQ::variable(ctx));
        return std::nullopt;
      }};
  const Derivation<FpQ> d = parse_derivation<FpQ>(spec, symbols, x, ctx, "");

  CompanionConnection<FpQ> c;
  std::optional<std::size_t> attempts;
  if (spec.contains("companion")) {
    const auto& col = spec["companion"];
    if (!col.is_array() || col.empty()) throw SpecError("/companion", "expected a nonempty list (f_0, ..., f_r-1)");
    for (std::size_t i = 0; i < col.size(); ++i) c.last_column.push_back(parse_entry(col[i], symbols, child("/companion", i)));
    c.derivation = d;
  } else {
    const ConnectionMatrix<FpQ> a(parse_square_matrix(require(spec, "matrix", ""), symbols, "/matrix"), d);
    auto cv = cyclic_vector(a, 64, seed);
    if (!cv) throw PreconditionError("no cyclic vector found mod " + std::to_string(p));
    c = std::move(cv->companion);
    attempts = cv->attempts;
  }

  const std::vector<std::string> vars{x, q};
  json row{{"prime", p}, {"rank", c.rank()}};
  json col = json::array();
  for (const auto& f : c.last_column) col.push_back(f.to_string(vars));
  row["companion"] = col;
  if (attempts) row["cyclic_vector_attempts"] = *attempts;

  const auto profile = valuation_profile(c);
  json vals = json::array();
  for (const auto& v : profile.entries) vals.push_back(valuation_json(v));
  row["valuations"] = vals;
  row["min_valuation"] = profile.min_valuation ? json(*profile.min_valuation) : json(nullptr);

  const NewtonPolygon polygon = NewtonPolygon::from_valuations(profile.entries);
  json vertices = json::array();
  for (const auto& [m, v] : polygon.vertices()) vertices.push_back(json::array({m, v}));
  json slopes = json::array();
  for (const auto& s : polygon.slopes()) slopes.push_back(rational_json(s));
  const auto s = polygon.min_eigenvalue_valuation();
  row["newton_polygon"] = json{{"vertices", vertices},
                               {"slopes", slopes},
                               {"min_eigenvalue_valuation", s ? json(rational_json(*s)) : json(nullptr)},
                               {"slope_bound_holds", s ? json(newton_slope_bound_holds(profile.entries, *s))
                                                       : json(nullptr)}};

  const NonvanishingPrediction pred = predict_nonvanishing(c, p);
  const bool nonzero = verify_prediction(c, p);
  row["prediction"] = json{{"nonvanishing", pred.predicted}, {"reason", pred.reason}};
  row["psi_nonzero"] = nonzero;
  row["consistent"] = !pred.predicted || nonzero;
  return row;
}

}  // namespace

CommandResult run_analyze(const json& spec, const std::string& spec_path, const AnalyzeOptions& options) {
  const auto start = Clock::now();
  if (!spec.is_object()) throw SpecError("", "expected an object");
  std::vector<std::uint64_t> primes;
  if (options.primes) {
    primes = primes_in(*options.primes);
  } else if (spec.contains("prime")) {
    primes.push_back(parse_unsigned(spec["prime"], "/prime"));
  } else if (spec.contains("primes") && spec["primes"].is_array()) {
    for (std::size_t i = 0; i < spec["primes"].size(); ++i) {
      primes.push_back(parse_unsigned(spec["primes"][i], child("/primes", i)));
    }
  } else if (const auto r = spec_primes(spec)) {
    primes = primes_in(*r);
  } else {
    throw SpecError("", "missing field 'prime'");
  }
  if (primes.empty()) throw UsageError("no primes selected");

  CommandResult out;
  json plist = json::array();
  for (auto p : primes) plist.push_back(p);
  out.report = make_report("pcurv", "analyze", spec_path, json{{"primes", plist}, {"seed", options.seed}});
  std::size_t predicted = 0, confirmed = 0, inconsistent = 0;
  for (auto p : primes) {
    json row = analyze_prime(spec, p, options.seed);
    if (row["prediction"]["nonvanishing"].get<bool>()) ++predicted;
    if (row["psi_nonzero"].get<bool>()) ++confirmed;
    if (!row["consistent"].get<bool>()) ++inconsistent;
    out.report.results.push_back(std::move(row));
  }
  out.report.summary = json{{"primes", primes.size()},
                            {"predicted_nonvanishing", predicted},
                            {"psi_nonzero", confirmed},
                            {"inconsistent", inconsistent}};
  out.report.timing = elapsed_since(start);
  return out;
}

namespace {

json check_json(const TraceCheck& c, const std::vector<std::string>& names) {
  return json{{"passed", c.passed},
              {"witness", c.witness ? json(c.witness->to_string(names)) : json(nullptr)},
              {"reason", c.reason}};
}

}  // namespace

CommandResult run_certify(const json& spec, const std::string& spec_path, const CertifyCommandOptions& options) {
  const auto start = Clock::now();
  RepresentationSpec rs = parse_representation_spec(spec);
  if (options.max_elements) rs.options.max_elements = *options.max_elements;
  if (options.max_order) rs.options.max_order = *options.max_order;
  if (options.precision_cap) rs.options.precision_cap = *options.precision_cap;
  if (options.projective) rs.options.projective = true;
  rs.options.jobs = options.jobs;

  std::optional<Representation> rho;
  try {
    rho.emplace(rs.field, rs.presentation, rs.generators, rs.target);
  } catch (const PreconditionError& e) {
    throw SpecError("/generators", e.what());
  }
  const FinitenessCertificate cert = certify_finiteness(*rho, rs.options);
  const auto& names = rs.presentation.names();

  CommandResult out;
  out.report = make_report(
      "rep", "certify", spec_path,
      json{{"max_elements", rs.options.max_elements},
           {"max_order", rs.options.max_order},
           {"precision_cap", rs.options.precision_cap},
           {"projective", rs.options.projective},
           {"jobs", rs.options.jobs}});

  json field{{"min_poly", json::array()}, {"generator", rs.field->generator_name()}, {"degree", rs.field->degree()}};
  for (const auto& c : rs.field->min_poly().coefficients()) field["min_poly"].push_back(rational_json(c));
  json gens = json::object();
  for (std::size_t i = 0; i < rho->generators().size(); ++i) gens[names[i]] = nf_matrix_json(rho->generators()[i]);

  json result{{"field", field},
              {"surface", json{{"genus", rs.presentation.genus()}, {"punctures", rs.presentation.punctures()}}},
              {"target", rs.target == TargetGroup::SL2 ? "SL2" : "GL2"},
              {"generators", gens},
              {"derived_last_generator", rho->derived_last()},
              {"verdict", to_string(cert.verdict)},
              {"group_order", cert.verdict == Verdict::Finite ? json(cert.group_order) : json(nullptr)},
              {"witness", cert.witness ? json(cert.witness->to_string(names)) : json(nullptr)},
              {"reason", cert.reason},
              {"element_count", cert.element_count},
              {"max_order_seen", cert.max_order_seen},
              {"determinant_orders", cert.determinant_orders},
              {"nonarch", check_json(cert.nonarch, names)}};
  if (cert.arch) {
    json arch = check_json(*cert.arch, names);
    arch["label"] = "evidence";
    json evidence = json::array();
    for (const auto& ev : cert.arch->evidence) {
      json values = json::array();
      for (const auto& v : ev.values) {
        values.push_back(json{{"re", rational_json(v.center.re)},
                              {"im", rational_json(v.center.im)},
                              {"error", rational_json(v.error)}});
      }
      evidence.push_back(json{{"word", ev.word.to_string(names)}, {"embeddings", values}});
    }
    arch["evidence"] = evidence;
    result["arch"] = arch;
  } else {
    result["arch"] = nullptr;
  }
  out.report.results.push_back(std::move(result));
  out.report.summary = json{{"verdict", to_string(cert.verdict)}, {"element_count", cert.element_count}};
  out.report.timing = elapsed_since(start);
  switch (cert.verdict) {
    case Verdict::Finite:
      out.exit_code = kExitOk;
      break;
    case Verdict::Obstructed:
      out.exit_code = kExitObstructed;
      break;
    case Verdict::Inconclusive:
      out.exit_code = kExitInconclusive;
      break;
  }
  return out;
}

namespace {

template <Field K>
CommandResult normalize_in(const json& spec, const std::string& spec_path, const NormalizeOptions& options,
                           const typename K::Context& ctx) {
  const auto start = Clock::now();
  FamilySpec<K> fs = parse_family_spec<K>(spec, ctx);
  if (options.ansatz_degree) fs.ansatz_degree = *options.ansatz_degree;
  const auto result = normalize_family(fs.family, fs.ansatz_degree);

  CommandResult out;
  out.report = make_report("deform", "normalize", spec_path,
                           json{{"ansatz_degree", fs.ansatz_degree}, {"order", fs.family.order()}});
  json gauges = json::array();
  for (const auto& [k, y] : result.gauges) gauges.push_back(json{{"layer", k}, {"y", rf_matrix_json(y, fs.variable)}});
  json layers = json::array();
  for (const auto& l : result.family.layers) layers.push_back(rf_matrix_json(l, fs.variable));
  const bool normalized = !result.obstructed_layer;
  out.report.results.push_back(json{
      {"rank", fs.family.rank()},
      {"order", fs.family.order()},
      {"derivation", fs.family.derivation.to_string()},
      {"gauges", gauges},
      {"normalized", normalized},
      {"obstructed_layer", result.obstructed_layer ? json(*result.obstructed_layer) : json(nullptr)},
      {"obstruction", result.obstruction ? rf_matrix_json(*result.obstruction, fs.variable) : json(nullptr)},
      {"family", layers}});
  out.report.summary = json{{"normalized", normalized}, {"gauge_steps", result.gauges.size()}};
  out.report.timing = elapsed_since(start);
  out.exit_code = normalized ? kExitOk : kExitObstructed;
  return out;
}

}  // namespace

CommandResult run_normalize(const json& spec, const std::string& spec_path, const NormalizeOptions& options) {
  if (!spec.is_object()) throw SpecError("", "expected an object");
  if (const auto p = parse_base_field(spec, "")) return normalize_in<Fp>(spec, spec_path, options, Fp::Context{*p});
  return normalize_in<BigRational>(spec, spec_path, options, {});
}

CommandResult run_conjugate(const json& spec, const std::string& spec_path) {
  const auto start = Clock::now();
  const ConjugationSpec cs = parse_conjugation_spec(spec);
  std::optional<QMatrix> conj;
  try {
    conj = step_conjugate(cs.sigma, cs.tau, cs.m);
  } catch (const PreconditionError& e) {
    throw SpecError("/tau", e.what());
  }
  CommandResult out;
  out.report = make_report("deform", "conjugate", spec_path, json{{"m", cs.m}});
  out.report.results.push_back(json{{"generators", cs.sigma.size()},
                                    {"m", cs.m},
                                    {"conjugator", conj ? rational_matrix_json(*conj) : json(nullptr)},
                                    {"verified", conj.has_value()}});
  out.report.summary = json{{"conjugate", conj.has_value()}};
  out.report.timing = elapsed_since(start);
  out.exit_code = conj ? kExitOk : kExitObstructed;
  return out;
}

int run_tool(const std::string& tool, int argc, char** argv) {
  CLI::App app{tool == "pcurv" ? "p-curvature scans and Newton-polygon analysis"
               : tool == "rep" ? "finiteness certificates for surface-group representations"
                               : "deformations of connections and representations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string spec_path;
  std::string primes_text;
  ScanOptions scan;
  AnalyzeOptions analyze;
  CertifyCommandOptions certify;
  NormalizeOptions normalize;
  std::size_t ansatz_degree = 0;
  std::size_t max_elements = 0;
  unsigned long max_order = 0;
  unsigned precision_cap = 0;

  auto add_spec = [&](CLI::App* sub) { sub->add_option("spec", spec_path, "JSON specification file")->required(); };
  auto add_jobs = [](CLI::App* sub, unsigned& jobs) {
    sub->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };

  std::function<CommandResult()> action;
  if (tool == "pcurv") {
    auto* s = app.add_subcommand("scan", "p-curvature of a connection over a range of primes");
    add_spec(s);
    s->add_option("--primes", primes_text, "prime range A..B");
    add_jobs(s, scan.jobs);
    s->add_flag("--emit-psi", scan.emit_psi, "include the p-curvature matrices");
    s->callback([&] {
      if (!primes_text.empty()) scan.primes = parse_prime_range(primes_text);
      action = [&] { return run_scan(load_spec(spec_path), spec_path, scan); };
    });
    auto* a = app.add_subcommand("analyze", "Newton polygon and nonvanishing prediction over F_p(q)");
    add_spec(a);
    a->add_option("--primes", primes_text, "prime range A..B");
    a->add_option("--seed", analyze.seed, "seed for the cyclic vector search");
    a->callback([&] {
      if (!primes_text.empty()) analyze.primes = parse_prime_range(primes_text);
      action = [&] { return run_analyze(load_spec(spec_path), spec_path, analyze); };
    });
  } else if (tool == "rep") {
    auto* c = app.add_subcommand("certify", "finiteness certificate for a representation");
    add_spec(c);
    add_jobs(c, certify.jobs);
    c->add_option("--max-elements", max_elements, "closure size cap")->check(CLI::PositiveNumber);
    c->add_option("--max-order", max_order, "element order cap")->check(CLI::PositiveNumber);
    c->add_option("--precision-cap", precision_cap, "bits for evidence enclosures")->check(CLI::Range(16u, 1u << 20));
    c->add_flag("--projective", certify.projective, "identify matrices up to sign");
    c->callback([&] {
      if (max_elements) certify.max_elements = max_elements;
      if (max_order) certify.max_order = max_order;
      if (precision_cap) certify.precision_cap = precision_cap;
      action = [&] { return run_certify(load_spec(spec_path), spec_path, certify); };
    });
  } else {
    auto* n = app.add_subcommand("normalize", "gauge a truncated family to constancy layer by layer");
    add_spec(n);
    auto* degree = n->add_option("--ansatz-degree", ansatz_degree, "degree bound of the polynomial ansatz");
    n->callback([&, degree] {
      if (degree->count() > 0) normalize.ansatz_degree = ansatz_degree;
      action = [&] { return run_normalize(load_spec(spec_path), spec_path, normalize); };
    });
    auto* c = app.add_subcommand("conjugate", "one step of conjugation modulo q^(m+1)");
    add_spec(c);
    c->callback([&] { action = [&] { return run_conjugate(load_spec(spec_path), spec_path); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << tool << ": " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const CommandResult result = action();
    std::cout << render(result.report);
    return result.exit_code;
  } catch (const UsageError& e) {
    std::cerr << tool << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << tool << ": " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace pcurv::cli
