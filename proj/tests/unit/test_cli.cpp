#include <doctest.h>

#include "pcurv_cli/commands.hpp"

using namespace pcurv;
using namespace pcurv::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(PCURV_TEST_DATA_DIR) + "/" + name; }

json load(const std::string& name) { return load_spec(fixture(name)); }

json without_timing(Report r) {
  r.timing = json::object();
  return r.to_json();
}

}  // namespace

TEST_CASE("report round-trips through JSON") {
  const auto res = run_scan(load("fermat_scan.json"), "fermat_scan.json", {});
  CHECK(Report::from_json(res.report.to_json()) == res.report);
  CHECK(Report::from_json(json::parse(render(res.report))) == res.report);
  CHECK(render(res.report).back() == '\n');
  CHECK_THROWS_AS(Report::from_json(json{{"tool", "pcurv"}}), SpecError);
}

TEST_CASE("reports are deterministic apart from timing") {
  ScanOptions one, four;
  four.jobs = 4;
  four.emit_psi = one.emit_psi = true;
  const auto a = run_scan(load("exp_scan.json"), "exp_scan.json", one);
  auto b = run_scan(load("exp_scan.json"), "exp_scan.json", four);
  b.report.command["options"]["jobs"] = 1;
  CHECK(without_timing(a.report) == without_timing(b.report));

  CertifyCommandOptions c1, c4;
  c4.jobs = 4;
  auto x = run_certify(load("icosahedral.json"), "icosahedral.json", c1);
  auto y = run_certify(load("icosahedral.json"), "icosahedral.json", c4);
  y.report.command["options"]["jobs"] = 1;
  CHECK(without_timing(x.report) == without_timing(y.report));
}

TEST_CASE("scan command") {
  auto res = run_scan(load("fermat_scan.json"), "fermat_scan.json", {});
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.tool == "pcurv");
  CHECK(res.report.summary["primes"] == 15);
  CHECK(res.report.summary["nonvanishing"] == 0);
  for (const auto& row : res.report.results) CHECK(row["vanishes"] == true);

  ScanOptions narrow;
  narrow.primes = PrimeRange{3, 7};
  res = run_scan(load("exp_scan.json"), "exp_scan.json", narrow);
  CHECK(res.report.summary["primes"] == 3);
  CHECK(res.report.summary["vanishing"] == 0);

  CHECK_THROWS_AS(run_scan(load("malformed_scan.json"), "malformed_scan.json", {}), SpecError);
  CHECK_THROWS_AS(load("broken_json.json"), SpecError);
  CHECK_THROWS_AS(load("does_not_exist.json"), UsageError);
  CHECK_THROWS_AS(parse_prime_range("7..3"), UsageError);
  CHECK_THROWS_AS(parse_prime_range("1..3"), UsageError);
  CHECK(primes_in(PrimeRange{10, 20}) == std::vector<std::uint64_t>{11, 13, 17, 19});
}

TEST_CASE("malformed expressions report the JSON location") {
  try {
    run_scan(load("malformed_scan.json"), "malformed_scan.json", {});
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.where() == "/matrix/0/0");
  }
}

TEST_CASE("analyze command") {
  auto res = run_analyze(load("analyze_pole.json"), "analyze_pole.json", {});
  CHECK(res.exit_code == kExitOk);
  REQUIRE(res.report.results.size() == 1);
  CHECK(res.report.results[0]["prediction"]["nonvanishing"] == true);
  CHECK(res.report.results[0]["psi_nonzero"] == true);
  CHECK(res.report.results[0]["consistent"] == true);

  res = run_analyze(load("analyze_regular.json"), "analyze_regular.json", {});
  CHECK(res.report.results[0]["prediction"]["nonvanishing"] == false);
  CHECK(res.report.results[0]["consistent"] == true);

  CHECK_THROWS_AS(run_analyze(load("analyze_small_prime.json"), "analyze_small_prime.json", {}), PreconditionError);
}

TEST_CASE("certify command exit codes") {
  auto res = run_certify(load("quaternion.json"), "quaternion.json", {});
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.results[0]["group_order"] == 8);
  CHECK(res.report.results[0]["verdict"] == "finite");

  res = run_certify(load("icosahedral.json"), "icosahedral.json", {});
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.results[0]["group_order"] == 120);
  CHECK(res.report.results[0]["arch"]["label"] == "evidence");
  CHECK_FALSE(res.report.results[0]["arch"]["evidence"].empty());

  res = run_certify(load("parabolic.json"), "parabolic.json", {});
  CHECK(res.exit_code == kExitObstructed);
  CHECK(res.report.results[0]["witness"] == "c1");

  CertifyCommandOptions capped;
  capped.max_elements = 50;
  res = run_certify(load("icosahedral.json"), "icosahedral.json", capped);
  CHECK(res.exit_code == kExitInconclusive);

  CHECK_THROWS_AS(run_certify(load("closed_torus_bad.json"), "closed_torus_bad.json", {}), SpecError);
}

TEST_CASE("deform commands") {
  auto res = run_normalize(load("family_constant.json"), "family_constant.json", {});
  CHECK(res.exit_code == kExitOk);
  res = run_normalize(load("family_forward.json"), "family_forward.json", {});
  CHECK(res.exit_code == kExitOk);
  res = run_normalize(load("family_obstructed.json"), "family_obstructed.json", {});
  CHECK(res.exit_code == kExitObstructed);

  res = run_conjugate(load("conjugate_forward.json"), "conjugate_forward.json");
  CHECK(res.exit_code == kExitOk);
  res = run_conjugate(load("conjugate_center.json"), "conjugate_center.json");
  CHECK(res.exit_code == kExitObstructed);
}
