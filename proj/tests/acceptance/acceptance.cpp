// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/deformation.hpp"
#include "pcurv/surface/certify.hpp"
#include "pcurv/surface/fricke.hpp"
#include "pcurv/valuation.hpp"

using namespace pcurv;
using pcurv::testing::Gen;

namespace {

using QRF = RationalFunction<BigRational>;
using FRF = RationalFunction<Fp>;
using QM = RFMatrix<BigRational>;
using E = NumberFieldElement;

QRF qconst(long a) { return QRF::constant(BigRational(a)); }

QPoly qp(std::initializer_list<long> ascending) {
  std::vector<BigRational> c;
  for (long v : ascending) c.emplace_back(v);
  return QPoly({}, std::move(c));
}

Derivation<Fp> random_fp_derivation(Gen& g, std::uint64_t p) {
  switch (g.integer(0, 2)) {
    case 0: return Derivation<Fp>::d_dx({p});
    case 1: return Derivation<Fp>::x_d_dx({p});
    default: {
      auto u = g.fp_poly(p, 2);
      while (u.is_zero()) u = g.fp_poly(p, 2);
      return {FRF(u)};
    }
  }
}

bool fermat() {
  for (long a = -3; a <= 7; ++a) {
    const QConnection c(QM(1, 1, std::vector<QRF>{qconst(a)}), Derivation<BigRational>::x_d_dx({}));
    for (const auto& r : scan_primes(c, 2, 50)) {
      if (!r.good_prime) continue;
      if (!r.psi || !r.psi->is_zero() || !r.vanishes) return false;
    }
  }
  return true;
}

bool transcendence() {
  const QConnection c(QM(1, 1, std::vector<QRF>{qconst(1)}), Derivation<BigRational>::d_dx({}));
  const auto reports = scan_primes(c, 2, 50);
  if (reports.size() != 15) return false;
  for (const auto& r : reports) {
    if (!r.good_prime || !r.psi || r.psi->is_zero()) return false;
  }
  return true;
}

bool word_expansion() {
  Gen g(1003);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 20; ++i) {
      const FpConnection a(g.matrix<FRF>(2, [&] { return g.fp_rf(p, 2); }), random_fp_derivation(g, p));
      if (pcurv::testing::word_expansion(a, static_cast<unsigned>(p)) != nabla_power_matrix(a, p)) return false;
    }
  }
  return true;
}

FpQ qmono(std::uint64_t p, long c, long e) {
  const Fp::Context ctx{p};
  const Fp coeff(ctx, c);
  if (e >= 0) return FpQ(Polynomial<Fp>::monomial(coeff, static_cast<std::size_t>(e)));
  return FpQ(Polynomial<Fp>::constant(coeff), Polynomial<Fp>::monomial(Fp::one(ctx), static_cast<std::size_t>(-e)));
}

FpQX random_entry(Gen& g, std::uint64_t p, long low) {
  const Fp::Context ctx{p};
  const FpQX x = FpQX::variable(ctx);
  FpQX out = FpQX::zero(ctx);
  for (long e = low; e <= low + 2; ++e) {
    long c0 = g.integer(0, static_cast<long>(p) - 1), c1 = g.integer(0, static_cast<long>(p) - 1);
    if (e == low && c0 == 0 && c1 == 0) c0 = 1;
    out = out + FpQX::constant(qmono(p, c0, e)) + FpQX::constant(qmono(p, c1, e)) * x;
  }
  return out;
}

struct PoleInstance {
  std::uint64_t p;
  CompanionConnection<FpQ> c;
};

std::vector<PoleInstance> pole_instances() {
  Gen g(1004);
  const std::uint64_t primes[] = {3, 5, 7, 11, 13};
  std::vector<PoleInstance> out;
  while (out.size() < 20) {
    const std::uint64_t p = primes[g.index(5)];
    const long l0 = g.integer(-3, 2), l1 = g.integer(-3, 2);
    if (std::min(l0, l1) >= 0) continue;
    out.push_back({p, {{random_entry(g, p, l0), random_entry(g, p, l1)}, Derivation<FpQ>::x_d_dx(Fp::Context{p})}});
  }
  return out;
}

bool soundness() {
  for (const auto& [p, c] : pole_instances()) {
    if (!predict_nonvanishing(c, p).predicted) return false;
    if (!verify_prediction(c, p)) return false;
  }
  return true;
}

bool newton_identity() {
  for (const auto& [p, c] : pole_instances()) {
    const auto profile = valuation_profile(c);
    const auto s = newton_polygon(c).min_eigenvalue_valuation();
    if (!s || *s != pcurv::testing::brute_min_slope(profile.entries)) return false;
    if (!newton_slope_bound_holds(profile.entries, *s)) return false;
  }
  return true;
}

bool gauge_covariance() {
  Gen g(1006);
  const std::uint64_t primes[] = {3, 5, 7};
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t p = primes[i % 3];
    const FpConnection a(g.matrix<FRF>(2, [&] { return g.fp_rf(p, 1); }), random_fp_derivation(g, p));
    const auto gm = g.fp_gauge(p, 2);
    if (p_curvature_matrix(gauge_transform(a, gm), p) != *inverse(gm) * p_curvature_matrix(a, p) * gm) return false;
  }
  return true;
}

QM random_poly_matrix(Gen& g, std::size_t r, int degree) {
  return g.matrix<QRF>(r, [&] { return QRF(g.q_poly(degree, 3)); });
}

bool block_structure() {
  Gen g(1007);
  for (int i = 0; i < 30; ++i) {
    const std::size_t r = 1 + g.index(3);
    const auto d = g.coin() ? Derivation<BigRational>::x_d_dx({}) : Derivation<BigRational>::d_dx({});
    const QConnection a(random_poly_matrix(g, r, 1), d);
    const auto ext = build_self_extension(a, random_poly_matrix(g, r, 1));
    const std::uint64_t j = 1 + g.index(7);
    const auto [pj, qj] = block_power_pair(ext, j);
    if (nabla_power_matrix(ext.m, j) != assemble_blocks(pj, qj)) return false;
  }
  return true;
}

bool deformation_round_trip() {
  Gen g(1008);
  for (int i = 0; i < 30; ++i) {
    const std::size_t r = 1 + g.index(2);
    const auto d = g.coin() ? Derivation<BigRational>::x_d_dx({}) : Derivation<BigRational>::d_dx({});
    const QConnection a(random_poly_matrix(g, r, 1), d);
    const auto y0 = random_poly_matrix(g, r, 2);
    const QM b = -(a.matrix * y0 - y0 * a.matrix + apply_derivation(a.derivation, y0));
    const auto sol = solve_deformation(a, b, 3);
    if (!sol || !sol->residual.is_zero() || !deformation_residual(a, b, sol->y).is_zero()) return false;
  }
  const QM zero(1, 1, std::vector<QRF>{qconst(0)});
  const QRF inv_x(QPoly::one({}), QPoly::variable({}));
  TruncatedFamily<BigRational> obstructed{{zero, QM(1, 1, std::vector<QRF>{inv_x})}, Derivation<BigRational>::d_dx({})};
  const auto res = normalize_family(obstructed, 4);
  return res.obstructed_layer && *res.obstructed_layer == 1;
}

QMatrix small_rational_matrix(Gen& g) {
  return g.matrix<BigRational>(2, [&] { return BigRational(g.integer(-4, 4)); });
}

bool step_conjugation() {
  Gen g(1009);
  const QMatrix z(2, 2, BigRational(0));
  for (int i = 0; i < 20; ++i) {
    const std::size_t count = 1 + g.index(2), m = 1 + g.index(3);
    const QMatrix m0 = small_rational_matrix(g);
    std::vector<QMatrix> sigma;
    std::vector<std::vector<QMatrix>> tau;
    for (std::size_t k = 0; k < count; ++k) {
      QMatrix s = small_rational_matrix(g);
      while (determinant(s).is_zero()) s = small_rational_matrix(g);
      std::vector<QMatrix> layers(m + 1, z);
      layers[0] = s;
      layers[m] = m0 * s - s * m0;
      sigma.push_back(s);
      tau.push_back(std::move(layers));
    }
    const auto conj = step_conjugate(sigma, tau, m);
    if (!conj || !verify_step_conjugate(sigma, tau, m, *conj)) return false;
  }
  const QMatrix id = QMatrix::identity(2, BigRational(0), BigRational(1));
  const QMatrix n(2, 2, {BigRational(1), BigRational(0), BigRational(0), BigRational(0)});
  return !step_conjugate({id}, {{id, n}}, 1).has_value();
}

bool fricke() {
  Gen g(1010);
  const auto k = NumberField::create(qp({1, 0, 1}), "i");
  const E one(k, BigRational(1));
  for (int pair = 0; pair < 20; ++pair) {
    const std::vector<NFMatrix> gens{g.sl2(k, 3), g.sl2(k, 3)};
    const E tx = gens[0].trace(), ty = gens[1].trace(), tz = (gens[0] * gens[1]).trace();
    for (int i = 0; i < 100; ++i) {
      const Word w = g.word(2, 10);
      if (fricke_polynomial(w).evaluate(tx, ty, tz, one) != pcurv::testing::direct_trace(gens, w)) return false;
    }
  }
  using TP = TracePolynomial;
  const TP x = TP::variable(0), y = TP::variable(1), z = TP::variable(2);
  const Word a = Word::generator(0), b = Word::generator(1);
  return fricke_polynomial(a * b * a.inverse() * b.inverse()) == x * x + y * y + z * z - x * y * z - TP::constant(2);
}

bool certification() {
  using Clock = std::chrono::steady_clock;
  const auto within = [](Clock::time_point start) { return Clock::now() - start < std::chrono::seconds(30); };

  auto start = Clock::now();
  const auto gi = NumberField::create(qp({1, 0, 1}), "i");
  const E i = E::generator(gi), zero(gi, BigRational(0)), one(gi, BigRational(1));
  const Representation quat(gi, SurfacePresentation(1, 1),
                            {nf_matrix(gi, {i, zero, zero, -i}), nf_matrix(gi, {zero, one, -one, zero})});
  auto cert = certify_finiteness(quat);
  if (cert.verdict != Verdict::Finite || cert.group_order != 8 || !within(start)) return false;

  start = Clock::now();
  const auto c = compositum(qp({-1, -1, 1}), qp({1, 0, 1}));
  const auto k = c.field;
  const E phi = c.first, j = c.second, half(k, BigRational(BigInt(1), BigInt(2))), u(k, BigRational(1));
  const NFMatrix a = nf_matrix(k, {phi * half + (phi - u) * half * j, half, -half, phi * half - (phi - u) * half * j});
  const NFMatrix b = nf_matrix(k, {-(phi - u) * half, half + phi * half * j, -half + phi * half * j, -(phi - u) * half});
  CertifyOptions opts;
  opts.max_elements = 10000;
  cert = certify_finiteness(Representation(k, SurfacePresentation(1, 1), {a, b}), opts);
  if (cert.verdict != Verdict::Finite || cert.group_order != 120 || !within(start)) return false;

  start = Clock::now();
  const auto q = NumberField::rationals();
  const E q1(q, BigRational(1)), q0(q, BigRational(0));
  const Representation parabolic(q, SurfacePresentation(0, 3),
                                 {nf_matrix(q, {q1, q1, q0, q1}), nf_matrix(q, {q0, q1, -q1, q0})});
  cert = certify_finiteness(parabolic);
  return cert.verdict == Verdict::Obstructed && cert.reason.find("parabolic noncentral") != std::string::npos &&
         within(start);
}

bool kronecker() {
  const std::pair<QPoly, std::optional<unsigned>> cases[] = {
      {qp({1, -1, 1}), 6u}, {qp({1, 0, 1}), 4u}, {qp({1, -3, 1}), std::nullopt}, {qp({-1, -1, 1}), std::nullopt}};
  for (const auto& [f, expected] : cases) {
    const auto got = cyclotomic_order(f);
    if (got != expected) return false;
    if (pcurv::testing::naive_cyclotomic_order(f, 200) != expected) return false;
    if (got) {
      const QPoly xn = QPoly::monomial(BigRational(1), *got) - QPoly::one({});
      if (!(xn % f).is_zero()) return false;
    }
  }
  return true;
}

bool galois_stability() {
  Gen g(1013);
  const auto k = NumberField::create(qp({1, 0, 1}), "i");
  for (int t = 0; t < 5; ++t) {
    const Representation rho(k, SurfacePresentation(1, 1), {g.sl2(k), g.sl2(k)});
    const auto conj = conjugate_representation(rho, -E::generator(k));
    const auto words = simple_loop_products(rho.presentation());
    if (nonarch_check(rho, words).passed != nonarch_check(conj, words).passed) return false;
    for (const auto& w : words) {
      const auto a = element_order(rho.evaluate(w)), b = element_order(conj.evaluate(w));
      if (a.finite != b.finite || a.order != b.order) return false;
    }
  }
  return true;
}

struct Criterion {
  int number;
  const char* name;
  std::function<bool()> run;
  double limit_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Fermat vanishing", fermat, 5},
      {2, "transcendence witness", transcendence, 5},
      {3, "word-expansion oracle", word_expansion, 60},
      {4, "pole prediction soundness", soundness, 300},
      {5, "Newton polygon identity", newton_identity, 300},
      {6, "gauge covariance", gauge_covariance, 300},
      {7, "block structure", block_structure, 300},
      {8, "deformation round-trip", deformation_round_trip, 300},
      {9, "step conjugation", step_conjugation, 300},
      {10, "Fricke engine", fricke, 300},
      {11, "finiteness certification", certification, 90},
      {12, "Kronecker suite", kronecker, 300},
      {13, "Galois stability", galois_stability, 300},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      note = std::string(" exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      ok = false;
      note += " time limit exceeded";
    }
    if (!ok) ++failures;
    std::printf("criterion %d: %s (%s, %.3f s)%s\n", c.number, ok ? "PASS" : "FAIL", c.name, secs, note.c_str());
  }
  return failures == 0 ? 0 : 1;
}
