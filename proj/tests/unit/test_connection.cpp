#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pcurv/connection.hpp"

using namespace pcurv;
using pcurv::testing::Gen;

namespace {

using QRF = RationalFunction<BigRational>;
using FRF = RationalFunction<Fp>;

QRF qx(std::initializer_list<long> num, std::initializer_list<long> den = {1}) {
  auto poly = [](std::initializer_list<long> c) {
    std::vector<BigRational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly({}, std::move(v));
  };
  return QRF(poly(num), poly(den));
}

RFMatrix<BigRational> qmat(std::size_t n, std::vector<QRF> entries) {
  return RFMatrix<BigRational>(n, n, std::move(entries));
}

QConnection rank1(const QRF& a, const Derivation<BigRational>& d) { return {qmat(1, {a}), d}; }

const Derivation<BigRational> kXdx = Derivation<BigRational>::x_d_dx({});
const Derivation<BigRational> kDdx = Derivation<BigRational>::d_dx({});

RFMatrix<Fp> random_fp_matrix(Gen& g, std::uint64_t p, std::size_t n, int degree = 2) {
  return g.matrix<FRF>(n, [&] { return g.fp_rf(p, degree); });
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

}  // namespace

TEST_CASE("apply_derivation") {
  CHECK(apply_derivation(kXdx, qx({0, 0, 0, 1})) == qx({0, 0, 0, 3}));
  CHECK(apply_derivation(kDdx, qx({1}, {0, 1})) == qx({-1}, {0, 0, 1}));
  CHECK(apply_derivation(kXdx, qx({1, 1}, {0, 1})) == qx({-1}, {0, 1}));
}

TEST_CASE("Leibniz rule on random pairs") {
  Gen g(10);
  for (int i = 0; i < 500; ++i) {
    const Derivation<BigRational> d{g.q_rf(2)};
    if (d.multiplier.is_zero()) continue;
    const QRF f = g.q_rf(), h = g.q_rf();
    CHECK(apply_derivation(d, f * h) == apply_derivation(d, f) * h + f * apply_derivation(d, h));
  }
}

TEST_CASE("frobenius_twist_multiplier") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    CHECK(frobenius_twist_multiplier(kXdx, p) == FRF::variable({p}));
    CHECK(frobenius_twist_multiplier(kDdx, p).is_zero());
  }
  const Derivation<BigRational> x2{qx({0, 0, 1})};
  CHECK(frobenius_twist_multiplier(x2, 3).is_zero());
  CHECK_THROWS_AS(frobenius_twist_multiplier(Derivation<BigRational>{qx({1}, {0, 3})}, 3), BadPrimeError);
}

TEST_CASE("nabla_power_matrix") {
  const auto zero = qmat(2, {qx({0}), qx({0}), qx({0}), qx({0})});
  for (std::uint64_t k = 1; k <= 5; ++k) CHECK(nabla_power_matrix(QConnection(zero, kDdx), k).is_zero());
  long power = 1;
  for (std::uint64_t k = 1; k <= 6; ++k) {
    power *= 3;
    CHECK(nabla_power_matrix(rank1(qx({3}), kXdx), k)(0, 0) == qx({power}));
    CHECK(nabla_power_matrix(rank1(qx({1}), kDdx), k)(0, 0) == qx({1}));
  }
  CHECK_THROWS_AS(nabla_power_matrix(rank1(qx({1}), kDdx), 0), PreconditionError);
}

TEST_CASE("nabla_power_matrix is the matrix of nabla^k") {
  Gen g(11);
  for (int i = 0; i < 20; ++i) {
    const QConnection a(g.matrix<QRF>(2, [&] { return g.q_rf(1); }), g.coin() ? kXdx : kDdx);
    // iterate the operator itself on e_0
    const std::vector<QRF> e0{QRF::one({}), QRF::zero({})};
    std::vector<QRF> w = e0;
    for (std::uint64_t k = 1; k <= 4; ++k) {
      w = a.apply(w);
      CHECK(w == nabla_power_matrix(a, k).column(0));
    }
  }
}

TEST_CASE("Fermat cases vanish, exponential does not") {
  for (long a = -3; a <= 7; ++a) {
    for (const auto& report : scan_primes(rank1(qx({a}), kXdx), 2, 50)) {
      REQUIRE(report.good_prime);
      CHECK(report.vanishes);
      CHECK(pcurv::testing::fermat_residue(a, report.prime) == 0);
      CHECK(report.psi->is_zero() == report.vanishes);
    }
  }
  for (const auto& report : scan_primes(rank1(qx({1}), kDdx), 2, 50)) {
    REQUIRE(report.good_prime);
    CHECK_FALSE(report.vanishes);
    CHECK((*report.psi)(0, 0) == FRF::one({report.prime}));
  }
  const QRF half = QRF::constant(BigRational(BigInt(1), BigInt(2)));
  for (const auto& report : scan_primes(rank1(half, kXdx), 2, 50)) {
    if (report.prime == 2) {
      CHECK_FALSE(report.good_prime);
      CHECK_FALSE(report.psi.has_value());
    } else {
      CHECK(report.vanishes);
    }
  }
}

TEST_CASE("zero connection and bad primes") {
  const auto zero = qmat(2, {qx({0}), qx({0}), qx({0}), qx({0})});
  for (const auto& r : scan_primes(QConnection(zero, kDdx), 2, 30)) {
    CHECK(r.good_prime);
    CHECK(r.vanishes);
  }
  const auto reports = scan_primes(rank1(qx({1}, {0, 5}), kXdx), 2, 11);
  for (const auto& r : reports) CHECK(r.good_prime == (r.prime != 5));
}

TEST_CASE("scan is independent of the number of workers") {
  const auto a = qmat(2, {qx({0}), qx({1, 0, 1}), qx({1}, {1, 1}), qx({0, 1})});
  const QConnection c(a, kXdx);
  const auto serial = scan_primes(c, 2, 23, 1);
  const auto parallel = scan_primes(c, 2, 23, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].prime == parallel[i].prime);
    CHECK(serial[i].good_prime == parallel[i].good_prime);
    CHECK(serial[i].vanishes == parallel[i].vanishes);
    CHECK(serial[i].psi == parallel[i].psi);
  }
}

TEST_CASE("word-expansion oracle") {
  Gen g(12);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 20; ++i) {
      const FpConnection a(random_fp_matrix(g, p, 2), random_fp_derivation(g, p));
      CHECK(pcurv::testing::word_expansion(a, static_cast<unsigned>(p)) == nabla_power_matrix(a, p));
    }
  }
}

TEST_CASE("gauge_transform") {
  const auto a = qmat(2, {qx({1}), qx({0, 1}), qx({0}), qx({2})});
  const auto id = RFMatrix<BigRational>::identity(2, QRF::zero({}), QRF::one({}));
  CHECK(gauge_transform(QConnection(a, kXdx), id).matrix == a);
  CHECK(gauge_transform(rank1(qx({5}), kXdx), qmat(1, {qx({0, 1})})).matrix(0, 0) == qx({6}));
  const auto zero = qmat(2, {qx({0}), qx({0}), qx({0}), qx({0})});
  const auto gm = qmat(2, {qx({1}), qx({0, 0, 1}), qx({0}), qx({1})});
  CHECK(gauge_transform(QConnection(zero, kDdx), gm).matrix == *inverse(gm) * apply_derivation(kDdx, gm));
  CHECK_THROWS_AS(gauge_transform(QConnection(a, kXdx), qmat(2, {qx({1}), qx({1}), qx({1}), qx({1})})),
                  PreconditionError);
}

TEST_CASE("gauge covariance of p-curvature") {
  Gen g(13);
  for (std::uint64_t p : {3, 5, 7}) {
    for (int i = 0; i < 15; ++i) {
      const FpConnection a(random_fp_matrix(g, p, 2, 1), random_fp_derivation(g, p));
      const auto gm = g.fp_gauge(p, 2);
      const auto psi = p_curvature_matrix(a, p);
      const auto moved = p_curvature_matrix(gauge_transform(a, gm), p);
      CHECK(moved == *inverse(gm) * psi * gm);
      CHECK(moved.is_zero() == psi.is_zero());
    }
  }
}

TEST_CASE("direct sums split the p-curvature") {
  Gen g(14);
  for (std::uint64_t p : {3, 5}) {
    for (int i = 0; i < 10; ++i) {
      const auto d = random_fp_derivation(g, p);
      const FpConnection a(random_fp_matrix(g, p, 2, 1), d), b(random_fp_matrix(g, p, 1, 1), d);
      const FpConnection sum(direct_sum(a.matrix, b.matrix), d);
      CHECK(p_curvature_matrix(sum, p) == direct_sum(p_curvature_matrix(a, p), p_curvature_matrix(b, p)));
    }
  }
}

TEST_CASE("general twist agrees with psi = A_p - A for x*d/dx") {
  Gen g(15);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t p = primes[g.index(6)];
    const FpConnection a(random_fp_matrix(g, p, 2, 1), Derivation<Fp>::x_d_dx({p}));
    CHECK(p_curvature_matrix(a, p) == nabla_power_matrix(a, p) - a.matrix);
  }
}

TEST_CASE("cyclic_vector") {
  const auto companion = qmat(2, {qx({0}), qx({1, 1}), qx({1}), qx({0, 1})});
  auto res = cyclic_vector(QConnection(companion, kXdx), 10);
  REQUIRE(res);
  CHECK(res->attempts == 1);
  CHECK(res->gauge == RFMatrix<BigRational>::identity(2, QRF::zero({}), QRF::one({})));
  CHECK(res->companion.matrix() == companion);

  const QConnection diag(qmat(2, {qx({0}), qx({0}), qx({0}), qx({1})}), kXdx);
  CHECK_FALSE(try_cyclic_vector(diag, {QRF::one({}), QRF::zero({})}));
  auto pair = try_cyclic_vector(diag, {QRF::one({}), QRF::one({})});
  REQUIRE(pair);
  CHECK(pair->gauge == qmat(2, {qx({1}), qx({0}), qx({1}), qx({1})}));
  CHECK(gauge_transform(diag, pair->gauge).matrix == pair->companion.matrix());

  const QConnection zero(qmat(2, {qx({0}), qx({0}), qx({0}), qx({0})}), kDdx);
  auto wr = try_cyclic_vector(zero, {QRF::one({}), QRF::variable({})});
  REQUIRE(wr);
  CHECK(gauge_transform(zero, wr->gauge).matrix == wr->companion.matrix());
  auto found = cyclic_vector(zero, 50);
  REQUIRE(found);
  CHECK(found->attempts > 2);
  CHECK_FALSE(cyclic_vector(zero, 2));
}

TEST_CASE("cyclic_vector round-trip on random connections") {
  Gen g(16);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + g.index(2);
    const QConnection a(g.matrix<QRF>(n, [&] { return g.q_rf(1); }), g.coin() ? kXdx : kDdx);
    auto res = cyclic_vector(a, 40, 7);
    REQUIRE(res);
    CHECK(gauge_transform(a, res->gauge).matrix == res->companion.matrix());
  }
}
