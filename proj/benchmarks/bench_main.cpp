#include <benchmark/benchmark.h>

#include "pcurv/connection.hpp"
#include "pcurv/surface/certify.hpp"
#include "pcurv/surface/fricke.hpp"

using namespace pcurv;

namespace {

using QRF = RationalFunction<BigRational>;

QRF qx(std::initializer_list<long> num, std::initializer_list<long> den = {1}) {
  auto poly = [](std::initializer_list<long> c) {
    std::vector<BigRational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly({}, std::move(v));
  };
  return QRF(poly(num), poly(den));
}

QPoly qp(std::initializer_list<long> ascending) {
  std::vector<BigRational> c;
  for (long v : ascending) c.emplace_back(v);
  return QPoly({}, std::move(c));
}

QConnection hypergeometric_like() {
  return {RFMatrix<BigRational>(2, 2, {qx({0}), qx({1, 0, 1}), qx({1}, {1, 1}), qx({0, 1})}),
          Derivation<BigRational>::x_d_dx({})};
}

void BM_PCurvaturePerPrime(benchmark::State& state) {
  const auto a = hypergeometric_like();
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const auto reduced = *reduce_connection(a, p);
  for (auto _ : state) benchmark::DoNotOptimize(p_curvature_matrix(reduced, p));
}
BENCHMARK(BM_PCurvaturePerPrime)->Arg(5)->Arg(13)->Arg(31)->Arg(53);

void BM_ScanPrimes(benchmark::State& state) {
  const auto a = hypergeometric_like();
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_primes(a, 2, 60, jobs));
}
BENCHMARK(BM_ScanPrimes)->Arg(1)->Arg(4)->UseRealTime();

Representation icosahedral() {
  const auto c = compositum(qp({-1, -1, 1}), qp({1, 0, 1}));
  const auto k = c.field;
  using E = NumberFieldElement;
  const E phi = c.first, i = c.second, half(k, BigRational(BigInt(1), BigInt(2))), one(k, BigRational(1));
  const NFMatrix a = nf_matrix(k, {phi * half + (phi - one) * half * i, half, -half, phi * half - (phi - one) * half * i});
  const NFMatrix b = nf_matrix(k, {-(phi - one) * half, half + phi * half * i, -half + phi * half * i, -(phi - one) * half});
  return Representation(k, SurfacePresentation(1, 1), {a, b});
}

void BM_CertifyIcosahedral(benchmark::State& state) {
  const auto rho = icosahedral();
  CertifyOptions options;
  options.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_finiteness(rho, options));
}
BENCHMARK(BM_CertifyIcosahedral)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_FrickePolynomial(benchmark::State& state) {
  std::vector<Letter> letters;
  for (long k = 0; k < state.range(0); ++k) letters.push_back({static_cast<std::size_t>(k % 2), k % 3 == 0 ? -1 : 1});
  const Word w = reduce_word(letters);
  for (auto _ : state) benchmark::DoNotOptimize(fricke_polynomial(w));
}
BENCHMARK(BM_FrickePolynomial)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
