#include "pcurv/connection.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace pcurv {

std::optional<Derivation<Fp>> reduce_derivation(const Derivation<BigRational>& d, std::uint64_t p) {
  auto u = reduce_rational_function(d.multiplier, p);
  if (!u || u->is_zero()) return std::nullopt;
  return Derivation<Fp>{std::move(*u), d.variable};
}

std::optional<FpConnection> reduce_connection(const QConnection& a, std::uint64_t p) {
  auto d = reduce_derivation(a.derivation, p);
  if (!d) return std::nullopt;
  auto m = reduce_matrix(a.matrix, p);
  if (!m) return std::nullopt;
  return FpConnection(std::move(*m), std::move(*d));
}

RationalFunction<Fp> frobenius_twist_multiplier(const Derivation<BigRational>& d, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  auto dp = reduce_derivation(d, p);
  if (!dp) throw BadPrimeError("derivation multiplier does not reduce mod " + std::to_string(p));
  return frobenius_twist_multiplier(*dp, p);
}

PCurvatureReport p_curvature(const FpConnection& a) {
  const std::uint64_t p = a.context().p;
  PCurvatureReport report;
  report.prime = p;
  report.good_prime = true;
  report.psi = p_curvature_matrix(a, p);
  report.vanishes = report.psi->is_zero();
  return report;
}

PCurvatureReport p_curvature(const QConnection& a, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  auto reduced = reduce_connection(a, p);
  if (!reduced) return PCurvatureReport{p, false, std::nullopt, false};
  return p_curvature(*reduced);
}

std::vector<PCurvatureReport> scan_primes(const QConnection& a, std::uint64_t p_min, std::uint64_t p_max,
                                          unsigned jobs) {
  if (p_min > p_max) throw PreconditionError("empty prime range");
  const auto primes = primes_in_range(p_min, p_max);
  std::vector<PCurvatureReport> out(primes.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) out[i] = p_curvature(a, primes[i]);
    return out;
  }
  // strided assignment balances the cost, which grows with p
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < primes.size(); i += jobs) out[i] = p_curvature(a, primes[i]);
    }));
  }
  for (auto& f : workers) f.get();
  return out;
}

}  // namespace pcurv
