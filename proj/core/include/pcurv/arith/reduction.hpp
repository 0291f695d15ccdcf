#pragma once

#include <cstdint>
#include <optional>

#include "pcurv/arith/matrix.hpp"
#include "pcurv/arith/prime_field.hpp"
#include "pcurv/arith/rational_function.hpp"

namespace pcurv {

/// Coefficient-wise reduction; empty when p divides a denominator.
inline std::optional<Polynomial<Fp>> reduce_polynomial(const Polynomial<BigRational>& f, std::uint64_t p) {
  std::vector<Fp> c;
  c.reserve(f.coefficients().size());
  for (const auto& x : f.coefficients()) {
    auto r = reduce_mod(x, p);
    if (!r) return std::nullopt;
    c.push_back(*r);
  }
  return Polynomial<Fp>(Fp::Context{p}, std::move(c));
}

/// Reduction of num/den after scaling both to primitive integer polynomials;
/// empty when the denominator vanishes mod p.
inline std::optional<RationalFunction<Fp>> reduce_rational_function(const RationalFunction<BigRational>& f,
                                                                    std::uint64_t p) {
  BigInt l = 1;
  for (const auto* poly : {&f.numerator(), &f.denominator()}) {
    for (const auto& c : poly->coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  }
  BigInt g = 0;
  for (const auto* poly : {&f.numerator(), &f.denominator()}) {
    for (const auto& c : poly->coefficients()) {
      const BigInt n = c.numerator() * (l / c.denominator());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
  }
  const BigRational scale(l, g);
  auto num = reduce_polynomial(f.numerator().scaled(scale), p);
  auto den = reduce_polynomial(f.denominator().scaled(scale), p);
  if (!num || !den || den->is_zero()) return std::nullopt;
  return RationalFunction<Fp>(std::move(*num), std::move(*den));
}

inline std::optional<Matrix<RationalFunction<Fp>>> reduce_matrix(const Matrix<RationalFunction<BigRational>>& m,
                                                                 std::uint64_t p) {
  std::vector<RationalFunction<Fp>> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& x : m.elements()) {
    auto r = reduce_rational_function(x, p);
    if (!r) return std::nullopt;
    out.push_back(std::move(*r));
  }
  return Matrix<RationalFunction<Fp>>(m.rows(), m.cols(), std::move(out));
}

}  // namespace pcurv
