#pragma once

// Seeded random instances for the property suites.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "pcurv/arith/number_field.hpp"
#include "pcurv/arith/prime_field.hpp"
#include "pcurv/arith/rational_function.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/surface/representation.hpp"
#include "pcurv/surface/word.hpp"
#include "pcurv/valuation.hpp"

namespace pcurv::testing {

/// Seed shared by every suite; PCURV_TEST_SEED overrides it.
inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("PCURV_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt) : rng_(base_seed() ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }
  bool coin() { return integer(0, 1) == 1; }

  BigRational rational(long height = 9) {
    const long den = integer(1, height);
    return BigRational(BigInt(integer(-height, height)), BigInt(den));
  }

  Fp fp(std::uint64_t p) { return Fp({p}, integer(0, static_cast<long>(p) - 1)); }

  template <Field K, class Coeff>
  Polynomial<K> poly(const typename K::Context& ctx, int max_degree, Coeff&& coeff) {
    const int d = static_cast<int>(integer(0, max_degree));
    std::vector<K> c;
    for (int i = 0; i <= d; ++i) c.push_back(coeff());
    return Polynomial<K>(ctx, std::move(c));
  }

  Polynomial<Fp> fp_poly(std::uint64_t p, int max_degree) {
    return poly<Fp>(Fp::Context{p}, max_degree, [&] { return fp(p); });
  }
  Polynomial<BigRational> q_poly(int max_degree, long height = 5) {
    return poly<BigRational>({}, max_degree, [&] { return rational(height); });
  }

  /// Random element of F_p(x) with a nonzero denominator of small degree.
  RationalFunction<Fp> fp_rf(std::uint64_t p, int max_degree = 2, bool allow_denominator = true) {
    auto num = fp_poly(p, max_degree);
    if (!allow_denominator || coin()) return RationalFunction<Fp>(num);
    auto den = fp_poly(p, 1);
    while (den.is_zero()) den = fp_poly(p, 1);
    return RationalFunction<Fp>(num, den);
  }

  RationalFunction<BigRational> q_rf(int max_degree = 2, bool allow_denominator = true) {
    auto num = q_poly(max_degree);
    if (!allow_denominator || coin()) return RationalFunction<BigRational>(num);
    auto den = q_poly(1);
    while (den.is_zero()) den = q_poly(1);
    return RationalFunction<BigRational>(num, den);
  }

  template <class T, class F>
  Matrix<T> matrix(std::size_t n, F&& entry) {
    std::vector<T> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(entry());
    return Matrix<T>(n, n, std::move(e));
  }

  /// Invertible gauge over F_p(x): a product of elementary and unit-diagonal
  /// factors with polynomial entries.
  RFMatrix<Fp> fp_gauge(std::uint64_t p, std::size_t n) {
    const Fp::Context ctx{p};
    using RF = RationalFunction<Fp>;
    RFMatrix<Fp> g = RFMatrix<Fp>::identity(n, RF::zero(ctx), RF::one(ctx));
    for (int step = 0; step < 3; ++step) {
      RFMatrix<Fp> e = RFMatrix<Fp>::identity(n, RF::zero(ctx), RF::one(ctx));
      const std::size_t i = index(n), j = index(n);
      if (i == j) {
        Fp c = fp(p);
        while (c.is_zero()) c = fp(p);
        e(i, i) = RF::constant(c);
      } else {
        e(i, j) = RF(fp_poly(p, 2));
      }
      g = g * e;
    }
    return g;
  }

  /// Reduced word of length <= max_len over `generators` letters.
  Word word(std::size_t generators, std::size_t max_len) {
    std::vector<Letter> letters;
    const std::size_t len = index(max_len + 1);
    while (letters.size() < len) {
      Letter l{index(generators), coin() ? 1 : -1};
      if (!letters.empty() && letters.back().generator == l.generator && letters.back().exponent == -l.exponent) continue;
      letters.push_back(l);
    }
    return Word(std::move(letters));
  }

  /// Random SL2 matrix over `field`: a product of elementary matrices with
  /// small integral or field-generator entries.
  NFMatrix sl2(const std::shared_ptr<const NumberField>& field, int factors = 4) {
    const NumberFieldElement zero(field, BigRational(0)), one(field, BigRational(1));
    const NumberFieldElement t = NumberFieldElement::generator(field);
    NFMatrix m = nf_identity(field);
    for (int k = 0; k < factors; ++k) {
      NumberFieldElement c = NumberFieldElement(field, BigRational(integer(-2, 2)));
      if (coin()) c = c + NumberFieldElement(field, BigRational(integer(-1, 1))) * t;
      if (coin()) c = c * NumberFieldElement(field, rational(2));
      const NFMatrix e = coin() ? nf_matrix(field, {one, c, zero, one}) : nf_matrix(field, {one, zero, c, one});
      m = m * e;
    }
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace pcurv::testing
