#pragma once

#include <string>
#include <vector>

#include "pcurv/arith/polynomial.hpp"
#include "pcurv/arith/rational.hpp"

namespace pcurv {

/// Exact complex number with rational parts; used for certified root discs.
struct ComplexRational {
  BigRational re;
  BigRational im;

  BigRational norm2() const { return re * re + im * im; }
  ComplexRational conj() const { return {re, -im}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator*(const BigRational& c, const ComplexRational& z) { return {c * z.re, c * z.im}; }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    const BigRational d = b.norm2();
    const ComplexRational n = a * b.conj();
    return {n.re / d, n.im / d};
  }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

ComplexRational round_dyadic(const ComplexRational& z, unsigned bits);

/// Closed interval [lo, hi] with rational endpoints.
struct RationalInterval {
  BigRational lo;
  BigRational hi;

  BigRational width() const { return hi - lo; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  std::string to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }
};

/// Disc containing exactly one root of a squarefree polynomial.
struct RootDisc {
  ComplexRational center;
  BigRational radius;
  /// Center on the real axis and isolating, hence the root is real.
  bool real = false;
};

/// Certified isolation of all complex roots of a squarefree rational polynomial.
/// Seeds come from a long double Aberth iteration and are refined with exact
/// Newton steps at 2^-bits granularity; precision doubles until the inclusion
/// discs (radius deg * |f(z_i) / prod_{j != i}(z_i - z_j)|) are pairwise
/// disjoint. Throws ArithmeticError past max_bits.
std::vector<RootDisc> isolate_roots(const Polynomial<BigRational>& f, unsigned bits, unsigned max_bits);

/// Same, starting from existing discs at a higher working precision.
std::vector<RootDisc> refine_roots(const Polynomial<BigRational>& f, const std::vector<RootDisc>& seeds,
                                   unsigned bits, unsigned max_bits);

/// Value of g on a root disc: center value and a rational bound on the deviation
/// over the whole disc (Taylor expansion at the center).
struct DiscValue {
  ComplexRational center;
  BigRational error;
};
DiscValue evaluate_on_disc(const Polynomial<BigRational>& g, const RootDisc& disc, unsigned bits);

/// Number of distinct real roots of a squarefree polynomial in [lo, hi] (Sturm).
std::size_t count_real_roots(const Polynomial<BigRational>& f, const BigRational& lo, const BigRational& hi);
/// Number of distinct real roots of a squarefree polynomial.
std::size_t count_real_roots(const Polynomial<BigRational>& f);

}  // namespace pcurv
