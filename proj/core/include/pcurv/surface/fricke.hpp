#pragma once

#include <array>
#include <map>
#include <string>

#include "pcurv/arith/rational.hpp"
#include "pcurv/surface/word.hpp"

namespace pcurv {

/// Integer polynomial in X = tr a, Y = tr b, Z = tr ab.
class TracePolynomial {
 public:
  using Exponents = std::array<unsigned, 3>;

  TracePolynomial() = default;
  static TracePolynomial constant(long c);
  /// X, Y or Z for index 0, 1, 2.
  static TracePolynomial variable(unsigned index);

  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  friend TracePolynomial operator+(const TracePolynomial& a, const TracePolynomial& b);
  friend TracePolynomial operator-(const TracePolynomial& a, const TracePolynomial& b);
  friend TracePolynomial operator*(const TracePolynomial& a, const TracePolynomial& b);
  friend bool operator==(const TracePolynomial&, const TracePolynomial&) = default;

  /// Evaluation in any commutative ring where `one` is the unit and integers
  /// embed through multiplication of `one` by a BigRational.
  template <class T>
  T evaluate(const T& x, const T& y, const T& z, const T& one) const {
    T acc = BigRational(0) * one;
    for (const auto& [e, c] : terms_) {
      T term = BigRational(c) * one;
      for (unsigned k = 0; k < e[0]; ++k) term = term * x;
      for (unsigned k = 0; k < e[1]; ++k) term = term * y;
      for (unsigned k = 0; k < e[2]; ++k) term = term * z;
      acc = acc + term;
    }
    return acc;
  }

  /// Graded by total degree, e.g. "X^2 + Y^2 + Z^2 - X*Y*Z - 2".
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const BigInt& c);
  std::map<Exponents, BigInt> terms_;
};

/// tr rho(w) as a polynomial in tr rho(a), tr rho(b), tr rho(ab) for words in
/// the free group on generators 0 (a) and 1 (b). Throws PreconditionError for
/// other generators.
TracePolynomial fricke_polynomial(const Word& w);

}  // namespace pcurv
