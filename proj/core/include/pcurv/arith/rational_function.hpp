#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "pcurv/arith/polynomial.hpp"

namespace pcurv {

/// Element of K(x) kept in canonical form: monic denominator, coprime parts.
/// Itself a Field, so K(q)(x) is RationalFunction<RationalFunction<K>>.
template <Field K>
class RationalFunction {
 public:
  using Context = typename K::Context;
  using Poly = Polynomial<K>;

  RationalFunction() = default;
  explicit RationalFunction(const Context& ctx) : num_(ctx), den_(Poly::one(ctx)) {}
  explicit RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::one(num_.context())) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction zero(const Context& ctx) { return RationalFunction(ctx); }
  static RationalFunction one(const Context& ctx) { return RationalFunction(Poly::one(ctx)); }
  static RationalFunction from_integer(const Context& ctx, const BigInt& n) {
    return RationalFunction(Poly::constant(K::from_integer(ctx, n)));
  }
  static RationalFunction constant(const K& c) { return RationalFunction(Poly::constant(c)); }
  static RationalFunction variable(const Context& ctx) { return RationalFunction(Poly::variable(ctx)); }

  const Context& context() const { return num_.context(); }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// Value of a constant function; throws otherwise.
  K constant_value() const {
    if (!is_constant()) throw ArithmeticError("rational function is not constant");
    return num_.coefficient(0);
  }

  RationalFunction inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero rational function");
    return RationalFunction(den_, num_);
  }

  /// d/dx via the quotient rule.
  RationalFunction derivative() const {
    if (den_.is_one()) return RationalFunction(num_.derivative());
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  K operator()(const K& x) const { return num_(x) / den_(x); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction out = a;
    out.num_ = -out.num_;
    return out;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.is_zero() ? a.context() : b.context());
    if (a.den_.is_one() && b.den_.is_one()) return RationalFunction(a.num_ * b.num_);
    // cross-cancel first so the products stay small
    const Poly g1 = poly_gcd(a.num_, b.den_);
    const Poly g2 = poly_gcd(b.num_, a.den_);
    RationalFunction out;
    out.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    out.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    out.normalize_leading();
    return out;
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero rational function");
    return a * b.inverse();
  }
  friend RationalFunction operator*(const K& c, const RationalFunction& f) {
    RationalFunction out = f;
    out.num_ = out.num_.scaled(c);
    if (out.num_.is_zero()) out.den_ = Poly::one(f.context());
    return out;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::size_t hash() const {
    if (is_zero()) return 0;
    std::size_t h = num_.hash();
    hash_combine(h, den_.hash());
    return h;
  }

  std::string to_string(std::span<const std::string> vars = {}) const {
    if (den_.is_one()) return num_.to_string(vars);
    // the grammar is left-associative, so a*b/c needs no brackets but a/(b*c) does
    const std::string n = num_.to_string(vars), d = den_.to_string(vars);
    const bool wrap_n = n.find(' ') != std::string::npos;
    const bool wrap_d = d.find_first_of("*/ ") != std::string::npos;
    return (wrap_n ? "(" + n + ")" : n) + "/" + (wrap_d ? "(" + d + ")" : d);
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::one(den_.context());
      return;
    }
    const Poly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    normalize_leading();
  }
  void normalize_leading() {
    if (num_.is_zero()) {
      den_ = Poly::one(den_.context());
      return;
    }
    const K lead = den_.leading();
    if (!(lead == K::one(den_.context()))) {
      const K inv = lead.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly num_;
  Poly den_;
};

}  // namespace pcurv

template <pcurv::Field K>
struct std::hash<pcurv::RationalFunction<K>> {
  std::size_t operator()(const pcurv::RationalFunction<K>& f) const { return f.hash(); }
};
