#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/arith/rational.hpp"

namespace pcurv {

bool is_prime(std::uint64_t n);

/// Primes in the closed range [lo, hi], ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Element of the prime field F_p. The modulus travels with each value.
class Fp {
 public:
  struct Context {
    std::uint64_t p = 0;
    bool operator==(const Context&) const = default;
  };

  Fp() = default;
  Fp(Context ctx, std::int64_t value);

  static Fp zero(const Context& ctx) { return Fp(ctx, 0); }
  static Fp one(const Context& ctx) { return Fp(ctx, 1); }
  static Fp from_integer(const Context& ctx, const BigInt& n);
  Context context() const { return {p_}; }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp inverse() const;
  Fp pow(std::uint64_t e) const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(a.p_, a.v_ == 0 ? 0 : a.p_ - a.v_, raw_tag{}); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

  std::string to_string() const { return std::to_string(v_); }
  std::size_t hash() const { return std::hash<std::uint64_t>{}(v_ * 0x9E3779B97F4A7C15ULL ^ p_); }

 private:
  struct raw_tag {};
  Fp(std::uint64_t p, std::uint64_t v, raw_tag) : p_(p), v_(v) {}
  void check_same(const Fp& o) const;

  std::uint64_t p_ = 0;
  std::uint64_t v_ = 0;
};

/// Reduction of a rational number mod p; empty when p divides the denominator.
std::optional<Fp> reduce_mod(const BigRational& q, std::uint64_t p);

}  // namespace pcurv
