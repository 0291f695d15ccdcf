#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pcurv {

using BigInt = mpz_class;

std::size_t hash_bigint(const BigInt& n);

/// Exact rational number in lowest terms with positive denominator.
class BigRational {
 public:
  /// The rationals carry no runtime context; the tag exists for the generic
  /// polynomial and matrix code.
  struct Context {
    bool operator==(const Context&) const = default;
  };

  BigRational() = default;
  BigRational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Accepts "n" or "n/d" with optional leading sign.
  static BigRational parse(std::string_view text);

  static BigRational zero(const Context& = {}) { return BigRational(); }
  static BigRational one(const Context& = {}) { return BigRational(1); }
  static BigRational from_integer(const Context&, const BigInt& n) { return BigRational(n); }
  Context context() const { return {}; }

  const mpq_class& value() const { return value_; }
  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  BigRational inverse() const;
  BigRational abs() const { return BigRational(::abs(value_)); }
  double to_double() const { return value_.get_d(); }

  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.value_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "n" for integers, "n/d" otherwise. Round-trips through parse().
  std::string to_string() const;
  std::size_t hash() const;

  /// Largest integer not exceeding the value.
  BigInt floor() const;
  BigInt ceil() const;

 private:
  mpq_class value_;
};

/// Upper and lower rational bounds on sqrt(q) with 2^-bits granularity.
BigRational sqrt_upper(const BigRational& q, unsigned bits);
BigRational sqrt_lower(const BigRational& q, unsigned bits);

/// Nearest rational with denominator 2^bits.
BigRational round_dyadic(const BigRational& q, unsigned bits);

}  // namespace pcurv

template <>
struct std::hash<pcurv::BigRational> {
  std::size_t operator()(const pcurv::BigRational& q) const { return q.hash(); }
};
