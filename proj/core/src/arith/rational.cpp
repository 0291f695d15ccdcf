#include "pcurv/arith/rational.hpp"

#include <functional>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

std::size_t hash_bigint(const BigInt& n) {
  const mpz_srcptr z = n.get_mpz_t();
  std::size_t h = std::hash<int>{}(z->_mp_size);
  const int limbs = z->_mp_size < 0 ? -z->_mp_size : z->_mp_size;
  for (int i = 0; i < limbs; ++i) {
    h ^= std::hash<mp_limb_t>{}(z->_mp_d[i]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s, 10));
    return BigRational(BigInt(s.substr(0, slash), 10), BigInt(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw ArithmeticError("malformed rational literal '" + s + "'");
  }
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero");
  return BigRational(mpq_class(1 / value_));
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string BigRational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t BigRational::hash() const {
  std::size_t h = hash_bigint(value_.get_num());
  h ^= hash_bigint(value_.get_den()) * 0x100000001B3ULL;
  return h;
}

BigInt BigRational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt BigRational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

namespace {

BigInt scaled_floor(const BigRational& q, unsigned bits) {
  BigInt num = q.numerator();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 2 * bits);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q.denominator().get_mpz_t());
  return out;
}

BigRational over_power_of_two(const BigInt& n, unsigned bits) {
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return BigRational(n, den);
}

}  // namespace

BigRational sqrt_lower(const BigRational& q, unsigned bits) {
  if (q.sign() < 0) throw ArithmeticError("sqrt of negative rational");
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), scaled_floor(q, bits).get_mpz_t());
  return over_power_of_two(s, bits);
}

BigRational sqrt_upper(const BigRational& q, unsigned bits) {
  if (q.sign() < 0) throw ArithmeticError("sqrt of negative rational");
  // ceil(q * 4^bits) then ceil of its square root
  BigInt n = scaled_floor(q, bits) + 1;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (s * s < n) s += 1;
  return over_power_of_two(s, bits);
}

BigRational round_dyadic(const BigRational& q, unsigned bits) {
  BigInt num = q.numerator();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits + 1);
  BigInt twice;
  mpz_fdiv_q(twice.get_mpz_t(), num.get_mpz_t(), q.denominator().get_mpz_t());
  BigInt rounded;
  mpz_fdiv_q_2exp(rounded.get_mpz_t(), twice.get_mpz_t(), 1);
  if (mpz_odd_p(twice.get_mpz_t())) rounded += 1;
  return over_power_of_two(rounded, bits);
}

}  // namespace pcurv
