#include "pcurv/arith/prime_field.hpp"

#include "pcurv/arith/errors.hpp"

namespace pcurv {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin bases for 64-bit inputs
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
    if (n == UINT64_MAX) break;
  }
  return out;
}

Fp::Fp(Context ctx, std::int64_t value) : p_(ctx.p) {
  if (p_ < 2) throw ArithmeticError("prime field with modulus < 2");
  const auto m = static_cast<std::int64_t>(p_ > static_cast<std::uint64_t>(INT64_MAX) ? 0 : p_);
  if (m == 0) throw ArithmeticError("modulus too large");
  std::int64_t r = value % m;
  if (r < 0) r += m;
  v_ = static_cast<std::uint64_t>(r);
}

Fp Fp::from_integer(const Context& ctx, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), ctx.p);
  return Fp(ctx, static_cast<std::int64_t>(r.get_ui()));
}

void Fp::check_same(const Fp& o) const {
  if (p_ != o.p_) throw ArithmeticError("mixed prime fields F_" + std::to_string(p_) + " and F_" + std::to_string(o.p_));
}

Fp& Fp::operator+=(const Fp& o) {
  check_same(o);
  v_ += o.v_;
  if (v_ >= p_) v_ -= p_;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  check_same(o);
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  check_same(o);
  v_ = mul_mod(v_, o.v_, p_);
  return *this;
}

Fp Fp::pow(std::uint64_t e) const { return Fp(p_, pow_mod(v_, e, p_), raw_tag{}); }

Fp Fp::inverse() const {
  if (v_ == 0) throw ArithmeticError("inverse of zero in F_" + std::to_string(p_));
  return pow(p_ - 2);
}

std::optional<Fp> reduce_mod(const BigRational& q, std::uint64_t p) {
  const Fp::Context ctx{p};
  Fp den = Fp::from_integer(ctx, q.denominator());
  if (den.is_zero()) return std::nullopt;
  return Fp::from_integer(ctx, q.numerator()) / den;
}

}  // namespace pcurv
