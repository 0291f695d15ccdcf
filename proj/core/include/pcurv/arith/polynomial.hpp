#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/field.hpp"

namespace pcurv {

/// Dense univariate polynomial over a field, coefficients in ascending order.
/// The highest stored coefficient is never zero; the zero polynomial stores
/// nothing and has degree -1.
template <Field K>
class Polynomial {
 public:
  using Coefficient = K;
  using Context = typename K::Context;

  Polynomial() = default;
  explicit Polynomial(Context ctx) : ctx_(std::move(ctx)) {}
  Polynomial(Context ctx, std::vector<K> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) check_context(c);
    trim();
  }

  static Polynomial constant(const K& c) { return Polynomial(c.context(), {c}); }
  static Polynomial monomial(const K& c, std::size_t degree) {
    std::vector<K> coeffs(degree + 1, K::zero(c.context()));
    coeffs[degree] = c;
    return Polynomial(c.context(), std::move(coeffs));
  }
  static Polynomial variable(const Context& ctx) { return monomial(K::one(ctx), 1); }
  static Polynomial zero(const Context& ctx) { return Polynomial(ctx); }
  static Polynomial one(const Context& ctx) { return constant(K::one(ctx)); }

  const Context& context() const { return ctx_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == K::one(ctx_); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == K::one(ctx_); }

  const std::vector<K>& coefficients() const { return coeffs_; }
  K coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : K::zero(ctx_); }
  const K& leading() const {
    if (coeffs_.empty()) throw ArithmeticError("leading coefficient of zero polynomial");
    return coeffs_.back();
  }
  /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  int lowest_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) return static_cast<int>(i);
    }
    return -1;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
  }

  Polynomial scaled(const K& c) const {
    if (c.is_zero()) return Polynomial(ctx_);
    Polynomial out = *this;
    for (auto& x : out.coeffs_) x = x * c;
    return out;
  }

  /// Multiplication by x^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return *this;
    Polynomial out(ctx_);
    out.coeffs_.assign(k, K::zero(ctx_));
    out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return out;
  }

  Polynomial derivative() const {
    Polynomial out(ctx_);
    if (coeffs_.size() <= 1) return out;
    out.coeffs_.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      out.coeffs_.push_back(coeffs_[i] * K::from_integer(ctx_, BigInt(static_cast<unsigned long>(i))));
    }
    out.trim();
    return out;
  }

  K operator()(const K& x) const {
    K acc = K::zero(ctx_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Evaluates in any ring that accepts left multiplication and addition of K.
  template <class R>
  R evaluate_in(const R& x, const R& one) const {
    R acc = one * K::zero(ctx_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + one * (*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    adopt_context(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K::zero(ctx_));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    adopt_context(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), K::zero(ctx_));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.is_zero() && b.is_zero() ? a.ctx_ : (a.is_zero() ? b.ctx_ : a.ctx_));
    if (a.is_zero() || b.is_zero()) return out;
    a.check_context_poly(b);
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, K::zero(a.ctx_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        out.coeffs_[i + j] = out.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
      }
    }
    out.trim();
    return out;
  }
  friend Polynomial operator*(const K& c, const Polynomial& p) { return p.scaled(c); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial pow(unsigned long e) const {
    Polynomial result = Polynomial::one(ctx_);
    Polynomial base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Composition this(inner).
  Polynomial compose(const Polynomial& inner) const {
    Polynomial acc(ctx_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  std::size_t hash() const {
    std::size_t h = coeffs_.size();
    for (const auto& c : coeffs_) hash_combine(h, c.hash());
    return h;
  }

  /// Human- and parser-readable rendering, e.g. "3*x^2 - x + 1/2".
  std::string to_string(std::span<const std::string> vars = {}) const {
    const std::string var = vars.empty() ? std::string("x") : vars.front();
    const auto inner = vars.empty() ? vars : vars.subspan(1);
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const K& c = coeffs_[k];
      if (c.is_zero()) continue;
      std::string text = format_element(c, inner);
      bool negative = false;
      if (is_simple_negative(text)) {
        negative = true;
        text = format_element(-c, inner);
      }
      const bool compound = needs_parens(text);
      std::string term;
      if (k == 0) {
        term = compound && !out.empty() ? "(" + text + ")" : text;
      } else {
        if (text != "1") term = (compound ? "(" + text + ")" : text) + "*";
        term += var;
        if (k > 1) term += "^" + std::to_string(k);
      }
      if (out.empty()) {
        out = negative ? "-" + term : term;
      } else {
        out += negative ? " - " : " + ";
        out += term;
      }
    }
    return out;
  }

 private:
  static bool is_simple_negative(const std::string& s) {
    return !s.empty() && s[0] == '-' && !needs_parens(s.substr(1));
  }
  // Only top-level sums need bracketing: products and quotients associate left.
  static bool needs_parens(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char ch = s[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && i > 0 && (ch == '+' || ch == '-' || ch == ' ')) return true;
    }
    return false;
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  void check_context(const K& c) const {
    if (!(c.context() == ctx_)) throw ArithmeticError("coefficient from a different field");
  }
  void check_context_poly(const Polynomial& o) const {
    if (!(o.ctx_ == ctx_)) throw ArithmeticError("polynomials over different coefficient fields");
  }
  void adopt_context(const Polynomial& o) {
    if (ctx_ == o.ctx_) return;
    if (is_zero() && ctx_ == Context{}) {
      ctx_ = o.ctx_;
      return;
    }
    if (o.is_zero() && o.ctx_ == Context{}) return;
    check_context_poly(o);
  }

  Context ctx_{};
  std::vector<K> coeffs_;
};

/// Quotient and remainder of Euclidean division; throws on a zero divisor.
template <Field K>
std::pair<Polynomial<K>, Polynomial<K>> divmod(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (!(a.context() == b.context())) throw ArithmeticError("polynomials over different coefficient fields");
  const auto& ctx = b.context();
  if (a.degree() < b.degree()) return {Polynomial<K>(ctx), a};
  std::vector<K> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const K lead_inv = b.leading().inverse();
  std::vector<K> quot(rem.size() - db, K::zero(ctx));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const K factor = rem[k] * lead_inv;
    quot[k - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - factor * bc[j];
  }
  rem.resize(db);
  return {Polynomial<K>(ctx, std::move(quot)), Polynomial<K>(ctx, std::move(rem))};
}

template <Field K>
Polynomial<K> operator%(const Polynomial<K>& a, const Polynomial<K>& b) {
  return divmod(a, b).second;
}

/// Exact quotient; throws when b does not divide a.
template <Field K>
Polynomial<K> exact_div(const Polynomial<K>& a, const Polynomial<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ArithmeticError("inexact polynomial division");
  return q;
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <Field K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
  if (!(a.context() == b.context()) && !a.is_zero() && !b.is_zero()) {
    throw ArithmeticError("gcd of polynomials over different coefficient fields");
  }
  while (!b.is_zero()) {
    Polynomial<K> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g monic.
template <Field K>
std::tuple<Polynomial<K>, Polynomial<K>, Polynomial<K>> extended_gcd(const Polynomial<K>& a,
                                                                     const Polynomial<K>& b) {
  const auto& ctx = a.is_zero() ? b.context() : a.context();
  Polynomial<K> r0 = a, r1 = b;
  Polynomial<K> s0 = Polynomial<K>::one(ctx), s1(ctx);
  Polynomial<K> t0(ctx), t1 = Polynomial<K>::one(ctx);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const K inv = r0.leading().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// base^e mod modulus by repeated squaring.
template <Field K>
Polynomial<K> pow_mod(Polynomial<K> base, BigInt e, const Polynomial<K>& modulus) {
  Polynomial<K> result = Polynomial<K>::one(modulus.context()) % modulus;
  base = base % modulus;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % modulus;
    e >>= 1;
    if (e > 0) base = (base * base) % modulus;
  }
  return result;
}

}  // namespace pcurv

template <pcurv::Field K>
struct std::hash<pcurv::Polynomial<K>> {
  std::size_t operator()(const pcurv::Polynomial<K>& p) const { return p.hash(); }
};
