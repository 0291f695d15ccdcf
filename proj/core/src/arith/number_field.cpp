#include "pcurv/arith/number_field.hpp"

#include <algorithm>
#include <set>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/matrix.hpp"
#include "pcurv/arith/prime_field.hpp"

namespace pcurv {

QPoly rational_polynomial(std::span<const BigRational> ascending) {
  return QPoly({}, std::vector<BigRational>(ascending.begin(), ascending.end()));
}

// ---------------------------------------------------------------- fields

std::shared_ptr<const NumberField> NumberField::create(const QPoly& min_poly, std::string generator) {
  if (min_poly.degree() < 1) throw PreconditionError("number field needs a polynomial of degree >= 1");
  QPoly f = min_poly.monic();
  if (!is_irreducible(f)) throw PreconditionError("defining polynomial is reducible over Q: " + f.to_string());
  auto discs = isolate_roots(f, kDefaultBits, kDefaultMaxBits);
  return std::shared_ptr<const NumberField>(new NumberField(std::move(f), std::move(generator), std::move(discs)));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const std::shared_ptr<const NumberField> q = create(QPoly({}, {BigRational(0), BigRational(1)}), "t");
  return q;
}

std::vector<RootDisc> NumberField::embeddings_at(unsigned bits, unsigned max_bits) const {
  return refine_roots(min_poly_, embeddings_, bits, max_bits);
}

// -------------------------------------------------------------- elements

namespace {

std::vector<BigRational> reduce_coords(const NumberField& field, const QPoly& p) {
  const QPoly r = p.degree() >= static_cast<int>(field.degree()) ? p % field.min_poly() : p;
  std::vector<BigRational> out(field.degree(), BigRational(0));
  for (std::size_t i = 0; i < r.coefficients().size(); ++i) out[i] = r.coefficients()[i];
  return out;
}

}  // namespace

NumberFieldElement::NumberFieldElement(std::shared_ptr<const NumberField> field, std::vector<BigRational> coords)
    : field_(std::move(field)) {
  if (!field_) throw PreconditionError("number field element without a parent field");
  coords_ = reduce_coords(*field_, QPoly({}, std::move(coords)));
}

NumberFieldElement::NumberFieldElement(std::shared_ptr<const NumberField> field, const BigRational& value)
    : field_(std::move(field)) {
  if (!field_) {
    if (!value.is_zero()) throw PreconditionError("number field element without a parent field");
    return;
  }
  coords_.assign(field_->degree(), BigRational(0));
  coords_[0] = value;
}

NumberFieldElement NumberFieldElement::generator(const std::shared_ptr<const NumberField>& field) {
  return from_polynomial(field, QPoly::variable({}));
}

NumberFieldElement NumberFieldElement::from_polynomial(const std::shared_ptr<const NumberField>& field,
                                                       const QPoly& p) {
  NumberFieldElement e(field, BigRational(0));
  e.coords_ = reduce_coords(*field, p);
  return e;
}

QPoly NumberFieldElement::as_polynomial() const { return QPoly({}, coords_); }

bool NumberFieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigRational& c) { return c.is_zero(); });
}

bool NumberFieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) return false;
  }
  return true;
}

BigRational NumberFieldElement::rational_value() const {
  if (!is_rational()) throw ArithmeticError("number field element is not rational");
  return coords_.empty() ? BigRational(0) : coords_[0];
}

void NumberFieldElement::check_same(const NumberFieldElement& o) const {
  if (!(context() == o.context())) throw ArithmeticError("number field elements from different fields");
}

namespace {

// Default-constructed zeros adopt the other operand's field.
const std::shared_ptr<const NumberField>& pick_field(const NumberFieldElement& a, const NumberFieldElement& b) {
  return a.field() ? a.field() : b.field();
}

}  // namespace

NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (!a.field_) return b;
  if (!b.field_) return a;
  a.check_same(b);
  NumberFieldElement out = a;
  for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] += b.coords_[i];
  return out;
}

NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (!b.field_) return a;
  if (!a.field_) return -b;
  a.check_same(b);
  NumberFieldElement out = a;
  for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] -= b.coords_[i];
  return out;
}

NumberFieldElement operator-(const NumberFieldElement& a) {
  NumberFieldElement out = a;
  for (auto& c : out.coords_) c = -c;
  return out;
}

NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (!a.field_ || !b.field_) return NumberFieldElement(pick_field(a, b), BigRational(0));
  a.check_same(b);
  if (a.field_->degree() == 1) return NumberFieldElement(a.field_, a.coords_[0] * b.coords_[0]);
  return NumberFieldElement::from_polynomial(a.field_, a.as_polynomial() * b.as_polynomial());
}

NumberFieldElement operator*(const BigRational& c, const NumberFieldElement& a) {
  NumberFieldElement out = a;
  for (auto& x : out.coords_) x *= c;
  return out;
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
  if (!a.field_ || !b.field_) return a.is_zero() && b.is_zero();
  return a.context() == b.context() && a.coords_ == b.coords_;
}

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero in a number field");
  if (field_->degree() == 1) return NumberFieldElement(field_, coords_[0].inverse());
  auto [g, s, t] = extended_gcd(as_polynomial(), field_->min_poly());
  if (g.degree() != 0) throw ArithmeticError("element not invertible; defining polynomial is reducible");
  return from_polynomial(field_, s);
}

std::size_t NumberFieldElement::hash() const {
  if (is_zero()) return 0;
  std::size_t h = coords_.size();
  for (const auto& c : coords_) hash_combine(h, c.hash());
  return h;
}

std::string NumberFieldElement::to_string() const {
  if (!field_) return "0";
  const std::string name = field_->generator_name();
  return as_polynomial().to_string(std::span<const std::string>(&name, 1));
}

// ------------------------------------------------------ algebraic numbers

QPoly minimal_polynomial(const NumberFieldElement& e) {
  if (!e.field()) return QPoly({}, {BigRational(0), BigRational(1)});
  const std::size_t d = e.field()->degree();
  std::vector<NumberFieldElement> powers{NumberFieldElement::one(e.context())};
  for (std::size_t k = 1; k <= d; ++k) {
    powers.push_back(powers.back() * e);
    Matrix<BigRational> m(d, k + 1, BigRational(0));
    for (std::size_t j = 0; j <= k; ++j) {
      for (std::size_t i = 0; i < d; ++i) m(i, j) = powers[j].coordinates()[i];
    }
    auto kernel = nullspace(m, BigRational(0));
    if (kernel.empty()) continue;
    // first dependency: the kernel is one-dimensional with a nonzero top entry
    auto v = kernel.front();
    const BigRational top = v[k];
    for (auto& c : v) c /= top;
    return QPoly({}, std::move(v));
  }
  throw ArithmeticError("no linear dependency among powers; inconsistent field data");
}

bool is_algebraic_integer(const NumberFieldElement& e) {
  const QPoly m = minimal_polynomial(e);
  return std::all_of(m.coefficients().begin(), m.coefficients().end(),
                     [](const BigRational& c) { return c.is_integer(); });
}

namespace {

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::optional<unsigned> cyclotomic_order(const QPoly& f) {
  if (f.degree() < 1) return std::nullopt;
  const QPoly g = f.monic();
  const unsigned long d = static_cast<unsigned long>(g.degree());
  // phi(n) >= sqrt(n / 2), so phi(n) <= d forces n <= 2 d^2
  const unsigned long bound = 2 * d * d;
  const QPoly x = QPoly::variable({});
  const QPoly one = QPoly::one({}) % g;
  QPoly power = one;
  for (unsigned long n = 1; n <= bound; ++n) {
    power = (power * x) % g;
    if (euler_phi(n) > d) continue;
    if (power == one) return static_cast<unsigned>(n);
  }
  return std::nullopt;
}

std::optional<unsigned> is_root_of_unity(const NumberFieldElement& e) {
  if (e.is_zero()) throw PreconditionError("zero is not a root of unity");
  const QPoly m = minimal_polynomial(e);
  for (const auto& c : m.coefficients()) {
    if (!c.is_integer()) return std::nullopt;
  }
  if (m.coefficient(0).abs() != BigRational(1)) return std::nullopt;
  return cyclotomic_order(m);
}

std::vector<DiscValue> embedding_values(const NumberFieldElement& e, const BigRational& tolerance,
                                        unsigned max_bits) {
  if (tolerance.sign() <= 0) throw PreconditionError("tolerance must be positive");
  const auto& field = *e.field();
  const QPoly g = e.as_polynomial();
  std::vector<RootDisc> discs = field.embeddings();
  unsigned bits = NumberField::kDefaultBits;
  for (;;) {
    std::vector<DiscValue> out;
    bool ok = true;
    for (const auto& d : discs) {
      out.push_back(evaluate_on_disc(g, d, bits + 16));
      if (out.back().error * 2 > tolerance) ok = false;
    }
    if (ok || bits >= max_bits) return out;
    bits = std::min(max_bits, bits * 2);
    discs = field.embeddings_at(bits, max_bits);
  }
}

EmbeddingIntervals embedding_absolute_values(const NumberFieldElement& e, const BigRational& tolerance,
                                             unsigned max_bits) {
  if (tolerance.sign() <= 0) throw PreconditionError("tolerance must be positive");
  const auto& field = *e.field();
  const QPoly g = e.as_polynomial();
  std::vector<RootDisc> discs = field.embeddings();
  unsigned bits = NumberField::kDefaultBits;
  for (;;) {
    EmbeddingIntervals out;
    for (const auto& d : discs) {
      const DiscValue v = evaluate_on_disc(g, d, bits + 16);
      const BigRational n2 = v.center.norm2();
      BigRational lo = sqrt_lower(n2, bits + 16) - v.error;
      if (lo.sign() < 0) lo = 0;
      const BigRational hi = sqrt_upper(n2, bits + 16) + v.error;
      if (hi - lo > tolerance) out.decided = false;
      out.intervals.push_back({lo, hi});
    }
    if (out.decided || bits >= max_bits) return out;
    bits = std::min(max_bits, bits * 2);
    discs = field.embeddings_at(bits, max_bits);
  }
}

// ------------------------------------------------------- irreducibility

namespace {

using FpPoly = Polynomial<Fp>;

BigInt lcm_of_denominators(const QPoly& f) {
  BigInt l = 1;
  for (const auto& c : f.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  return l;
}

// D^n f(x / D) for monic f: a monic integer polynomial with the same splitting behaviour.
QPoly integral_model(const QPoly& f) {
  const BigInt d = lcm_of_denominators(f);
  const int n = f.degree();
  std::vector<BigRational> c(f.coefficients());
  BigInt scale = 1;
  for (int i = n; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] *= BigRational(scale);
    scale *= d;
  }
  return QPoly({}, std::move(c));
}

std::optional<FpPoly> reduce_poly(const QPoly& f, std::uint64_t p) {
  std::vector<Fp> c;
  for (const auto& x : f.coefficients()) {
    auto r = reduce_mod(x, p);
    if (!r) return std::nullopt;
    c.push_back(*r);
  }
  FpPoly out(Fp::Context{p}, std::move(c));
  if (out.degree() != f.degree()) return std::nullopt;
  return out;
}

// Degrees of the irreducible factors of a squarefree polynomial over F_p.
std::vector<int> factor_degrees(FpPoly g, std::uint64_t p) {
  std::vector<int> degrees;
  const auto ctx = g.context();
  const FpPoly x = FpPoly::variable(ctx);
  FpPoly h = x;
  for (int i = 1; 2 * i <= g.degree(); ++i) {
    h = pow_mod(h, BigInt(static_cast<unsigned long>(p)), g);
    const FpPoly gi = poly_gcd(g, h - x);
    if (gi.degree() > 0) {
      for (int k = 0; k < gi.degree() / i; ++k) degrees.push_back(i);
      g = exact_div(g, gi);
      h = h % g;
    }
  }
  if (g.degree() > 0) degrees.push_back(g.degree());
  return degrees;
}

std::set<int> subset_sums(const std::vector<int>& degrees) {
  std::set<int> sums{0};
  for (int d : degrees) {
    std::set<int> next = sums;
    for (int s : sums) next.insert(s + d);
    sums = std::move(next);
  }
  return sums;
}

struct Disc {
  ComplexRational c;
  BigRational r;
};

Disc disc_mul(const Disc& a, const Disc& b, unsigned bits) {
  const BigRational abs_a = sqrt_upper(a.c.norm2(), bits);
  const BigRational abs_b = sqrt_upper(b.c.norm2(), bits);
  return {a.c * b.c, abs_a * b.r + abs_b * a.r + a.r * b.r};
}

enum class Recombination { irreducible, reducible, undecided };

// Every rational factor is the product of (x - root) over a subset of roots;
// check each subset's enclosed coefficients for an integer candidate.
Recombination recombine(const QPoly& g, const std::set<int>& allowed, unsigned bits) {
  const auto roots = isolate_roots(g, bits, bits);
  const std::size_t n = roots.size();
  bool undecided = false;
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    const int k = __builtin_popcountl(mask);
    if (2 * k > static_cast<int>(n) || !allowed.count(k)) continue;
    std::vector<Disc> coeffs{{{1, 0}, 0}};
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1)) continue;
      const Disc neg_root{{-roots[i].center.re, -roots[i].center.im}, roots[i].radius};
      std::vector<Disc> next(coeffs.size() + 1, Disc{{0, 0}, 0});
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1].c = next[j + 1].c + coeffs[j].c;
        next[j + 1].r = next[j + 1].r + coeffs[j].r;
        const Disc t = disc_mul(coeffs[j], neg_root, bits);
        next[j].c = next[j].c + t.c;
        next[j].r = next[j].r + t.r;
      }
      coeffs = std::move(next);
    }
    std::vector<BigRational> candidate;
    bool possible = true, ambiguous = false;
    for (const auto& d : coeffs) {
      if (d.c.im.abs() > d.r) {
        possible = false;
        break;
      }
      const BigInt lo = (d.c.re - d.r).ceil();
      const BigInt hi = (d.c.re + d.r).floor();
      if (lo > hi) {
        possible = false;
        break;
      }
      if (lo != hi) ambiguous = true;
      candidate.push_back(BigRational(lo));
    }
    if (!possible) continue;
    if (ambiguous) {
      undecided = true;
      continue;
    }
    const QPoly h({}, std::move(candidate));
    if ((g % h).is_zero()) return Recombination::reducible;
  }
  return undecided ? Recombination::undecided : Recombination::irreducible;
}

}  // namespace

bool is_irreducible(const QPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const QPoly g = integral_model(f.monic());
  const int n = g.degree();
  if (g.coefficient(0).is_zero()) return false;
  if (poly_gcd(g, g.derivative()).degree() > 0) return false;

  // rational roots of a monic integer polynomial are integer divisors of g(0)
  const BigInt c0 = abs(g.coefficient(0).numerator());
  if (c0 < BigInt(1000000000)) {
    const unsigned long v = c0.get_ui();
    for (unsigned long d = 1; d * d <= v; ++d) {
      if (v % d) continue;
      for (unsigned long root : {d, v / d}) {
        for (long s : {1L, -1L}) {
          if (g(BigRational(static_cast<long>(root) * s)).is_zero()) return false;
        }
      }
    }
  }

  std::set<int> allowed;
  for (int k = 1; k < n; ++k) allowed.insert(k);
  int used = 0;
  for (std::uint64_t p = 3; used < 24 && allowed.size() > 0; p += 2) {
    if (!is_prime(p)) continue;
    auto gp = reduce_poly(g, p);
    if (!gp || poly_gcd(*gp, gp->derivative()).degree() > 0) continue;
    ++used;
    const auto sums = subset_sums(factor_degrees(*gp, p));
    std::set<int> kept;
    for (int k : allowed) {
      if (sums.count(k)) kept.insert(k);
    }
    allowed = std::move(kept);
  }
  if (allowed.empty()) return true;
  if (n > 8) throw ArithmeticError("irreducibility undecided for degree " + std::to_string(n));
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    const auto verdict = recombine(g, allowed, bits);
    if (verdict == Recombination::reducible) return false;
    if (verdict == Recombination::irreducible) return true;
  }
  throw ArithmeticError("irreducibility undecided at precision cap");
}

// ------------------------------------------------------------- compositum

namespace {

// Q[a, b] / (f(a), g(b)) with basis a^i b^j stored at index i * d2 + j.
struct Bivariate {
  QPoly f, g;
  std::size_t d1, d2;

  std::vector<BigRational> mul(const std::vector<BigRational>& x, const std::vector<BigRational>& y) const {
    // multiply as polynomials in a with coefficients in Q[b]/(g)
    std::vector<QPoly> xa(d1), ya(d1);
    for (std::size_t i = 0; i < d1; ++i) {
      xa[i] = QPoly({}, std::vector<BigRational>(x.begin() + static_cast<long>(i * d2),
                                                  x.begin() + static_cast<long>((i + 1) * d2)));
      ya[i] = QPoly({}, std::vector<BigRational>(y.begin() + static_cast<long>(i * d2),
                                                  y.begin() + static_cast<long>((i + 1) * d2)));
    }
    std::vector<QPoly> prod(2 * d1 - 1, QPoly());
    for (std::size_t i = 0; i < d1; ++i) {
      for (std::size_t j = 0; j < d1; ++j) prod[i + j] += (xa[i] * ya[j]) % g;
    }
    // reduce a^k for k >= d1 using a^d1 = -sum f_i a^i
    for (std::size_t k = prod.size(); k-- > d1;) {
      const QPoly top = prod[k];
      prod[k] = QPoly();
      for (std::size_t i = 0; i < d1; ++i) {
        prod[k - d1 + i] -= top.scaled(f.coefficient(i));
      }
    }
    std::vector<BigRational> out(d1 * d2, BigRational(0));
    for (std::size_t i = 0; i < d1; ++i) {
      const QPoly r = prod[i] % g;
      for (std::size_t j = 0; j < r.coefficients().size(); ++j) out[i * d2 + j] = r.coefficients()[j];
    }
    return out;
  }
};

}  // namespace

Compositum compositum(const QPoly& f_in, const QPoly& g_in, std::string generator) {
  const QPoly f = f_in.monic(), g = g_in.monic();
  if (!is_irreducible(f) || !is_irreducible(g)) throw PreconditionError("compositum needs irreducible inputs");
  const std::size_t d1 = static_cast<std::size_t>(f.degree()), d2 = static_cast<std::size_t>(g.degree());
  const std::size_t n = d1 * d2;
  const Bivariate alg{f, g, d1, d2};
  auto basis = [&](std::size_t i, std::size_t j) {
    std::vector<BigRational> v(n, BigRational(0));
    if (i < d1 && j < d2) v[i * d2 + j] = 1;
    return v;
  };
  const auto a = d1 > 1 ? basis(1, 0) : [&] { auto v = basis(0, 0); v[0] = -f.coefficient(0); return v; }();
  const auto b = d2 > 1 ? basis(0, 1) : [&] { auto v = basis(0, 0); v[0] = -g.coefficient(0); return v; }();
  for (long k : {1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, -7L}) {
    std::vector<BigRational> gamma(n);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = a[i] + BigRational(k) * b[i];
    std::vector<std::vector<BigRational>> powers{basis(0, 0)};
    for (std::size_t e = 1; e <= n; ++e) powers.push_back(alg.mul(powers.back(), gamma));
    Matrix<BigRational> m(n, n, BigRational(0));
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t i = 0; i < n; ++i) m(i, e) = powers[e][i];
    }
    if (rank(m) < n) continue;
    // gamma^n = sum c_e gamma^e gives the defining polynomial
    const auto c = solve_linear(m, std::span<const BigRational>(powers[n]), BigRational(0));
    std::vector<BigRational> h(n + 1);
    for (std::size_t e = 0; e < n; ++e) h[e] = -(*c)[e];
    h[n] = 1;
    const QPoly hp({}, h);
    if (!is_irreducible(hp)) throw PreconditionError("input fields are not linearly disjoint");
    auto field = NumberField::create(hp, generator);
    const auto ca = solve_linear(m, std::span<const BigRational>(a), BigRational(0));
    const auto cb = solve_linear(m, std::span<const BigRational>(b), BigRational(0));
    return {field, NumberFieldElement(field, *ca), NumberFieldElement(field, *cb)};
  }
  throw ArithmeticError("no primitive element found in the search range");
}

NumberFieldElement apply_automorphism(const NumberFieldElement& e, const NumberFieldElement& image) {
  if (!(e.context() == image.context())) throw ArithmeticError("automorphism image from a different field");
  const QPoly& f = e.field()->min_poly();
  const auto one = NumberFieldElement::one(image.context());
  if (!f.evaluate_in(image, one).is_zero()) {
    throw PreconditionError("image " + image.to_string() + " is not a root of the defining polynomial");
  }
  return e.as_polynomial().evaluate_in(image, one);
}

}  // namespace pcurv
