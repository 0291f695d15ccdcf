#include "pcurv/arith/complex_rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

ComplexRational round_dyadic(const ComplexRational& z, unsigned bits) {
  return {round_dyadic(z.re, bits), round_dyadic(z.im, bits)};
}

namespace {

using QPoly = Polynomial<BigRational>;
using cld = std::complex<long double>;

ComplexRational eval(const QPoly& f, const ComplexRational& z) {
  ComplexRational acc{0, 0};
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + ComplexRational{*it, 0};
  return acc;
}

// Aberth-Ehrlich iteration in long double; only used to seed the exact stage.
std::vector<cld> aberth_seeds(const QPoly& f) {
  const int n = f.degree();
  std::vector<long double> a;
  for (const auto& c : f.coefficients()) a.push_back(static_cast<long double>(c.to_double()));
  const long double lead = a.back();
  for (auto& x : a) x /= lead;
  long double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::pow(std::fabs(a[i]), 1.0L / (n - i)));
  bound = 2 * std::max(bound, 1e-3L);
  std::vector<cld> z(n);
  for (int k = 0; k < n; ++k) {
    const long double ang = 2 * M_PIl * k / n + 0.4L;
    z[k] = std::polar(bound * 0.5L, ang);
  }
  auto p = [&](cld x) {
    cld acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + a[i];
    return acc;
  };
  auto dp = [&](cld x) {
    cld acc = 0;
    for (int i = n; i >= 1; --i) acc = acc * x + a[i] * static_cast<long double>(i);
    return acc;
  };
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      const cld ratio = p(z[k]) / dp(z[k]);
      cld sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      const cld w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

BigRational to_rational(long double x, unsigned bits) {
  const long double scaled = std::ldexp(x, static_cast<int>(std::min(bits, 60u)));
  BigInt n;
  mpz_set_d(n.get_mpz_t(), static_cast<double>(std::nearbyint(scaled)));
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), std::min(bits, 60u));
  return BigRational(n, den);
}

// Current approximations: real roots first, then one representative (im > 0)
// per conjugate pair.
struct Layout {
  std::vector<BigRational> reals;
  std::vector<ComplexRational> upper;
};

ComplexRational newton(const QPoly& f, const QPoly& df, ComplexRational z, unsigned bits) {
  for (int step = 0; step < 4; ++step) {
    const ComplexRational d = eval(df, z);
    if (d.norm2().is_zero()) break;
    z = round_dyadic(z - eval(f, z) / d, bits);
  }
  return z;
}

std::vector<RootDisc> try_certify(const QPoly& f, const Layout& layout, unsigned bits) {
  std::vector<ComplexRational> z;
  std::vector<bool> real;
  for (const auto& r : layout.reals) {
    z.push_back({r, 0});
    real.push_back(true);
  }
  for (const auto& u : layout.upper) {
    z.push_back(u);
    z.push_back(u.conj());
    real.push_back(false);
    real.push_back(false);
  }
  const std::size_t n = z.size();
  const BigRational lead = f.leading();
  std::vector<BigRational> radius2(n);
  std::vector<BigRational> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexRational denom{lead, 0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom = denom * (z[i] - z[j]);
    }
    if (denom.norm2().is_zero()) return {};
    const ComplexRational w = eval(f, z[i]) / denom;
    radius[i] = BigRational(static_cast<long>(n)) * sqrt_upper(w.norm2(), bits + 8);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!real[i] && z[i].im.is_zero()) return {};
    for (std::size_t j = i + 1; j < n; ++j) {
      const BigRational s = radius[i] + radius[j];
      if ((z[i] - z[j]).norm2() <= s * s) return {};
    }
  }
  std::vector<RootDisc> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({z[i], radius[i], real[i]});
  return out;
}

Layout layout_from(const QPoly& f, std::vector<ComplexRational> z) {
  const std::size_t k = count_real_roots(f);
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return z[a].im.abs() < z[b].im.abs(); });
  Layout out;
  for (std::size_t i = 0; i < k && i < order.size(); ++i) out.reals.push_back(z[order[i]].re);
  std::vector<ComplexRational> rest;
  for (std::size_t i = k; i < order.size(); ++i) rest.push_back(z[order[i]]);
  // pair each upper-half approximation with its nearest lower-half partner
  std::vector<bool> used(rest.size(), false);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = rest.size();
    BigRational best_d;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (used[j]) continue;
      const BigRational d = (rest[j] - rest[i].conj()).norm2();
      if (best == rest.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    ComplexRational u = rest[i];
    if (best < rest.size()) {
      used[best] = true;
      const ComplexRational v = rest[best].conj();
      u = {(u.re + v.re) / 2, (u.im + v.im) / 2};
    }
    if (u.im.sign() < 0) u = u.conj();
    out.upper.push_back(u);
  }
  return out;
}

std::vector<RootDisc> certify_loop(const QPoly& f, Layout layout, unsigned bits, unsigned max_bits) {
  const QPoly df = f.derivative();
  for (;;) {
    for (auto& r : layout.reals) r = newton(f, df, {r, 0}, bits).re;
    for (auto& u : layout.upper) u = newton(f, df, u, bits);
    auto discs = try_certify(f, layout, bits);
    if (!discs.empty()) {
      std::vector<RootDisc> reals(discs.begin(), discs.begin() + static_cast<long>(layout.reals.size()));
      std::sort(reals.begin(), reals.end(), [](const RootDisc& a, const RootDisc& b) { return a.center.re < b.center.re; });
      std::vector<std::pair<RootDisc, RootDisc>> pairs;
      for (std::size_t i = layout.reals.size(); i + 1 < discs.size(); i += 2) pairs.push_back({discs[i], discs[i + 1]});
      std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.first.center.re != b.first.center.re) return a.first.center.re < b.first.center.re;
        return a.first.center.im < b.first.center.im;
      });
      for (const auto& [up, down] : pairs) {
        reals.push_back(up);
        reals.push_back(down);
      }
      return reals;
    }
    if (bits >= max_bits) throw ArithmeticError("root isolation undecided at precision cap");
    bits = std::min(max_bits, bits * 2);
  }
}

QPoly squarefree_check(const QPoly& f) {
  if (f.degree() < 1) throw PreconditionError("root isolation of a constant polynomial");
  if (poly_gcd(f, f.derivative()).degree() > 0) throw PreconditionError("root isolation needs a squarefree polynomial");
  return f;
}

}  // namespace

std::vector<RootDisc> isolate_roots(const QPoly& f, unsigned bits, unsigned max_bits) {
  squarefree_check(f);
  if (f.degree() == 1) {
    const BigRational root = -f.coefficient(0) / f.coefficient(1);
    return {RootDisc{{root, 0}, 0, true}};
  }
  std::vector<ComplexRational> z;
  for (const auto& s : aberth_seeds(f)) z.push_back({to_rational(s.real(), 60), to_rational(s.imag(), 60)});
  return certify_loop(f, layout_from(f, std::move(z)), std::max(bits, 64u), std::max(max_bits, 64u));
}

std::vector<RootDisc> refine_roots(const QPoly& f, const std::vector<RootDisc>& seeds, unsigned bits,
                                   unsigned max_bits) {
  if (f.degree() == 1) return seeds;
  std::vector<ComplexRational> z;
  for (const auto& d : seeds) z.push_back(d.center);
  return certify_loop(f, layout_from(f, std::move(z)), bits, std::max(bits, max_bits));
}

DiscValue evaluate_on_disc(const QPoly& g, const RootDisc& disc, unsigned bits) {
  const ComplexRational exact = eval(g, disc.center);
  const ComplexRational rounded = round_dyadic(exact, bits);
  // |g(z) - g(c)| <= G(R + r) - G(R) with G = sum |a_j| X^j and R >= |c|
  const BigRational big_r = disc.center.re.abs() + disc.center.im.abs();
  BigRational lo = 0, hi = 0;
  const auto& c = g.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    lo = lo * big_r + it->abs();
    hi = hi * (big_r + disc.radius) + it->abs();
  }
  const BigRational rounding = (exact.re - rounded.re).abs() + (exact.im - rounded.im).abs();
  return {rounded, hi - lo + rounding};
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    QPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<QPoly>& seq, const BigRational& x) {
  std::vector<int> signs;
  for (const auto& p : seq) signs.push_back(p(x).sign());
  return variations(signs);
}

}  // namespace

std::size_t count_real_roots(const QPoly& f, const BigRational& lo, const BigRational& hi) {
  if (f.degree() < 1 || hi < lo) return 0;
  const auto seq = sturm_sequence(f);
  // V(lo) - V(hi) counts roots in (lo, hi]
  const int n = variations_at(seq, lo) - variations_at(seq, hi);
  return static_cast<std::size_t>(n) + (f(lo).is_zero() ? 1 : 0);
}

std::size_t count_real_roots(const QPoly& f) {
  if (f.degree() < 1) return 0;
  const auto seq = sturm_sequence(f);
  std::vector<int> at_neg, at_pos;
  for (const auto& p : seq) {
    const int s = p.leading().sign();
    at_pos.push_back(s);
    at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return static_cast<std::size_t>(variations(at_neg) - variations(at_pos));
}

}  // namespace pcurv
