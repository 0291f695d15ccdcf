#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/matrix.hpp"
#include "pcurv/arith/prime_field.hpp"
#include "pcurv/arith/rational_function.hpp"
#include "pcurv/arith/reduction.hpp"

namespace pcurv {

template <Field K>
using RFMatrix = Matrix<RationalFunction<K>>;

/// The derivation u * d/dx on K(x).
template <Field K>
struct Derivation {
  RationalFunction<K> multiplier;
  std::string variable = "x";

  static Derivation d_dx(const typename K::Context& ctx) { return {RationalFunction<K>::one(ctx)}; }
  static Derivation x_d_dx(const typename K::Context& ctx) { return {RationalFunction<K>::variable(ctx)}; }

  const typename K::Context& context() const { return multiplier.context(); }

  std::string to_string() const {
    const std::string u = multiplier.to_string(std::span<const std::string>(&variable, 1));
    if (multiplier.is_one()) return "d/d" + variable;
    const bool simple = u.find_first_of("+- ") == std::string::npos;
    return (simple ? u : "(" + u + ")") + "*d/d" + variable;
  }
};

template <Field K>
RationalFunction<K> apply_derivation(const Derivation<K>& d, const RationalFunction<K>& f) {
  if (f.is_zero()) return f;
  return d.multiplier * f.derivative();
}

template <Field K>
RFMatrix<K> apply_derivation(const Derivation<K>& d, const RFMatrix<K>& m) {
  return m.map([&](const RationalFunction<K>& f) { return apply_derivation(d, f); });
}

template <Field K>
std::vector<RationalFunction<K>> apply_derivation(const Derivation<K>& d, const std::vector<RationalFunction<K>>& v) {
  std::vector<RationalFunction<K>> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(apply_derivation(d, f));
  return out;
}

/// (A, D) with nabla(D) v = A v + D(v).
template <Field K>
struct ConnectionMatrix {
  RFMatrix<K> matrix;
  Derivation<K> derivation;

  ConnectionMatrix() = default;
  ConnectionMatrix(RFMatrix<K> m, Derivation<K> d) : matrix(std::move(m)), derivation(std::move(d)) {
    if (!matrix.is_square() || matrix.rows() == 0) throw PreconditionError("connection matrix must be square");
  }

  std::size_t rank() const { return matrix.rows(); }
  const typename K::Context& context() const { return derivation.context(); }

  /// nabla applied to a vector of functions.
  std::vector<RationalFunction<K>> apply(const std::vector<RationalFunction<K>>& v) const {
    auto av = matrix.apply(v);
    const auto dv = apply_derivation(derivation, v);
    for (std::size_t i = 0; i < av.size(); ++i) av[i] = av[i] + dv[i];
    return av;
  }
};

/// Subdiagonal ones and last column (f_0, ..., f_{r-1}).
template <Field K>
struct CompanionConnection {
  std::vector<RationalFunction<K>> last_column;
  Derivation<K> derivation;

  std::size_t rank() const { return last_column.size(); }

  RFMatrix<K> matrix() const {
    const std::size_t r = last_column.size();
    if (r == 0) throw PreconditionError("companion connection of rank 0");
    const auto& ctx = derivation.context();
    RFMatrix<K> m(r, r, RationalFunction<K>::zero(ctx));
    for (std::size_t i = 0; i + 1 < r; ++i) m(i + 1, i) = RationalFunction<K>::one(ctx);
    for (std::size_t i = 0; i < r; ++i) m(i, r - 1) = last_column[i];
    return m;
  }
  ConnectionMatrix<K> connection() const { return {matrix(), derivation}; }
};

/// v with D^p = (v / u) D in characteristic p: v = D^(p-1)(u).
template <Field K>
RationalFunction<K> frobenius_twist_multiplier(const Derivation<K>& d, std::uint64_t p) {
  RationalFunction<K> v = d.multiplier;
  for (std::uint64_t i = 1; i < p && !v.is_zero(); ++i) v = apply_derivation(d, v);
  return v;
}

/// A_1 = A, A_{k+1} = D(A_k) + A A_k: the matrix of nabla(D)^k.
template <Field K>
RFMatrix<K> nabla_power_matrix(const ConnectionMatrix<K>& a, std::uint64_t k) {
  if (k == 0) throw PreconditionError("nabla power needs k >= 1");
  RFMatrix<K> acc = a.matrix;
  for (std::uint64_t j = 1; j < k; ++j) acc = apply_derivation(a.derivation, acc) + a.matrix * acc;
  return acc;
}

/// psi_p = A_p - (v/u) A for a connection over a field of characteristic p.
template <Field K>
RFMatrix<K> p_curvature_matrix(const ConnectionMatrix<K>& a, std::uint64_t p) {
  const auto ap = nabla_power_matrix(a, p);
  const auto v = frobenius_twist_multiplier(a.derivation, p);
  if (v.is_zero()) return ap;
  const auto ratio = v / a.derivation.multiplier;
  const auto twisted = a.matrix.map([&](const RationalFunction<K>& f) { return ratio * f; });
  return ap - twisted;
}

struct PCurvatureReport {
  std::uint64_t prime = 0;
  bool good_prime = false;
  std::optional<RFMatrix<Fp>> psi;
  bool vanishes = false;
};

using QConnection = ConnectionMatrix<BigRational>;
using FpConnection = ConnectionMatrix<Fp>;

/// Reduction of A and u mod p; empty at a bad prime (a denominator vanishes
/// mod p, or u reduces to zero).
std::optional<FpConnection> reduce_connection(const QConnection& a, std::uint64_t p);
std::optional<Derivation<Fp>> reduce_derivation(const Derivation<BigRational>& d, std::uint64_t p);

/// Throws BadPrimeError when u does not reduce mod p.
RationalFunction<Fp> frobenius_twist_multiplier(const Derivation<BigRational>& d, std::uint64_t p);

PCurvatureReport p_curvature(const QConnection& a, std::uint64_t p);
PCurvatureReport p_curvature(const FpConnection& a);

/// One report per prime in [p_min, p_max], in prime order; `jobs` workers.
std::vector<PCurvatureReport> scan_primes(const QConnection& a, std::uint64_t p_min, std::uint64_t p_max,
                                          unsigned jobs = 1);

/// G^-1 A G + G^-1 D(G). Throws PreconditionError when G is singular.
template <Field K>
ConnectionMatrix<K> gauge_transform(const ConnectionMatrix<K>& a, const RFMatrix<K>& g) {
  if (g.rows() != a.rank() || !g.is_square()) throw PreconditionError("gauge matrix shape mismatch");
  auto inv = inverse(g);
  if (!inv) throw PreconditionError("gauge matrix is singular");
  return {*inv * a.matrix * g + *inv * apply_derivation(a.derivation, g), a.derivation};
}

template <Field K>
struct CyclicVectorResult {
  std::vector<RationalFunction<K>> vector;
  RFMatrix<K> gauge;
  CompanionConnection<K> companion;
  /// 1-based position of the successful candidate in the search order.
  std::size_t attempts = 0;
};

/// Columns v, nabla v, ..., nabla^{r-1} v; empty when they are dependent.
template <Field K>
std::optional<CyclicVectorResult<K>> try_cyclic_vector(const ConnectionMatrix<K>& a,
                                                       const std::vector<RationalFunction<K>>& v) {
  const std::size_t r = a.rank();
  const auto& ctx = a.context();
  RFMatrix<K> g(r, r, RationalFunction<K>::zero(ctx));
  std::vector<RationalFunction<K>> col = v;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) g(i, j) = col[i];
    col = a.apply(col);
  }
  auto inv = inverse(g);
  if (!inv) return std::nullopt;
  CompanionConnection<K> c{inv->apply(col), a.derivation};
  return CyclicVectorResult<K>{v, std::move(g), std::move(c), 0};
}

/// Search order: standard basis; then vectors of monomials x^{k_i}, 0 <= k_i <= r,
/// by total degree then lexicographically; then random integer polynomials of
/// degree <= r and height <= 10 from a seeded generator.
template <Field K>
std::optional<CyclicVectorResult<K>> cyclic_vector(const ConnectionMatrix<K>& a, std::size_t max_attempts,
                                                   std::uint64_t seed = 0) {
  const std::size_t r = a.rank();
  const auto& ctx = a.context();
  using RF = RationalFunction<K>;
  std::size_t attempts = 0;
  auto attempt = [&](const std::vector<RF>& v) -> std::optional<CyclicVectorResult<K>> {
    ++attempts;
    auto res = try_cyclic_vector(a, v);
    if (res) res->attempts = attempts;
    return res;
  };
  for (std::size_t i = 0; i < r && attempts < max_attempts; ++i) {
    std::vector<RF> v(r, RF::zero(ctx));
    v[i] = RF::one(ctx);
    if (auto res = attempt(v)) return res;
  }
  const auto x = Polynomial<K>::variable(ctx);
  for (std::size_t total = 0; total <= r * r && attempts < max_attempts; ++total) {
    // exponent tuples with the given total, each entry in [0, r], lexicographic
    std::vector<std::size_t> k(r, 0);
    for (;;) {
      std::size_t sum = 0;
      for (auto e : k) sum += e;
      if (sum == total) {
        std::vector<RF> v;
        for (auto e : k) v.push_back(RF(x.pow(e)));
        if (auto res = attempt(v)) return res;
        if (attempts >= max_attempts) break;
      }
      std::size_t pos = r;
      while (pos > 0 && k[pos - 1] == r) k[--pos] = 0;
      if (pos == 0) break;
      ++k[pos - 1];
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-10, 10);
  while (attempts < max_attempts) {
    std::vector<RF> v;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<K> c;
      for (std::size_t e = 0; e <= r; ++e) c.push_back(K::from_integer(ctx, BigInt(coeff(rng))));
      v.push_back(RF(Polynomial<K>(ctx, std::move(c))));
    }
    if (auto res = attempt(v)) return res;
  }
  return std::nullopt;
}

}  // namespace pcurv
