#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/connection.hpp"

namespace pcurv {

/// The rank-2r connection [[A, B], [0, A]].
template <Field K>
struct BlockExtension {
  ConnectionMatrix<K> a;
  RFMatrix<K> b;
  ConnectionMatrix<K> m;

  std::size_t rank() const { return a.rank(); }
};

template <Field K>
BlockExtension<K> build_self_extension(const ConnectionMatrix<K>& a, const RFMatrix<K>& b) {
  const std::size_t r = a.rank();
  if (b.rows() != r || b.cols() != r) throw PreconditionError("self-extension blocks differ in shape");
  RFMatrix<K> m(2 * r, 2 * r, RationalFunction<K>::zero(a.context()));
  m.set_block(0, 0, a.matrix);
  m.set_block(0, r, b);
  m.set_block(r, r, a.matrix);
  return {a, b, ConnectionMatrix<K>(std::move(m), a.derivation)};
}

/// P_1 = A, Q_1 = B, P_j = A P_{j-1} + D(P_{j-1}), Q_j = A Q_{j-1} + B P_{j-1} + D(Q_{j-1}).
template <Field K>
std::pair<RFMatrix<K>, RFMatrix<K>> block_power_pair(const BlockExtension<K>& ext, std::uint64_t j) {
  if (j == 0) throw PreconditionError("block power needs j >= 1");
  const auto& d = ext.a.derivation;
  const auto& a = ext.a.matrix;
  RFMatrix<K> p = a, q = ext.b;
  for (std::uint64_t k = 1; k < j; ++k) {
    RFMatrix<K> next_q = a * q + ext.b * p + apply_derivation(d, q);
    p = a * p + apply_derivation(d, p);
    q = std::move(next_q);
  }
  return {std::move(p), std::move(q)};
}

template <Field K>
RFMatrix<K> assemble_blocks(const RFMatrix<K>& diag, const RFMatrix<K>& upper) {
  const std::size_t r = diag.rows();
  RFMatrix<K> out(2 * r, 2 * r, RationalFunction<K>::zero(diag(0, 0).context()));
  out.set_block(0, 0, diag);
  out.set_block(0, r, upper);
  out.set_block(r, r, diag);
  return out;
}

/// psi_p(M) from the connection module against
/// [[psi_p(A), Q_p - (v/u) B], [0, psi_p(A)]] from the block recursion.
template <Field K>
bool block_p_curvature_check(const BlockExtension<K>& ext, std::uint64_t p) {
  const auto direct = p_curvature_matrix(ext.m, p);
  const auto [pp, qp] = block_power_pair(ext, p);
  const auto v = frobenius_twist_multiplier(ext.a.derivation, p);
  const auto ratio = v / ext.a.derivation.multiplier;
  auto scale = [&](const RFMatrix<K>& x) { return x.map([&](const RationalFunction<K>& f) { return ratio * f; }); };
  return direct == assemble_blocks<K>(pp - scale(ext.a.matrix), qp - scale(ext.b));
}

/// Reduces a rational self-extension mod p first; throws BadPrimeError.
bool block_p_curvature_check(const BlockExtension<BigRational>& ext, std::uint64_t p);

template <Field K>
struct DeformationSolution {
  RFMatrix<K> y;
  RFMatrix<K> residual;
};

/// B + A Y - Y A + D(Y).
template <Field K>
RFMatrix<K> deformation_residual(const ConnectionMatrix<K>& a, const RFMatrix<K>& b, const RFMatrix<K>& y) {
  return b + a.matrix * y - y * a.matrix + apply_derivation(a.derivation, y);
}

namespace detail {

template <Field K>
Polynomial<K> poly_lcm(const Polynomial<K>& a, const Polynomial<K>& b) {
  return exact_div(a * b, poly_gcd(a, b)).monic();
}

/// Linear system for Y with polynomial entries of degree <= d in the
/// equation A Y - Y A + D(Y) = -B: columns index (i, j, k) for x^k E_ij.
template <Field K>
struct AnsatzSystem {
  Matrix<K> lhs;
  std::vector<K> rhs;
  std::size_t r = 0;
  std::size_t degree = 0;

  AnsatzSystem(const ConnectionMatrix<K>& a, const RFMatrix<K>& b, std::size_t d) : r(a.rank()), degree(d) {
    using RF = RationalFunction<K>;
    const auto& ctx = a.context();
    const std::size_t n = r * r * (d + 1);
    std::vector<RFMatrix<K>> images;
    images.reserve(n);
    const auto x = Polynomial<K>::variable(ctx);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k <= d; ++k) {
          RFMatrix<K> e(r, r, RF::zero(ctx));
          e(i, j) = RF(x.pow(k));
          images.push_back(a.matrix * e - e * a.matrix + apply_derivation(a.derivation, e));
        }
      }
    }
    Polynomial<K> den = Polynomial<K>::one(ctx);
    for (const auto& m : images) {
      for (const auto& f : m.elements()) den = poly_lcm(den, f.denominator());
    }
    for (const auto& f : b.elements()) den = poly_lcm(den, f.denominator());
    auto numerators = [&](const RFMatrix<K>& m) {
      std::vector<Polynomial<K>> out;
      for (const auto& f : m.elements()) out.push_back(f.numerator() * exact_div(den, f.denominator()));
      return out;
    };
    std::vector<std::vector<Polynomial<K>>> cols;
    std::size_t max_deg = 0;
    for (const auto& m : images) {
      cols.push_back(numerators(m));
      for (const auto& p : cols.back()) max_deg = std::max<std::size_t>(max_deg, p.degree() < 0 ? 0 : p.degree());
    }
    const auto target = numerators(b);
    for (const auto& p : target) max_deg = std::max<std::size_t>(max_deg, p.degree() < 0 ? 0 : p.degree());
    const std::size_t rows = r * r * (max_deg + 1);
    lhs = Matrix<K>(rows, n, K::zero(ctx));
    rhs.assign(rows, K::zero(ctx));
    for (std::size_t e = 0; e < r * r; ++e) {
      for (std::size_t c = 0; c <= max_deg; ++c) {
        const std::size_t row = e * (max_deg + 1) + c;
        for (std::size_t u = 0; u < n; ++u) lhs(row, u) = cols[u][e].coefficient(c);
        rhs[row] = -target[e].coefficient(c);
      }
    }
  }

  RFMatrix<K> assemble(const std::vector<K>& y, const typename K::Context& ctx) const {
    RFMatrix<K> out(r, r, RationalFunction<K>::zero(ctx));
    std::size_t u = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        std::vector<K> c(y.begin() + static_cast<long>(u), y.begin() + static_cast<long>(u + degree + 1));
        out(i, j) = RationalFunction<K>(Polynomial<K>(ctx, std::move(c)));
        u += degree + 1;
      }
    }
    return out;
  }
};

}  // namespace detail

/// Solves B + A Y - Y A + D(Y) = 0 with Y polynomial of degree <= d entrywise.
/// Free parameters are set to zero. Empty when no solution exists in the ansatz.
template <Field K>
std::optional<DeformationSolution<K>> solve_deformation(const ConnectionMatrix<K>& a, const RFMatrix<K>& b,
                                                        std::size_t d) {
  if (b.rows() != a.rank() || b.cols() != a.rank()) throw PreconditionError("deformation blocks differ in shape");
  const auto& ctx = a.context();
  const detail::AnsatzSystem<K> sys(a, b, d);
  auto sol = solve_linear(sys.lhs, std::span<const K>(sys.rhs), K::zero(ctx));
  if (!sol) return std::nullopt;
  auto y = sys.assemble(*sol, ctx);
  auto residual = deformation_residual(a, b, y);
  if (!residual.is_zero()) return std::nullopt;
  return DeformationSolution<K>{std::move(y), std::move(residual)};
}

/// Basis of {Y : A Y - Y A + D(Y) = 0} inside the same ansatz.
template <Field K>
std::vector<RFMatrix<K>> deformation_kernel(const ConnectionMatrix<K>& a, std::size_t d) {
  const auto& ctx = a.context();
  const RFMatrix<K> zero(a.rank(), a.rank(), RationalFunction<K>::zero(ctx));
  const detail::AnsatzSystem<K> sys(a, zero, d);
  std::vector<RFMatrix<K>> out;
  for (const auto& v : nullspace(sys.lhs, K::zero(ctx))) out.push_back(sys.assemble(v, ctx));
  return out;
}

/// Matrices with entries in R[q]/(q^order), stored as layers 0..order-1.
template <class T>
std::vector<Matrix<T>> truncated_product(const std::vector<Matrix<T>>& a, const std::vector<Matrix<T>>& b,
                                         std::size_t order, const Matrix<T>& zero) {
  std::vector<Matrix<T>> out(order, zero);
  for (std::size_t i = 0; i < a.size() && i < order; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < order; ++j) {
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

/// (I + q^k Y)^-1 truncated at q^order.
template <class T>
std::vector<Matrix<T>> truncated_inverse_unipotent(const Matrix<T>& y, std::size_t k, std::size_t order,
                                                   const Matrix<T>& identity, const Matrix<T>& zero) {
  std::vector<Matrix<T>> out(order, zero);
  out[0] = identity;
  Matrix<T> power = identity;
  for (std::size_t e = k; e < order && k > 0; e += k) {
    power = -(power * y);
    out[e] = power;
  }
  return out;
}

/// sum_{k < m} q^k A_k over K(x) with the derivation acting on x only.
template <Field K>
struct TruncatedFamily {
  std::vector<RFMatrix<K>> layers;
  Derivation<K> derivation;

  std::size_t order() const { return layers.size(); }
  std::size_t rank() const { return layers.empty() ? 0 : layers[0].rows(); }
  ConnectionMatrix<K> base() const { return {layers.at(0), derivation}; }
  bool constant() const {
    for (std::size_t k = 1; k < layers.size(); ++k) {
      if (!layers[k].is_zero()) return false;
    }
    return true;
  }
};

/// Gauge by G = I + q^k Y, truncated at the family's order.
template <Field K>
TruncatedFamily<K> gauge_family(const TruncatedFamily<K>& f, const RFMatrix<K>& y, std::size_t k) {
  const std::size_t m = f.order();
  const auto& ctx = f.derivation.context();
  const RFMatrix<K> zero(f.rank(), f.rank(), RationalFunction<K>::zero(ctx));
  const RFMatrix<K> id = RFMatrix<K>::identity(f.rank(), RationalFunction<K>::zero(ctx), RationalFunction<K>::one(ctx));
  std::vector<RFMatrix<K>> g(m, zero), dg(m, zero);
  g[0] = id;
  if (k < m) {
    g[k] = y;
    dg[k] = apply_derivation(f.derivation, y);
  }
  const auto ginv = truncated_inverse_unipotent(y, k, m, id, zero);
  auto conj = truncated_product(truncated_product(ginv, f.layers, m, zero), g, m, zero);
  const auto shift = truncated_product(ginv, dg, m, zero);
  for (std::size_t i = 0; i < m; ++i) conj[i] = conj[i] + shift[i];
  return {std::move(conj), f.derivation};
}

template <Field K>
struct NormalizationResult {
  /// (k, Y_k): gauge by I + q^k Y_k, applied in order.
  std::vector<std::pair<std::size_t, RFMatrix<K>>> gauges;
  TruncatedFamily<K> family;
  std::optional<std::size_t> obstructed_layer;
  std::optional<RFMatrix<K>> obstruction;
};

/// Kills layers 1..m-1 one at a time by solving the deformation equation
/// against the base layer; stops at the first layer with no ansatz solution.
template <Field K>
NormalizationResult<K> normalize_family(const TruncatedFamily<K>& f, std::size_t ansatz_degree) {
  if (f.order() == 0) throw PreconditionError("empty family");
  NormalizationResult<K> out{{}, f, std::nullopt, std::nullopt};
  const auto base = f.base();
  for (std::size_t k = 1; k < f.order(); ++k) {
    const auto& layer = out.family.layers[k];
    if (layer.is_zero()) continue;
    auto sol = solve_deformation(base, layer, ansatz_degree);
    if (!sol) {
      out.obstructed_layer = k;
      out.obstruction = layer;
      return out;
    }
    out.family = gauge_family(out.family, sol->y, k);
    out.gauges.emplace_back(k, std::move(sol->y));
  }
  return out;
}

using QMatrix = Matrix<BigRational>;

/// Finds M with (I + q^m M)^-1 tau_i (I + q^m M) = sigma_i mod q^(m+1) for all i.
/// tau_i is given by layers 0..m in q. Throws PreconditionError unless
/// tau_i = sigma_i mod q^m. Empty when the linearized system is inconsistent.
std::optional<QMatrix> step_conjugate(const std::vector<QMatrix>& sigma,
                                      const std::vector<std::vector<QMatrix>>& tau, std::size_t m);

/// Full nonlinear check of a step_conjugate answer modulo q^(m+1).
bool verify_step_conjugate(const std::vector<QMatrix>& sigma, const std::vector<std::vector<QMatrix>>& tau,
                           std::size_t m, const QMatrix& conj);

}  // namespace pcurv
