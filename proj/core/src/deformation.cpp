#include "pcurv/deformation.hpp"

namespace pcurv {

bool block_p_curvature_check(const BlockExtension<BigRational>& ext, std::uint64_t p) {
  auto a = reduce_connection(ext.a, p);
  auto b = reduce_matrix(ext.b, p);
  if (!a || !b) throw BadPrimeError("self-extension does not reduce mod " + std::to_string(p));
  return block_p_curvature_check(build_self_extension(*a, *b), p);
}

namespace {

void check_shapes(const std::vector<QMatrix>& sigma, const std::vector<std::vector<QMatrix>>& tau, std::size_t m) {
  if (m == 0) throw PreconditionError("conjugation step needs m >= 1");
  if (sigma.empty() || sigma.size() != tau.size()) throw PreconditionError("sigma and tau generator counts differ");
  const std::size_t n = sigma[0].rows();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!sigma[i].is_square() || sigma[i].rows() != n) throw PreconditionError("sigma matrices must be square");
    if (tau[i].empty() || tau[i].size() > m + 1) throw PreconditionError("tau must have layers 0..m");
    for (const auto& layer : tau[i]) {
      if (layer.rows() != n || layer.cols() != n) throw PreconditionError("tau layer shape mismatch");
    }
  }
}

QMatrix layer_or_zero(const std::vector<QMatrix>& layers, std::size_t k, std::size_t n) {
  return k < layers.size() ? layers[k] : QMatrix(n, n, BigRational(0));
}

}  // namespace

std::optional<QMatrix> step_conjugate(const std::vector<QMatrix>& sigma,
                                      const std::vector<std::vector<QMatrix>>& tau, std::size_t m) {
  check_shapes(sigma, tau, m);
  const std::size_t n = sigma[0].rows();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!inverse(sigma[i])) throw PreconditionError("sigma generator " + std::to_string(i) + " is singular");
    if (!(tau[i][0] == sigma[i])) throw PreconditionError("tau differs from sigma at q^0");
    for (std::size_t k = 1; k < m; ++k) {
      if (!layer_or_zero(tau[i], k, n).is_zero()) {
        throw PreconditionError("tau differs from sigma at q^" + std::to_string(k));
      }
    }
  }
  // M sigma_i - sigma_i M = N_i; unknown M(a, b) sits at column a * n + b
  const std::size_t unknowns = n * n;
  QMatrix lhs(sigma.size() * n * n, unknowns, BigRational(0));
  std::vector<BigRational> rhs(sigma.size() * n * n, BigRational(0));
  for (std::size_t g = 0; g < sigma.size(); ++g) {
    const QMatrix& s = sigma[g];
    const QMatrix nmat = layer_or_zero(tau[g], m, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t row = g * n * n + i * n + j;
        for (std::size_t k = 0; k < n; ++k) {
          lhs(row, i * n + k) += s(k, j);
          lhs(row, k * n + j) -= s(i, k);
        }
        rhs[row] = nmat(i, j);
      }
    }
  }
  auto sol = solve_linear(lhs, std::span<const BigRational>(rhs), BigRational(0));
  if (!sol) return std::nullopt;
  QMatrix conj(n, n, std::move(*sol));
  if (!verify_step_conjugate(sigma, tau, m, conj)) return std::nullopt;
  return conj;
}

bool verify_step_conjugate(const std::vector<QMatrix>& sigma, const std::vector<std::vector<QMatrix>>& tau,
                           std::size_t m, const QMatrix& conj) {
  check_shapes(sigma, tau, m);
  const std::size_t n = sigma[0].rows();
  const std::size_t order = m + 1;
  const QMatrix zero(n, n, BigRational(0));
  const QMatrix id = QMatrix::identity(n, BigRational(0), BigRational(1));
  std::vector<QMatrix> g(order, zero);
  g[0] = id;
  g[m] = conj;
  const auto ginv = truncated_inverse_unipotent(conj, m, order, id, zero);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::vector<QMatrix> t(order, zero);
    for (std::size_t k = 0; k < tau[i].size(); ++k) t[k] = tau[i][k];
    const auto lhs = truncated_product(truncated_product(ginv, t, order, zero), g, order, zero);
    if (!(lhs[0] == sigma[i])) return false;
    for (std::size_t k = 1; k < order; ++k) {
      if (!lhs[k].is_zero()) return false;
    }
  }
  return true;
}

}  // namespace pcurv
