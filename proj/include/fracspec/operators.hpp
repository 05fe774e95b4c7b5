#pragma once

// Dense collocation matrices: each maps nodal samples of a function to
// nodal samples of an operator applied to the interpolant through those
// nodes. Assembly runs on the reference interval [-1, 1]; the affine map
// to the physical interval enters only as a power of its scale factor.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "kernels.hpp"
#include "operator_spec.hpp"
#include "special_functions.hpp"

namespace fracspec {

// Nodal values -> expansion coefficients, by discrete orthogonality. On
// Lobatto grids the quadrature is exact only through degree 2N - 1, so the
// highest mode needs its discrete norm instead of the continuous one.
inline Eigen::MatrixXd modal_projection(const Grid& g) {
  const Eigen::MatrixXd V = jacobi_vandermonde(g.params, g.N, g.nodes);
  Eigen::MatrixXd M(g.N + 1, g.N + 1);
  for (int k = 0; k <= g.N; ++k) {
    double norm = orthogonality_norm(g.params, k);
    if (g.family == GridFamily::lobatto && k == g.N)
      norm *= 2.0 + (g.params.a + g.params.b + 1.0) / g.N;
    M.row(k) =
        V.row(k).array() * g.weights.transpose().array() / norm;
  }
  return M;
}

namespace detail {

// d^m/dx^m collocation matrix on the reference interval.
inline Eigen::MatrixXd classical_ref(const Grid& g, int m) {
  if (m < 0) throw std::invalid_argument("classical_ref: negative order");
  const int N = g.N;
  if (m == 0) return Eigen::MatrixXd::Identity(N + 1, N + 1);
  Eigen::MatrixXd hat = Eigen::MatrixXd::Zero(N + 1, N + 1);
  if (m <= N) {
    const Eigen::MatrixXd W = jacobi_vandermonde(
        {g.params.a + m, g.params.b + m}, N - m, g.nodes);
    for (int j = m; j <= N; ++j)
      hat.col(j) =
          jacobi_derivative_factor(g.params, j, m) * W.row(j - m).transpose();
  }
  return hat * modal_projection(g);
}

// Caputo matrix on the reference interval. Differentiating the expansion
// m = ceil(alpha) times lands on shifted-parameter Jacobi polynomials; the
// remaining fractional integral of order m - alpha comes from the kernel
// tables. Integer orders collapse to the classical matrix.
inline Eigen::MatrixXd caputo_ref(const Grid& g, double alpha, Side side) {
  const int N = g.N;
  const int n = ceil_order(alpha);
  if (is_integer_order(alpha)) {
    Eigen::MatrixXd D = classical_ref(g, n);
    if (side == Side::right && n % 2 == 1) D = -D;
    return D;
  }
  Eigen::MatrixXd hat = Eigen::MatrixXd::Zero(N + 1, N + 1);
  if (n <= N) {
    const Eigen::MatrixXd K = kernel_table(
        {g.params.a + n, g.params.b + n}, n - alpha, g.nodes, side, N - n);
    for (int j = n; j <= N; ++j)
      hat.col(j) = jacobi_derivative_factor(g.params, j, n) * K.col(j - n);
  }
  if (side == Side::right && n % 2 == 1) hat = -hat;
  return hat * modal_projection(g);
}

// Fractional integral matrix on the reference interval.
inline Eigen::MatrixXd integral_ref(const Grid& g, double alpha, Side side) {
  const Eigen::MatrixXd K =
      kernel_table(g.params, alpha, g.nodes, side, g.N);
  return K * modal_projection(g);
}

// Riemann-Liouville matrix on the reference interval: the Caputo matrix
// plus endpoint-Taylor corrections. At the expansion endpoint itself the
// corrections diverge, so that row is set to NaN.
inline Eigen::MatrixXd rl_ref(const Grid& g, double alpha, Side side) {
  const int N = g.N;
  const int n = ceil_order(alpha);
  if (is_integer_order(alpha)) return caputo_ref(g, alpha, side);
  Eigen::MatrixXd D = caputo_ref(g, alpha, side);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXd C = classical_ref(g, k);
    const double gk = gamma(k + 1.0 - alpha);
    if (side == Side::left) {
      for (int i = 1; i <= N; ++i)
        D.row(i) +=
            std::pow(1.0 + g.nodes[i], k - alpha) / gk * C.row(0);
    } else {
      const double sign = k % 2 == 1 ? -1.0 : 1.0;
      for (int i = 0; i < N; ++i)
        D.row(i) +=
            sign * std::pow(1.0 - g.nodes[i], k - alpha) / gk * C.row(N);
    }
  }
  if (side == Side::left)
    D.row(0).setConstant(nan);
  else
    D.row(N).setConstant(nan);
  return D;
}

}  // namespace detail

// Collocation matrix of the requested operator on the grid's physical
// interval. Rows listed by undefined_rows(spec, N) are NaN.
inline Eigen::MatrixXd operator_matrix(const Grid& g, const OperatorSpec& spec) {
  validate_operator(spec);
  Eigen::MatrixXd D;
  double exponent = -spec.alpha;
  switch (spec.kind) {
    case OperatorKind::fractional_integral:
      D = detail::integral_ref(g, spec.alpha, spec.side);
      exponent = spec.alpha;
      break;
    case OperatorKind::caputo:
      D = detail::caputo_ref(g, spec.alpha, spec.side);
      break;
    case OperatorKind::riemann_liouville:
      D = detail::rl_ref(g, spec.alpha, spec.side);
      break;
    case OperatorKind::riesz:
      D = riesz_coefficient(spec.alpha) *
          (detail::rl_ref(g, spec.alpha, Side::left) +
           detail::rl_ref(g, spec.alpha, Side::right));
      break;
    case OperatorKind::riesz_caputo:
      D = riesz_coefficient(spec.alpha) *
          (detail::caputo_ref(g, spec.alpha, Side::left) +
           detail::caputo_ref(g, spec.alpha, Side::right));
      break;
    case OperatorKind::classical:
      D = detail::classical_ref(g, static_cast<int>(spec.alpha));
      break;
  }
  const double s = std::pow(g.map.scale(), exponent);
  return s * D;
}

// Convenience wrapper for the m-th classical derivative matrix.
inline Eigen::MatrixXd derivative_matrix(const Grid& g, int m) {
  return operator_matrix(
      g, {OperatorKind::classical, Side::left, static_cast<double>(m)});
}

}  // namespace fracspec
