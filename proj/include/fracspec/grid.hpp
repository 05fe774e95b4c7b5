#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jacobi.hpp"

namespace fracspec {

enum class GridFamily { lobatto, gauss, radau };

// Affine bijection between the reference interval [-1, 1] and [x_a, x_b].
struct AffineMap {
  double x_a = -1.0;
  double x_b = 1.0;

  AffineMap() = default;
  AffineMap(double xa, double xb) : x_a(xa), x_b(xb) {
    if (!(x_b > x_a))
      throw std::invalid_argument("AffineMap: interval must satisfy x_a < x_b");
  }

  double scale() const { return 0.5 * (x_b - x_a); }
  double shift() const { return 0.5 * (x_a + x_b); }
  double to_physical(double xhat) const { return scale() * xhat + shift(); }
  double to_reference(double x) const { return (x - shift()) / scale(); }
};

// Collocation grid: N + 1 reference nodes with quadrature weights against
// (1 - x)^a (1 + x)^b, plus the map to the physical interval.
struct Grid {
  JacobiParams params;
  GridFamily family = GridFamily::lobatto;
  int N = 0;
  Eigen::VectorXd nodes;    // strictly increasing, in [-1, 1]
  Eigen::VectorXd weights;  // strictly positive
  AffineMap map;

  Eigen::VectorXd physical_nodes() const {
    Eigen::VectorXd out(nodes.size());
    for (Eigen::Index i = 0; i < nodes.size(); ++i)
      out[i] = map.to_physical(nodes[i]);
    return out;
  }
};

// Roots of P_n^{a,b}, ascending. Newton iteration with suppression of the
// roots already found; Chebyshev-angle seeds averaged with the previous root.
inline Eigen::VectorXd jacobi_roots(const JacobiParams& p, int n) {
  p.validate();
  if (n < 0) throw std::invalid_argument("jacobi_roots: degree must be nonnegative");
  Eigen::VectorXd roots(n);
  for (int k = 0; k < n; ++k) {
    double r = -std::cos(std::numbers::pi * (2 * k + 1) / (2.0 * n));
    if (k > 0) r = 0.5 * (r + roots[k - 1]);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double suppress = 0.0;
      for (int i = 0; i < k; ++i) suppress += 1.0 / (r - roots[i]);
      const double v = jacobi_eval(p, n, r);
      const double dv = jacobi_derivative_eval(p, n, r);
      const double delta = -v / (dv - v * suppress);
      r += delta;
      if (std::abs(delta) < 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error(
          "jacobi_roots: Newton iteration failed to converge at degree n=" +
          std::to_string(n));
    roots[k] = r;
  }
  return roots;
}

namespace detail {

// Interpolatory weights on a given node set: the unique solution of the
// discrete-orthogonality system requiring quadrature of P_k to match its
// exact weighted integral (gamma_0 for k = 0, zero otherwise) for every k
// below the node count. Quadrature exactness is verified in the tests.
inline Eigen::VectorXd interpolatory_weights(const JacobiParams& p,
                                             const Eigen::VectorXd& nodes) {
  const int m = static_cast<int>(nodes.size());
  const Eigen::MatrixXd V = jacobi_vandermonde(p, m - 1, nodes);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs[0] = orthogonality_norm(p, 0);
  return V.partialPivLu().solve(rhs);
}

// Closed-form Gauss weights at the roots of the degree-n polynomial:
// w_q = G / ((1 - x_q^2) P_n'(x_q)^2).  Accurate to rounding for any n,
// unlike the linear-system route whose conditioning degrades slowly.
inline Eigen::VectorXd gauss_weights(const JacobiParams& p,
                                     const Eigen::VectorXd& nodes) {
  const int n = static_cast<int>(nodes.size());
  const double log_g = (p.a + p.b + 1.0) * std::log(2.0) +
                       log_gamma(n + p.a + 1.0) + log_gamma(n + p.b + 1.0) -
                       log_gamma(n + 1.0) - log_gamma(n + p.a + p.b + 1.0);
  const double g = std::exp(log_g);
  Eigen::VectorXd w(n);
  for (int q = 0; q < n; ++q) {
    const double d = jacobi_derivative_eval(p, n, nodes[q]);
    w[q] = g / ((1.0 - nodes[q] * nodes[q]) * d * d);
  }
  return w;
}

}  // namespace detail

inline Grid make_grid(const JacobiParams& p, int N,
                      GridFamily family = GridFamily::lobatto, double x_a = -1.0,
                      double x_b = 1.0) {
  p.validate();
  const int min_degree = family == GridFamily::lobatto ? 2 : 1;
  if (N < min_degree)
    throw std::invalid_argument("make_grid: degree too small for the grid family");
  Eigen::VectorXd nodes(N + 1);
  switch (family) {
    case GridFamily::lobatto:
      nodes[0] = -1.0;
      nodes[N] = 1.0;
      nodes.segment(1, N - 1) = jacobi_roots({p.a + 1.0, p.b + 1.0}, N - 1);
      break;
    case GridFamily::gauss:
      nodes = jacobi_roots(p, N + 1);
      break;
    case GridFamily::radau:
      nodes[0] = -1.0;
      nodes.segment(1, N) = jacobi_roots({p.a, p.b + 1.0}, N);
      break;
  }
  Grid g;
  g.params = p;
  g.family = family;
  g.N = N;
  g.nodes = nodes;
  g.weights = family == GridFamily::gauss ? detail::gauss_weights(p, nodes)
                                          : detail::interpolatory_weights(p, nodes);
  g.map = AffineMap(x_a, x_b);
  return g;
}

// Jacobi-Gauss-Lobatto grid, the default collocation grid everywhere.
inline Grid jgl_grid(const JacobiParams& p, int N, double x_a = -1.0,
                     double x_b = 1.0) {
  return make_grid(p, N, GridFamily::lobatto, x_a, x_b);
}

// Plain Gauss-Jacobi rule (no prescribed endpoints) with npts points.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

inline QuadratureRule gauss_jacobi_rule(const JacobiParams& p, int npts) {
  if (npts < 1)
    throw std::invalid_argument("gauss_jacobi_rule: need at least one point");
  QuadratureRule r;
  r.nodes = jacobi_roots(p, npts);
  r.weights = detail::gauss_weights(p, r.nodes);
  return r;
}

}  // namespace fracspec
