#pragma once

// Collocation solvers built on the operator matrices: a fractional ODE of
// Bagley-Torvik type (initial-value and boundary-value forms) and a
// two-sided fractional diffusion equation advanced by the trapezoidal
// rule. Manufactured problems with known exact solutions accompany both.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "operator_spec.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "special_functions.hpp"

namespace fracspec {

enum class BtMode { ivp, bvp };

// u'' + b(x) D^alpha u + c(x) u = f on [x_a, x_b], D^alpha the left Caputo
// derivative, with either initial data u(x_a), u'(x_a) or boundary data
// u(x_a), u(x_b).
struct BagleyTorvikProblem {
  double alpha = 1.5;
  double x_a = 0.0;
  double x_b = 1.0;
  std::function<double(double)> b = [](double) { return 1.0; };
  std::function<double(double)> c = [](double) { return 1.0; };
  std::function<double(double)> f = [](double) { return 0.0; };
  BtMode mode = BtMode::ivp;
  double u_a = 0.0;   // u(x_a), both modes
  double up_a = 0.0;  // u'(x_a), ivp only
  double u_b = 0.0;   // u(x_b), bvp only
};

struct BtSolution {
  Grid grid;
  Eigen::VectorXd values;  // nodal, boundary entries included
};

namespace detail {

inline Eigen::PartialPivLU<Eigen::MatrixXd> checked_lu(
    const Eigen::MatrixXd& A, const char* what) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rc = lu.rcond();
  if (!(rc >= 1e-14))
    throw std::runtime_error(std::string(what) +
                             ": collocation system is numerically singular "
                             "(rcond=" +
                             std::to_string(rc) + ")");
  return lu;
}

}  // namespace detail

inline BtSolution solve_bagley_torvik(const BagleyTorvikProblem& prob,
                                      const JacobiParams& p, int N) {
  if (!(prob.alpha > 1.0 && prob.alpha < 2.0))
    throw std::invalid_argument("solve_bagley_torvik: alpha must lie in (1,2)");
  if (N < 4)
    throw std::invalid_argument("solve_bagley_torvik: need N >= 4");

  const Grid g = jgl_grid(p, N, prob.x_a, prob.x_b);
  const Eigen::VectorXd xs = g.physical_nodes();
  const Eigen::MatrixXd D2 = derivative_matrix(g, 2);
  const Eigen::MatrixXd Da =
      operator_matrix(g, {OperatorKind::caputo, Side::left, prob.alpha});

  Eigen::MatrixXd A(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    A.row(i) = D2.row(i) + prob.b(xs[i]) * Da.row(i);
    A(i, i) += prob.c(xs[i]);
  }

  Eigen::VectorXd values(N + 1);
  if (prob.mode == BtMode::ivp) {
    // Collocate at the interior nodes; the final equation imposes u'(x_a)
    // through the first row of the first-derivative matrix. The known
    // u(x_a) column moves to the right-hand side.
    Eigen::MatrixXd S(N, N + 1);
    Eigen::VectorXd rhs(N);
    S.topRows(N - 1) = A.middleRows(1, N - 1);
    for (int i = 1; i < N; ++i) rhs[i - 1] = prob.f(xs[i]);
    S.row(N - 1) = derivative_matrix(g, 1).row(0);
    rhs[N - 1] = prob.up_a;
    rhs -= S.col(0) * prob.u_a;
    const Eigen::MatrixXd M = S.rightCols(N);
    values[0] = prob.u_a;
    values.tail(N) = detail::checked_lu(M, "solve_bagley_torvik").solve(rhs);
  } else {
    Eigen::VectorXd rhs(N - 1);
    for (int i = 1; i < N; ++i)
      rhs[i - 1] = prob.f(xs[i]) - A(i, 0) * prob.u_a - A(i, N) * prob.u_b;
    const Eigen::MatrixXd M = A.block(1, 1, N - 1, N - 1);
    values[0] = prob.u_a;
    values[N] = prob.u_b;
    values.segment(1, N - 1) =
        detail::checked_lu(M, "solve_bagley_torvik").solve(rhs);
  }
  BtSolution sol;
  sol.grid = g;
  sol.values = values;
  return sol;
}

// Manufactured problem with exact solution u(x) = sin(w x) on [0, 1] and
// unit coefficients; the forcing's fractional term comes from the series
// reference evaluator.
struct ManufacturedBt {
  BagleyTorvikProblem problem;
  std::function<double(double)> exact;
};

inline ManufacturedBt manufactured_bagley_torvik(double alpha, double w,
                                                 BtMode mode) {
  ManufacturedBt m;
  m.problem.alpha = alpha;
  m.problem.mode = mode;
  m.problem.f = [alpha, w](double x) {
    const double caputo_term = oracle::sine(
        {OperatorKind::caputo, Side::left, alpha}, w, 0.0, 1.0, x);
    return -w * w * std::sin(w * x) + caputo_term + std::sin(w * x);
  };
  m.problem.u_a = 0.0;
  m.problem.up_a = w;
  m.problem.u_b = std::sin(w);
  m.exact = [w](double x) { return std::sin(w * x); };
  return m;
}

inline double nodal_max_error(const Grid& g, const Eigen::VectorXd& values,
                              const std::function<double(double)>& exact) {
  const Eigen::VectorXd xs = g.physical_nodes();
  double err = 0.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    err = std::max(err, std::abs(values[i] - exact(xs[i])));
  return err;
}

// du/dt = c_+(x) D_L^alpha u + c_-(x) D_R^alpha u + f(x,t) on [x_a, x_b],
// with left/right Riemann-Liouville derivatives, Dirichlet boundary data
// and an initial profile.
struct DiffusionProblem {
  double alpha = 1.5;
  double x_a = 0.0;
  double x_b = 1.0;
  std::function<double(double)> c_plus = [](double) { return 1.0; };
  std::function<double(double)> c_minus = [](double) { return 1.0; };
  std::function<double(double, double)> f = [](double, double) { return 0.0; };
  std::function<double(double)> u0 = [](double) { return 0.0; };
  std::function<double(double)> phi_a = [](double) { return 0.0; };
  std::function<double(double)> phi_b = [](double) { return 0.0; };
};

// Quadrature used for the forcing term inside one trapezoidal step.
enum class ForcingQuadrature { midpoint, trapezoid };

struct DiffusionSolution {
  Grid grid;
  Eigen::VectorXd values;  // nodal values at t_final
  double t_final = 0.0;
  int steps = 0;
  std::vector<std::string> warnings;
};

inline DiffusionSolution solve_diffusion(
    const DiffusionProblem& prob, const JacobiParams& p, int N, double tau,
    double t_final, ForcingQuadrature fq = ForcingQuadrature::midpoint) {
  if (!(prob.alpha > 1.0 && prob.alpha < 2.0))
    throw std::invalid_argument("solve_diffusion: alpha must lie in (1,2)");
  if (!(tau > 0.0) || !(t_final > 0.0))
    throw std::invalid_argument("solve_diffusion: tau and t_final must be positive");
  if (N < 2) throw std::invalid_argument("solve_diffusion: need N >= 2");

  const Grid g = jgl_grid(p, N, prob.x_a, prob.x_b);
  const Eigen::VectorXd xs = g.physical_nodes();
  const Eigen::MatrixXd DL = operator_matrix(
      g, {OperatorKind::riemann_liouville, Side::left, prob.alpha});
  const Eigen::MatrixXd DR = operator_matrix(
      g, {OperatorKind::riemann_liouville, Side::right, prob.alpha});

  const int m = N - 1;  // interior unknowns
  Eigen::MatrixXd A_I(m, m);
  Eigen::MatrixXd A_B(m, 2);
  for (int i = 1; i < N; ++i) {
    const Eigen::RowVectorXd row =
        prob.c_plus(xs[i]) * DL.row(i) + prob.c_minus(xs[i]) * DR.row(i);
    A_I.row(i - 1) = row.segment(1, m);
    A_B(i - 1, 0) = row[0];
    A_B(i - 1, 1) = row[N];
  }

  DiffusionSolution sol;
  sol.grid = g;
  if (std::abs(prob.u0(prob.x_a) - prob.phi_a(0.0)) > 1e-12)
    sol.warnings.push_back(
        "initial profile and left boundary data disagree at t=0");
  if (std::abs(prob.u0(prob.x_b) - prob.phi_b(0.0)) > 1e-12)
    sol.warnings.push_back(
        "initial profile and right boundary data disagree at t=0");

  // Forcing plus boundary coupling at time t, on the interior nodes.
  const auto load = [&](double t) {
    Eigen::VectorXd v(m);
    for (int i = 1; i < N; ++i) v[i - 1] = prob.f(xs[i], t);
    v += A_B * Eigen::Vector2d(prob.phi_a(t), prob.phi_b(t));
    return v;
  };

  Eigen::VectorXd u(m);
  for (int i = 1; i < N; ++i) u[i - 1] = prob.u0(xs[i]);

  // Uniform steps of size tau; a shorter final step covers any remainder.
  const double span = t_final;
  long full = std::lround(span / tau);
  double last = 0.0;
  if (full < 1 || std::abs(full * tau - span) > 1e-12 * std::max(1.0, span)) {
    full = static_cast<long>(std::floor(span / tau));
    last = span - full * tau;
    if (last >= tau) {  // guard floating-point rounding of the quotient
      ++full;
      last = span - full * tau;
    }
    if (last < 0.0) {
      --full;
      last = span - full * tau;
    }
    if (full < 0) {
      full = 0;
      last = span;
    }
  }

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  const auto advance = [&](const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                           double t, double dt) {
    Eigen::VectorXd rhs = u + 0.5 * dt * (A_I * u);
    if (fq == ForcingQuadrature::midpoint)
      rhs += dt * load(t + 0.5 * dt);
    else
      rhs += 0.5 * dt * (load(t) + load(t + dt));
    u = lu.solve(rhs);
  };

  int steps = 0;
  if (full > 0) {
    const auto lu = detail::checked_lu(I - 0.5 * tau * A_I, "solve_diffusion");
    for (long k = 0; k < full; ++k, ++steps) advance(lu, k * tau, tau);
  }
  if (last > 0.0) {
    const auto lu = detail::checked_lu(I - 0.5 * last * A_I, "solve_diffusion");
    advance(lu, full * tau, last);
    ++steps;
  }

  sol.values.resize(N + 1);
  sol.values[0] = prob.phi_a(t_final);
  sol.values[N] = prob.phi_b(t_final);
  sol.values.segment(1, m) = u;
  sol.t_final = t_final;
  sol.steps = steps;
  return sol;
}

// Manufactured problem with exact solution u(x,t) = (t+1)^alpha x^2(1-x)^2
// on [0, 1] and the symmetric operator written as c_alpha (D_L + D_R).
// The quartic profile makes any grid with N >= 4 exact in space, which
// isolates the time-stepping error.
struct ManufacturedDiffusion {
  DiffusionProblem problem;
  std::function<double(double, double)> exact;
};

inline ManufacturedDiffusion manufactured_diffusion(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("manufactured_diffusion: alpha must lie in (1,2)");
  const double c_alpha = riesz_coefficient(alpha);
  // Left fractional derivative of x^2(1-x)^2 = x^2 - 2x^3 + x^4, termwise;
  // the right derivative is its mirror image in 1 - x.
  const auto one_sided = [alpha](double x) {
    return gamma(3.0) / gamma(3.0 - alpha) * std::pow(x, 2.0 - alpha) -
           2.0 * gamma(4.0) / gamma(4.0 - alpha) * std::pow(x, 3.0 - alpha) +
           gamma(5.0) / gamma(5.0 - alpha) * std::pow(x, 4.0 - alpha);
  };
  const auto profile = [](double x) {
    return x * x * (1.0 - x) * (1.0 - x);
  };

  ManufacturedDiffusion m;
  m.problem.alpha = alpha;
  m.problem.c_plus = [c_alpha](double) { return c_alpha; };
  m.problem.c_minus = [c_alpha](double) { return c_alpha; };
  m.problem.f = [alpha, c_alpha, one_sided, profile](double x, double t) {
    return alpha * std::pow(t + 1.0, alpha - 1.0) * profile(x) -
           std::pow(t + 1.0, alpha) * c_alpha *
               (one_sided(x) + one_sided(1.0 - x));
  };
  m.problem.u0 = profile;
  m.exact = [alpha, profile](double x, double t) {
    return std::pow(t + 1.0, alpha) * profile(x);
  };
  return m;
}

}  // namespace fracspec
