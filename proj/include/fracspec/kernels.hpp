#pragma once

// Stable recurrences for the left/right Riemann-Liouville fractional
// integrals of Jacobi polynomials, evaluated column-by-column on an
// arbitrary point set. Column j of a table holds I^{alpha} P_j at the
// supplied points. Specialized fast paths exist for the Legendre (0,0)
// and Chebyshev (-1/2,-1/2) weights; the general path works for any
// admissible parameter pair and is what the operator assembly uses after
// parameter shifts.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jacobi.hpp"
#include "special_functions.hpp"

namespace fracspec {

namespace detail {

inline void check_kernel_args(double alpha, int jmax) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("kernel_table: integral order must be positive");
  if (jmax < 0)
    throw std::invalid_argument("kernel_table: jmax must be nonnegative");
}

// General Jacobi path. The three-term recurrence of the polynomials is
// pushed through the fractional integral; the derivative coupling term is
// eliminated with the inverse-derivative (hat) coefficients, which leaves
// a corrected three-term recurrence plus a boundary term proportional to
// t^alpha, where t is the distance to the integration endpoint.
inline Eigen::MatrixXd phat_table(const JacobiParams& p, double alpha,
                                  const Eigen::VectorXd& x, Side side,
                                  int jmax) {
  p.validate();
  check_kernel_args(alpha, jmax);
  const auto m = x.size();
  const double sgn = side == Side::left ? -1.0 : 1.0;
  Eigen::ArrayXd t(x.size());
  if (side == Side::left)
    t = 1.0 + x.array();
  else
    t = 1.0 - x.array();
  Eigen::ArrayXd t_al = t.pow(alpha);

  Eigen::MatrixXd K(m, jmax + 1);
  K.col(0) = t_al / gamma(alpha + 1.0);
  if (jmax >= 1) {
    K.col(1) = 0.5 * (p.a + p.b + 2.0) *
                   (x.array() * K.col(0).array() +
                    sgn * alpha * t.pow(alpha + 1.0) / gamma(alpha + 2.0)) +
               0.5 * (p.a - p.b) * K.col(0).array();
  }
  for (int j = 1; j < jmax; ++j) {
    const RecurrenceCoeffs c = recurrence_coeffs(p, j);
    const double den = 1.0 + alpha * c.A * c.Chat;
    const double corr =
        alpha * c.A *
        (c.Ahat * jacobi_endpoint(p, j - 1, side) +
         c.Bhat * jacobi_endpoint(p, j, side) +
         c.Chat * jacobi_endpoint(p, j + 1, side)) /
        (gamma(alpha + 1.0) * den);
    K.col(j + 1) =
        ((c.A * x.array() - c.B - alpha * c.A * c.Bhat) / den) *
            K.col(j).array() -
        ((c.C + alpha * c.A * c.Ahat) / den) * K.col(j - 1).array() +
        corr * t_al;
  }
  return K;
}

// Legendre fast path: the corrected recurrence collapses to a clean
// three-term form with no boundary term.
inline Eigen::MatrixXd legendre_table(double alpha, const Eigen::VectorXd& x,
                                      Side side, int jmax) {
  check_kernel_args(alpha, jmax);
  const auto m = x.size();
  const double sgn = side == Side::left ? -1.0 : 1.0;
  Eigen::ArrayXd t(x.size());
  if (side == Side::left)
    t = 1.0 + x.array();
  else
    t = 1.0 - x.array();

  Eigen::MatrixXd K(m, jmax + 1);
  K.col(0) = t.pow(alpha) / gamma(alpha + 1.0);
  if (jmax >= 1) {
    K.col(1) = x.array() * K.col(0).array() +
               sgn * alpha * t.pow(alpha + 1.0) / gamma(alpha + 2.0);
  }
  for (int j = 1; j < jmax; ++j) {
    K.col(j + 1) = ((2.0 * j + 1.0) * x.array() * K.col(j).array() -
                    (j - alpha) * K.col(j - 1).array()) /
                   (j + 1.0 + alpha);
  }
  return K;
}

// Chebyshev fast path, expressed for the T_j normalization. Three seed
// columns; from j >= 2 a three-term recurrence with a t^alpha boundary
// term whose sign alternates on the left and is constant on the right
// (the two are reflections of each other).
inline Eigen::MatrixXd chebyshev_t_table(double alpha, const Eigen::VectorXd& x,
                                         Side side, int jmax) {
  check_kernel_args(alpha, jmax);
  const auto m = x.size();
  const double sgn = side == Side::left ? -1.0 : 1.0;
  Eigen::ArrayXd t(x.size());
  if (side == Side::left)
    t = 1.0 + x.array();
  else
    t = 1.0 - x.array();
  Eigen::ArrayXd t_al = t.pow(alpha);

  Eigen::MatrixXd K(m, jmax + 1);
  K.col(0) = t_al / gamma(alpha + 1.0);
  if (jmax >= 1) {
    K.col(1) = x.array() * K.col(0).array() +
               sgn * alpha * t.pow(alpha + 1.0) / gamma(alpha + 2.0);
  }
  if (jmax >= 2) {
    K.col(2) = 4.0 * t.pow(alpha + 2.0) / gamma(alpha + 3.0) -
               4.0 * t.pow(alpha + 1.0) / gamma(alpha + 2.0) +
               t_al / gamma(alpha + 1.0);
  }
  for (int j = 2; j < jmax; ++j) {
    const double den = j + 1.0 + alpha;
    const double corr_mag = 2.0 * alpha / (gamma(alpha + 1.0) * den * (j - 1.0));
    const double corr =
        side == Side::left ? (j % 2 == 0 ? corr_mag : -corr_mag) : -corr_mag;
    K.col(j + 1) = (2.0 * (j + 1.0) / den) * x.array() * K.col(j).array() -
                   ((j + 1.0) * (j - 1.0 - alpha) / (den * (j - 1.0))) *
                       K.col(j - 1).array() +
                   corr * t_al;
  }
  return K;
}

// Ratio between the Jacobi (-1/2,-1/2) normalization and T_j; equals one
// at j = 0 and decays slowly, so it is formed in log space.
inline double chebyshev_to_jacobi_factor(int j) {
  return std::exp(log_gamma(j + 0.5) - log_gamma(j + 1.0)) /
         std::sqrt(std::numbers::pi);
}

}  // namespace detail

// Table of left or right fractional integrals I^{alpha} P_j^{(a,b)} at the
// given points, for j = 0..jmax. Dispatches to the specialized recurrences
// when the parameters match their weight exactly.
inline Eigen::MatrixXd kernel_table(const JacobiParams& p, double alpha,
                                    const Eigen::VectorXd& x, Side side,
                                    int jmax) {
  p.validate();
  if (p.a == 0.0 && p.b == 0.0)
    return detail::legendre_table(alpha, x, side, jmax);
  if (p.a == -0.5 && p.b == -0.5) {
    Eigen::MatrixXd K = detail::chebyshev_t_table(alpha, x, side, jmax);
    for (int j = 0; j <= jmax; ++j)
      K.col(j) *= detail::chebyshev_to_jacobi_factor(j);
    return K;
  }
  return detail::phat_table(p, alpha, x, side, jmax);
}

}  // namespace fracspec
