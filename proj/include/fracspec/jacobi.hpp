#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "special_functions.hpp"

namespace fracspec {

// Exponent pair (a, b) of the weight (1 - x)^a (1 + x)^b on [-1, 1].
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;

  void validate() const {
    if (!(a > -1.0) || !(b > -1.0))
      throw std::invalid_argument(
          "JacobiParams: weight exponents must satisfy a > -1 and b > -1");
  }
};

enum class Side { left, right };

// Coefficients of the three-term recurrence
//   P_{j+1}(x) = (A x - B) P_j(x) - C P_{j-1}(x)
// together with the antiderivative-relation coefficients Ahat, Bhat, Chat.
struct RecurrenceCoeffs {
  double A, B, C;
  double Ahat, Bhat, Chat;
};

inline RecurrenceCoeffs recurrence_coeffs(const JacobiParams& p, int j) {
  if (j < 1)
    throw std::invalid_argument("recurrence_coeffs: index must satisfy j >= 1");
  const double a = p.a, b = p.b;
  const double s = a + b;
  RecurrenceCoeffs c{};
  c.A = (2 * j + s + 1) * (2 * j + s + 2) / (2.0 * (j + 1) * (j + s + 1));
  c.B = (b * b - a * a) * (2 * j + s + 1) /
        (2.0 * (j + 1) * (j + s + 1) * (2 * j + s));
  c.C = (j + a) * (j + b) * (2 * j + s + 2) /
        ((j + 1) * (j + s + 1) * (2 * j + s));
  // Ahat multiplies the constant P_0 inside antiderivatives, so its value at
  // j = 1 is a free convention; zero keeps the expression finite at s = -1.
  c.Ahat = (j == 1) ? 0.0
                    : -2.0 * (j + a) * (j + b) /
                          ((j + s) * (2 * j + s) * (2 * j + s + 1));
  c.Bhat = 2.0 * (a - b) / ((2 * j + s) * (2 * j + s + 2));
  c.Chat = 2.0 * (j + s + 1) / ((2 * j + s + 1) * (2 * j + s + 2));
  return c;
}

// P_j^{a,b}(x) by forward recurrence.
inline double jacobi_eval(const JacobiParams& p, int j, double x) {
  p.validate();
  if (j < 0) throw std::invalid_argument("jacobi_eval: degree must be nonnegative");
  if (j == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (p.a + p.b + 2.0) * x + 0.5 * (p.a - p.b);
  for (int k = 1; k < j; ++k) {
    const RecurrenceCoeffs c = recurrence_coeffs(p, k);
    const double next = (c.A * x - c.B) * cur - c.C * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// All degrees 0..jmax at a single point.
inline Eigen::VectorXd jacobi_all(const JacobiParams& p, int jmax, double x) {
  p.validate();
  if (jmax < 0) throw std::invalid_argument("jacobi_all: degree must be nonnegative");
  Eigen::VectorXd out(jmax + 1);
  out[0] = 1.0;
  if (jmax >= 1) out[1] = 0.5 * (p.a + p.b + 2.0) * x + 0.5 * (p.a - p.b);
  for (int k = 1; k < jmax; ++k) {
    const RecurrenceCoeffs c = recurrence_coeffs(p, k);
    out[k + 1] = (c.A * x - c.B) * out[k] - c.C * out[k - 1];
  }
  return out;
}

// V(k, i) = P_k(x_i) for k = 0..jmax over a node set.
inline Eigen::MatrixXd jacobi_vandermonde(const JacobiParams& p, int jmax,
                                          const Eigen::VectorXd& xs) {
  p.validate();
  if (jmax < 0)
    throw std::invalid_argument("jacobi_vandermonde: degree must be nonnegative");
  Eigen::MatrixXd V(jmax + 1, xs.size());
  V.row(0).setOnes();
  if (jmax >= 1)
    V.row(1) =
        (0.5 * (p.a + p.b + 2.0) * xs.array() + 0.5 * (p.a - p.b)).matrix().transpose();
  for (int k = 1; k < jmax; ++k) {
    const RecurrenceCoeffs c = recurrence_coeffs(p, k);
    V.row(k + 1) = (c.A * xs.transpose().array() - c.B) * V.row(k).array() -
                   c.C * V.row(k - 1).array();
  }
  return V;
}

// P_j sampled at many points.
inline Eigen::VectorXd jacobi_samples(const JacobiParams& p, int j,
                                      const Eigen::VectorXd& xs) {
  return jacobi_vandermonde(p, j, xs).row(j).transpose();
}

// Endpoint values P_j(+1) and P_j(-1), evaluated through log-gamma ratios so
// that large degrees do not overflow.
inline double jacobi_endpoint(const JacobiParams& p, int j, Side side) {
  p.validate();
  if (j < 0)
    throw std::invalid_argument("jacobi_endpoint: degree must be nonnegative");
  if (side == Side::right)
    return std::exp(log_gamma(j + p.a + 1) - log_gamma(j + 1.0) - log_gamma(p.a + 1));
  const double mag =
      std::exp(log_gamma(j + p.b + 1) - log_gamma(j + 1.0) - log_gamma(p.b + 1));
  return (j % 2 == 0) ? mag : -mag;
}

// Constant d_{j,m} in d^m/dx^m P_j^{a,b} = d_{j,m} P_{j-m}^{a+m,b+m}.
inline double jacobi_derivative_factor(const JacobiParams& p, int j, int m) {
  p.validate();
  if (m < 0 || m > j)
    throw std::domain_error(
        "jacobi_derivative_factor: order must satisfy 0 <= m <= j");
  if (m == 0) return 1.0;
  const double s = p.a + p.b;
  return std::exp(log_gamma(j + m + s + 1) - log_gamma(j + s + 1) -
                  m * std::numbers::ln2);
}

// d/dx P_j^{a,b}(x).
inline double jacobi_derivative_eval(const JacobiParams& p, int j, double x) {
  if (j == 0) return 0.0;
  return jacobi_derivative_factor(p, j, 1) *
         jacobi_eval({p.a + 1.0, p.b + 1.0}, j - 1, x);
}

// Squared weighted L2 norm gamma_n of P_n^{a,b}. The n = 0 case is written
// with Gamma(a + b + 2) in the denominator so that a + b = -1 stays finite.
inline double orthogonality_norm(const JacobiParams& p, int n) {
  p.validate();
  if (n < 0)
    throw std::invalid_argument("orthogonality_norm: degree must be nonnegative");
  const double s = p.a + p.b;
  if (n == 0)
    return std::pow(2.0, s + 1) * gamma(p.a + 1) * gamma(p.b + 1) / gamma(s + 2);
  return std::pow(2.0, s + 1) *
         std::exp(log_gamma(n + p.a + 1) + log_gamma(n + p.b + 1) -
                  log_gamma(n + 1.0) - log_gamma(n + s + 1)) /
         (2 * n + s + 1);
}

}  // namespace fracspec
