#include <catch2/catch_amalgamated.hpp>

#include <fracspec/kernels.hpp>
#include <fracspec/oracle.hpp>

#include <cmath>

using namespace fracspec;

namespace {

// reference value of the order-alpha integral of the basis polynomial,
// through the quadrature route (independent of the recurrence tables)
double integral_of_basis(const JacobiParams& p, double alpha, int j, Side side, double x) {
  auto f = [&p, j](double s) { return jacobi_eval(p, j, s); };
  return oracle::quad_fractional_integral(alpha, side, -1.0, 1.0, f, x, 96);
}

}  // namespace

TEST_CASE("kernel columns match the quadrature oracle", "[kernels]") {
  Eigen::VectorXd x(5);
  x << -1.0, -0.62, 0.0, 0.47, 1.0;

  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}, JacobiParams{-0.5, 0.5},
                 JacobiParams{0.3, -0.2}}) {
    for (double alpha : {0.3, 0.5, 1.2}) {
      for (auto side : {Side::left, Side::right}) {
        Eigen::MatrixXd K = kernel_table(p, alpha, x, side, 16);
        REQUIRE(K.rows() == 5);
        REQUIRE(K.cols() == 17);
        for (int j = 0; j <= 16; ++j) {
          for (int i = 0; i < 5; ++i) {
            INFO("a=" << p.a << " b=" << p.b << " alpha=" << alpha << " j=" << j << " i=" << i
                      << " side=" << (side == Side::left ? "L" : "R"));
            double ref = integral_of_basis(p, alpha, j, side, x(i));
            REQUIRE(std::abs(K(i, j) - ref) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("specialized recurrences agree with the general one", "[kernels]") {
  Eigen::VectorXd x(7);
  x << -1.0, -0.9, -0.33, 0.08, 0.5, 0.91, 1.0;

  for (double alpha : {0.25, 0.5, 0.85}) {
    for (auto side : {Side::left, Side::right}) {
      // Legendre specialization
      {
        JacobiParams p{0.0, 0.0};
        Eigen::MatrixXd fast = kernel_table(p, alpha, x, side, 20);
        Eigen::MatrixXd general = detail::phat_table(p, alpha, x, side, 20);
        REQUIRE((fast - general).cwiseAbs().maxCoeff() < 1e-12);
      }
      // Chebyshev specialization
      {
        JacobiParams p{-0.5, -0.5};
        Eigen::MatrixXd fast = kernel_table(p, alpha, x, side, 20);
        Eigen::MatrixXd general = detail::phat_table(p, alpha, x, side, 20);
        REQUIRE((fast - general).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("integral of the basis vanishes at the operative endpoint", "[kernels]") {
  Eigen::VectorXd x(3);
  x << -1.0, 0.2, 1.0;
  JacobiParams p{-0.5, 0.5};
  Eigen::MatrixXd left = kernel_table(p, 0.7, x, Side::left, 10);
  Eigen::MatrixXd right = kernel_table(p, 0.7, x, Side::right, 10);
  for (int j = 0; j <= 10; ++j) {
    REQUIRE(left(0, j) == 0.0);   // x = -1: zero-length integration range
    REQUIRE(right(2, j) == 0.0);  // x = +1
  }
}

TEST_CASE("tables stay finite and accurate at degree 64", "[kernels]") {
  Eigen::VectorXd x(5);
  x << -1.0, -0.71, 0.04, 0.66, 1.0;

  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}, JacobiParams{0.3, -0.2}}) {
    for (double alpha : {0.5, 1.5}) {
      Eigen::MatrixXd K = kernel_table(p, alpha, x, Side::left, 64);
      REQUIRE(K.allFinite());
      // spot-check the top columns against the quadrature oracle
      for (int j : {60, 62, 64}) {
        for (int i = 0; i < 5; ++i) {
          INFO("a=" << p.a << " b=" << p.b << " alpha=" << alpha << " j=" << j << " i=" << i);
          double ref = integral_of_basis(p, alpha, j, Side::left, x(i));
          REQUIRE(std::abs(K(i, j) - ref) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("argument validation", "[kernels]") {
  Eigen::VectorXd x(2);
  x << -0.5, 0.5;
  REQUIRE_THROWS_AS(kernel_table({0.0, 0.0}, -0.1, x, Side::left, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(kernel_table({0.0, 0.0}, 0.5, x, Side::left, -1), std::invalid_argument);
}
