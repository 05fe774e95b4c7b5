#include <catch2/catch_amalgamated.hpp>

#include <fracspec/grid.hpp>
#include <fracspec/jacobi.hpp>
#include <fracspec/special_functions.hpp>

#include <cmath>

using namespace fracspec;

TEST_CASE("three-term recurrence coefficients for Legendre parameters", "[jacobi]") {
  JacobiParams p{0.0, 0.0};
  auto c1 = recurrence_coeffs(p, 1);
  REQUIRE(c1.A == Catch::Approx(1.5).epsilon(1e-15));
  REQUIRE(c1.B == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(c1.C == Catch::Approx(0.5).epsilon(1e-15));

  auto c2 = recurrence_coeffs(p, 2);
  REQUIRE(c2.A == Catch::Approx(5.0 / 3.0).epsilon(1e-15));
  REQUIRE(c2.B == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(c2.C == Catch::Approx(2.0 / 3.0).epsilon(1e-15));

  auto c3 = recurrence_coeffs(p, 3);
  REQUIRE(c3.Chat == Catch::Approx(1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("Legendre evaluations match closed forms", "[jacobi]") {
  JacobiParams p{0.0, 0.0};
  REQUIRE(jacobi_eval(p, 1, 0.3) == Catch::Approx(0.3).epsilon(1e-15));

  double x = 0.7;
  double l5 = (63.0 * std::pow(x, 5) - 70.0 * std::pow(x, 3) + 15.0 * x) / 8.0;
  REQUIRE(jacobi_eval(p, 5, x) == Catch::Approx(l5).epsilon(1e-14));
}

TEST_CASE("endpoint values", "[jacobi]") {
  JacobiParams legendre{0.0, 0.0};
  REQUIRE(jacobi_endpoint(legendre, 7, Side::right) == Catch::Approx(1.0).epsilon(1e-15));
  REQUIRE(jacobi_endpoint(legendre, 7, Side::left) == Catch::Approx(-1.0).epsilon(1e-15));

  JacobiParams p{0.5, 0.0};
  double expected = fracspec::gamma(3.5) / (2.0 * fracspec::gamma(1.5));
  REQUIRE(jacobi_endpoint(p, 2, Side::right) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("endpoint helper agrees with direct evaluation", "[jacobi]") {
  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}, JacobiParams{-0.5, 0.5},
                 JacobiParams{1.2, 0.3}}) {
    for (int j = 0; j <= 12; ++j) {
      REQUIRE(std::abs(jacobi_endpoint(p, j, Side::right) - jacobi_eval(p, j, 1.0)) < 1e-12);
      REQUIRE(std::abs(jacobi_endpoint(p, j, Side::left) - jacobi_eval(p, j, -1.0)) < 1e-12);
    }
  }
}

TEST_CASE("first derivative matches a finite difference", "[jacobi]") {
  const double h = 1e-6;
  const double x = 0.2;
  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}, JacobiParams{0.7, 0.1}}) {
    int j = 3;
    double fd = (jacobi_eval(p, j, x + h) - jacobi_eval(p, j, x - h)) / (2.0 * h);
    REQUIRE(std::abs(jacobi_derivative_eval(p, j, x) - fd) < 1e-6);
  }
}

TEST_CASE("derivative factor reproduces the m-th derivative", "[jacobi]") {
  // d^m/dx^m P_j^{(a,b)} = factor * P_{j-m}^{(a+m,b+m)}
  JacobiParams p{0.25, -0.4};
  int j = 6, m = 2;
  double x = -0.35;
  JacobiParams shifted{p.a + m, p.b + m};
  double via_factor = jacobi_derivative_factor(p, j, m) * jacobi_eval(shifted, j - m, x);

  // second difference of the first derivative as an independent route
  const double h = 1e-5;
  double fd = (jacobi_derivative_eval(p, j, x + h) - jacobi_derivative_eval(p, j, x - h)) / (2.0 * h);
  REQUIRE(via_factor == Catch::Approx(fd).epsilon(1e-7));
}

TEST_CASE("orthogonality norms match closed forms", "[jacobi]") {
  REQUIRE(orthogonality_norm({0.0, 0.0}, 0) == Catch::Approx(2.0).epsilon(1e-14));
  REQUIRE(orthogonality_norm({0.0, 0.0}, 3) == Catch::Approx(2.0 / 7.0).epsilon(1e-14));
  const double pi = 3.14159265358979323846;
  REQUIRE(orthogonality_norm({-0.5, -0.5}, 0) == Catch::Approx(pi).epsilon(1e-14));
}

TEST_CASE("three-term recurrence is consistent along the whole family", "[jacobi]") {
  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}, JacobiParams{0.8, -0.3}}) {
    for (double x : {-0.9, -0.25, 0.0, 0.6, 0.99}) {
      for (int j = 1; j <= 40; ++j) {
        auto c = recurrence_coeffs(p, j);
        double lhs = jacobi_eval(p, j + 1, x);
        double rhs = (c.A * x - c.B) * jacobi_eval(p, j, x) - c.C * jacobi_eval(p, j - 1, x);
        REQUIRE(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("discrete orthogonality under the matching Gauss rule", "[jacobi]") {
  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, 0.5}}) {
    QuadratureRule rule = gauss_jacobi_rule(p, 25);  // exact through degree 49
    for (int m = 0; m <= 20; ++m) {
      for (int n = m; n <= 20; ++n) {
        double s = 0.0;
        for (int q = 0; q < rule.nodes.size(); ++q) {
          s += rule.weights(q) * jacobi_eval(p, m, rule.nodes(q)) * jacobi_eval(p, n, rule.nodes(q));
        }
        double expected = (m == n) ? orthogonality_norm(p, n) : 0.0;
        REQUIRE(std::abs(s - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("parameter-symmetric reflection", "[jacobi]") {
  // P_j^{(a,b)}(-x) = (-1)^j P_j^{(b,a)}(x)
  JacobiParams p{0.4, -0.2};
  JacobiParams q{-0.2, 0.4};
  for (int j = 0; j <= 15; ++j) {
    for (double x : {-0.8, -0.1, 0.33, 0.95}) {
      double lhs = jacobi_eval(p, j, -x);
      double rhs = ((j % 2 == 0) ? 1.0 : -1.0) * jacobi_eval(q, j, x);
      REQUIRE(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("Chebyshev parameters give scaled cosine polynomials", "[jacobi]") {
  JacobiParams p{-0.5, -0.5};
  const double sqrt_pi = 1.7724538509055160;
  for (int j = 0; j <= 12; ++j) {
    double scale = fracspec::gamma(j + 0.5) / (sqrt_pi * fracspec::gamma(j + 1.0));
    for (double x : {-0.7, 0.0, 0.45, 0.9}) {
      double cheb = std::cos(j * std::acos(x));
      REQUIRE(std::abs(jacobi_eval(p, j, x) - scale * cheb) < 1e-12);
    }
  }
}

TEST_CASE("batch evaluation agrees with single evaluation", "[jacobi]") {
  JacobiParams p{-0.5, 0.5};
  double x = 0.37;
  Eigen::VectorXd all = jacobi_all(p, 30, x);
  REQUIRE(all.size() == 31);
  for (int j = 0; j <= 30; ++j) {
    REQUIRE(all(j) == Catch::Approx(jacobi_eval(p, j, x)).epsilon(1e-14));
  }

  Eigen::VectorXd xs(3);
  xs << -0.5, 0.1, 0.8;
  Eigen::MatrixXd V = jacobi_vandermonde(p, 4, xs);
  REQUIRE(V.rows() == 5);
  REQUIRE(V.cols() == 3);
  for (int j = 0; j <= 4; ++j) {
    for (int i = 0; i < 3; ++i) {
      REQUIRE(V(j, i) == Catch::Approx(jacobi_eval(p, j, xs(i))).epsilon(1e-14));
    }
  }
}

TEST_CASE("evaluation stays finite at high degree", "[jacobi]") {
  for (auto p : {JacobiParams{0.0, 0.0}, JacobiParams{-0.5, -0.5}}) {
    for (double x : {-1.0, -0.3, 0.5, 1.0}) {
      double v = jacobi_eval(p, 256, x);
      REQUIRE(std::isfinite(v));
      REQUIRE(std::abs(v) <= 2.0);  // |P_j| is bounded by its endpoint value here
    }
  }
}

TEST_CASE("parameter validation rejects indices at or below -1", "[jacobi]") {
  REQUIRE_THROWS_AS((JacobiParams{-1.0, 0.0}.validate()), std::invalid_argument);
  REQUIRE_THROWS_AS((JacobiParams{0.0, -1.5}.validate()), std::invalid_argument);
  REQUIRE_NOTHROW((JacobiParams{-0.5, -0.5}.validate()));
}
