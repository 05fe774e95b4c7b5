// Accuracy of collocation operator matrices applied to a smooth function.
//
// For u(x) = sin(wx) on [0,1] we tabulate the max nodal error of D*u
// against adaptive-quadrature reference values, for several fractional
// operators and increasing polynomial degree N.

#include <fracspec/fracspec.hpp>

#include <cstdio>
#include <vector>

using namespace fracspec;

int main() {
  const double w = 4.0;
  const std::vector<std::string> kinds = {"caputo-l", "rl-l", "riesz", "riesz-caputo"};
  const std::vector<double> alphas = {0.5, 1.5};
  const std::vector<int> degrees = {4, 8, 12, 16, 20, 24};

  std::printf("max |D u - reference| for u(x) = sin(%gx) on [0,1], nodes (a,b) = (0,0)\n\n", w);
  std::printf("%-14s %-6s", "operator", "alpha");
  for (int n : degrees) std::printf("  %-10s", ("N=" + std::to_string(n)).c_str());
  std::printf("\n");

  for (const auto& kind : kinds) {
    for (double alpha : alphas) {
      OperatorSpec spec = parse_operator_token(kind, alpha);
      std::printf("%-14s %-6g", kind.c_str(), alpha);
      for (int n : degrees) {
        Grid g = jgl_grid({0.0, 0.0}, n, 0.0, 1.0);
        Eigen::MatrixXd D = operator_matrix(g, spec);
        Eigen::VectorXd x = g.physical_nodes();
        Eigen::VectorXd u = (w * x.array()).sin();
        Eigen::VectorXd v = D * u;

        double err = 0.0;
        for (int i = 0; i <= n; ++i) {
          double ref;
          try {
            ref = oracle::sine(spec, w, 0.0, 1.0, x(i));
          } catch (const std::domain_error&) {
            continue;  // operator undefined at this endpoint
          }
          err = std::max(err, std::abs(v(i) - ref));
        }
        std::printf("  %-10.2e", err);
      }
      std::printf("\n");
    }
  }
  return 0;
}
