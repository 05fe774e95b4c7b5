// Spectral convergence of the Bagley-Torvik collocation solver.
//
// Solves u'' + Caputo^{1.5} u + u = f on [0,1] with a manufactured solution
// u(x) = sin(wx), as an initial-value and as a boundary-value problem,
// and prints the max nodal error against the exact solution for a range
// of polynomial degrees.  The error decays spectrally until it hits the
// rounding floor.

#include <fracspec/fracspec.hpp>

#include <cstdio>
#include <vector>

using namespace fracspec;

static void run(double alpha, double w, BtMode mode, const JacobiParams& p) {
  const char* tag = (mode == BtMode::ivp) ? "IVP" : "BVP";
  std::printf("%s  alpha=%g  w=%g  (a,b)=(%g,%g)\n", tag, alpha, w, p.a, p.b);
  std::printf("  %-4s %-12s %s\n", "N", "max error", "decay");
  double prev = 0.0;
  for (int n : {4, 8, 16, 32, 48, 64}) {
    ManufacturedBt mf = manufactured_bagley_torvik(alpha, w, mode);
    BtSolution sol = solve_bagley_torvik(mf.problem, p, n);
    double err = nodal_max_error(sol.grid, sol.values, mf.exact);
    if (prev > 0.0 && err > 0.0) {
      std::printf("  %-4d %-12.4e x%.1e\n", n, err, prev / err);
    } else {
      std::printf("  %-4d %-12.4e\n", n, err);
    }
    prev = err;
  }
  std::printf("\n");
}

int main() {
  const double pi = 3.14159265358979323846;
  run(1.5, 1.0, BtMode::ivp, {0.0, 0.0});
  run(1.5, 4.0 * pi, BtMode::ivp, {0.0, 0.0});
  run(1.5, 4.0 * pi, BtMode::ivp, {-0.5, -0.5});
  run(1.4, 4.0 * pi, BtMode::bvp, {0.0, 0.0});
  run(1.9, 4.0 * pi, BtMode::bvp, {-0.5, -0.5});
  return 0;
}
