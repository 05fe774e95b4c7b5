#pragma once

// Boundary-restricted collocation matrices for the model problem
// D^alpha u = lambda u and their spectral radii, swept over operator
// variants, orders, weight parameters, and grid sizes.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "grid.hpp"
#include "operator_spec.hpp"
#include "operators.hpp"

namespace fracspec {

// Short variant tokens used on the CLI and in sweep output.
inline const std::vector<std::string>& model_variant_tokens() {
  static const std::vector<std::string> tokens = {"CL",  "CR", "RLL",
                                                  "RLR", "RC", "RZ"};
  return tokens;
}

inline OperatorSpec model_variant(const std::string& token, double alpha) {
  OperatorSpec spec;
  spec.alpha = alpha;
  if (token == "CL") {
    spec.kind = OperatorKind::caputo;
    spec.side = Side::left;
  } else if (token == "CR") {
    spec.kind = OperatorKind::caputo;
    spec.side = Side::right;
  } else if (token == "RLL") {
    spec.kind = OperatorKind::riemann_liouville;
    spec.side = Side::left;
  } else if (token == "RLR") {
    spec.kind = OperatorKind::riemann_liouville;
    spec.side = Side::right;
  } else if (token == "RC") {
    spec.kind = OperatorKind::riesz_caputo;
  } else if (token == "RZ") {
    spec.kind = OperatorKind::riesz;
  } else {
    throw std::invalid_argument("unknown model variant token: " + token);
  }
  return spec;
}

// Operator matrix with the rows/columns of the boundary-condition nodes
// removed: both endpoints for 1 < alpha <= 2 and for the symmetric kinds,
// otherwise only the endpoint carrying the single boundary condition
// (the left endpoint for left-sided operators, the right for right-sided).
inline Eigen::MatrixXd model_matrix(const OperatorSpec& spec,
                                    const JacobiParams& p, int N) {
  validate_operator(spec);
  if (!(spec.alpha > 0.0 && spec.alpha <= 2.0))
    throw std::invalid_argument("model_matrix: order must be in (0, 2]");
  const bool sided = has_side(spec.kind);
  if (!sided && spec.kind != OperatorKind::riesz &&
      spec.kind != OperatorKind::riesz_caputo)
    throw std::invalid_argument("model_matrix: derivative variants only");

  const Grid g = jgl_grid(p, N);
  const Eigen::MatrixXd D = operator_matrix(g, spec);
  int lo = 1, count = N - 1;
  if (spec.alpha <= 1.0 && sided) {
    if (spec.side == Side::left) {
      lo = 1;
      count = N;
    } else {
      lo = 0;
      count = N;
    }
  }
  return D.block(lo, lo, count, count);
}

// Largest eigenvalue modulus, via the dense QR eigensolver.
inline double spectral_radius(const Eigen::MatrixXd& A) {
  if (!A.allFinite())
    throw std::runtime_error("spectral_radius: matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_radius: eigensolver failed to converge");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

struct RadiusRecord {
  std::string variant;
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  int N = 0;
  double rho = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();  // rho / N^{2 alpha}
  std::string error;  // empty on success
};

struct RadiusSweepConfig {
  std::vector<std::string> variants = model_variant_tokens();
  std::vector<double> alphas = {1.1, 1.3, 1.5, 1.7, 1.9};
  std::vector<JacobiParams> ab_pairs = {{0.0, 0.0}, {-0.5, -0.5}, {-0.5, 0.5}};
  std::vector<int> n_list = {8, 16, 24, 32, 48, 64, 96, 128};
  int max_threads = 0;  // 0: hardware limit (still capped by FRACSPEC_THREADS)
};

namespace detail {

inline int sweep_thread_count(int requested, int cells) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FRACSPEC_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  if (cells < n) n = cells;
  return n;
}

}  // namespace detail

// Spectral radii over the full variant/order/weight/size lattice. Cells
// run concurrently; a failing cell records its error message and leaves
// rho/ratio NaN instead of aborting the sweep. Record order is the
// deterministic lattice order regardless of thread scheduling.
inline std::vector<RadiusRecord> radius_sweep(const RadiusSweepConfig& cfg) {
  struct Cell {
    std::string variant;
    double alpha;
    JacobiParams p;
    int N;
  };
  std::vector<Cell> cells;
  for (const auto& v : cfg.variants)
    for (double alpha : cfg.alphas)
      for (const auto& p : cfg.ab_pairs)
        for (int N : cfg.n_list) cells.push_back({v, alpha, p, N});

  std::vector<RadiusRecord> out(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& c = cells[i];
      RadiusRecord& r = out[i];
      r.variant = c.variant;
      r.alpha = c.alpha;
      r.a = c.p.a;
      r.b = c.p.b;
      r.N = c.N;
      try {
        const OperatorSpec spec = model_variant(c.variant, c.alpha);
        r.rho = spectral_radius(model_matrix(spec, c.p, c.N));
        r.ratio = r.rho / std::pow(c.N, 2.0 * c.alpha);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };

  const int nthreads =
      detail::sweep_thread_count(cfg.max_threads, static_cast<int>(cells.size()));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace fracspec
