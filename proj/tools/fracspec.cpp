// Command-line front end: matrix export, operator application with
// reference cross-checks, the spectral-radius sweep, both solvers, and
// batch reproduction of the error tables and ratio figures.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <fracspec/fracspec.hpp>

namespace {

using namespace fracspec;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& f : split_fields(s, ',')) {
    try {
      out.push_back(parse_double(trim(f)));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) +
                                  ": expected a comma-separated number list, "
                                  "got '" +
                                  s + "'");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (double v : parse_double_list(s, what)) {
    const int n = static_cast<int>(v);
    if (v != n)
      throw std::invalid_argument(std::string(what) +
                                  ": expected integers, got '" + s + "'");
    out.push_back(n);
  }
  return out;
}

JacobiParams parse_ab(const std::string& s) {
  const auto v = parse_double_list(s, "--ab");
  if (v.size() != 2)
    throw std::invalid_argument("--ab: expected exactly two values 'a,b'");
  const JacobiParams p{v[0], v[1]};
  p.validate();
  return p;
}

std::pair<double, double> parse_interval(const std::string& s) {
  const auto v = parse_double_list(s, "--interval");
  if (v.size() != 2 || !(v[1] > v[0]))
    throw std::invalid_argument(
        "--interval: expected 'x_a,x_b' with x_a < x_b");
  return {v[0], v[1]};
}

char delimiter_for(const std::string& format) {
  if (format == "csv") return ',';
  if (format == "tsv") return '\t';
  throw std::invalid_argument("--format: must be 'csv' or 'tsv'");
}

// Run fn against the --out file, or stdout when no path was given.
// Returns true when a file was written (summaries then go to stdout).
bool with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return false;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  fn(os);
  os.flush();
  if (!os) throw std::runtime_error("failed while writing: " + path);
  return true;
}

struct MatrixArgs {
  std::string kind;
  double alpha = 0.0;
  std::string ab = "0,0";
  int n = 8;
  std::string interval = "-1,1";
  std::string out;
  std::string format = "csv";
};

void run_matrix(const MatrixArgs& a) {
  const OperatorSpec spec = parse_operator_token(a.kind, a.alpha);
  const JacobiParams p = parse_ab(a.ab);
  const auto [xa, xb] = parse_interval(a.interval);
  const char delim = delimiter_for(a.format);
  const Grid g = jgl_grid(p, a.n, xa, xb);
  const Eigen::MatrixXd D = operator_matrix(g, spec);
  with_output(a.out, [&](std::ostream& os) {
    write_matrix_csv(os, spec, g, D, delim);
  });
}

struct ApplyArgs {
  std::string kind;
  double alpha = 0.0;
  std::string ab = "0,0";
  int n = 8;
  std::string interval = "-1,1";
  std::string poly;
  double sin_w = 0.0;
  bool sin_set = false;
  bool oracle = false;
  std::string out;
  std::string format = "csv";
};

void run_apply(const ApplyArgs& a) {
  const OperatorSpec spec = parse_operator_token(a.kind, a.alpha);
  const JacobiParams p = parse_ab(a.ab);
  const auto [xa, xb] = parse_interval(a.interval);
  const char delim = delimiter_for(a.format);
  if (a.poly.empty() == !a.sin_set)
    throw std::invalid_argument(
        "apply: exactly one of --poly or --sin-w is required");

  const Grid g = jgl_grid(p, a.n, xa, xb);
  const Eigen::VectorXd xs = g.physical_nodes();

  std::vector<double> coeffs;
  std::function<double(double)> sample;
  std::function<double(double)> reference;
  if (!a.poly.empty()) {
    coeffs = parse_double_list(a.poly, "--poly");
    sample = [&coeffs](double x) {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        v = v * x + *it;
      return v;
    };
    reference = [&](double x) {
      return oracle::polynomial(spec, coeffs, xa, xb, x);
    };
  } else {
    const double w = a.sin_w;
    sample = [w](double x) { return std::sin(w * x); };
    reference = [&, w](double x) { return oracle::sine(spec, w, xa, xb, x); };
  }

  Eigen::VectorXd u(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) u[i] = sample(xs[i]);
  const Eigen::VectorXd v = operator_matrix(g, spec) * u;

  with_output(a.out, [&](std::ostream& os) {
    const char d = delim;
    if (a.oracle)
      os << "x" << d << "value" << d << "oracle" << d << "abs_diff" << "\n";
    else
      os << "x" << d << "value" << "\n";
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
      os << format_shortest(xs[i]) << d << format_shortest(v[i]);
      if (a.oracle) {
        double ref = std::numeric_limits<double>::quiet_NaN();
        try {
          ref = reference(xs[i]);
        } catch (const std::domain_error&) {
          // divergent reference value (e.g. RL at its own endpoint)
        }
        os << d << format_shortest(ref) << d
           << format_shortest(std::abs(v[i] - ref));
      }
      os << "\n";
    }
  });
}

struct RadiusArgs {
  std::string variants = "CL,CR,RLL,RLR,RC,RZ";
  std::string alphas = "1.1,1.3,1.5,1.7,1.9";
  std::string ab_pairs = "0,0;-0.5,-0.5;-0.5,0.5";
  std::string n_list = "8,16,24,32,48,64,96,128";
  std::string out;
  std::string format = "csv";
};

RadiusSweepConfig radius_config(const RadiusArgs& a) {
  RadiusSweepConfig cfg;
  cfg.variants.clear();
  for (const auto& v : split_fields(a.variants, ',')) {
    const std::string token = trim(v);
    model_variant(token, 1.5);  // validates the token
    cfg.variants.push_back(token);
  }
  cfg.alphas = parse_double_list(a.alphas, "--alphas");
  cfg.ab_pairs.clear();
  for (const auto& pair : split_fields(a.ab_pairs, ';')) {
    const auto v = parse_double_list(pair, "--ab-pairs");
    if (v.size() != 2)
      throw std::invalid_argument(
          "--ab-pairs: expected 'a,b' pairs separated by ';'");
    const JacobiParams p{v[0], v[1]};
    p.validate();
    cfg.ab_pairs.push_back(p);
  }
  cfg.n_list = parse_int_list(a.n_list, "--n-list");
  return cfg;
}

void run_radius(const RadiusArgs& a) {
  const char delim = delimiter_for(a.format);
  const auto records = radius_sweep(radius_config(a));
  with_output(a.out, [&](std::ostream& os) {
    write_radius_csv(os, records, delim);
  });
}

struct BtArgs {
  double alpha = 1.5;
  double w = 1.0;
  std::string ab = "0,0";
  int n = 8;
  std::string mode = "ivp";
  std::string out;
  std::string format = "csv";
};

void run_bagley_torvik(const BtArgs& a) {
  const JacobiParams p = parse_ab(a.ab);
  const char delim = delimiter_for(a.format);
  BtMode mode;
  if (a.mode == "ivp")
    mode = BtMode::ivp;
  else if (a.mode == "bvp")
    mode = BtMode::bvp;
  else
    throw std::invalid_argument("--mode: must be 'ivp' or 'bvp'");

  const ManufacturedBt m = manufactured_bagley_torvik(a.alpha, a.w, mode);
  const BtSolution sol = solve_bagley_torvik(m.problem, p, a.n);
  const double err = nodal_max_error(sol.grid, sol.values, m.exact);
  const bool to_file = with_output(a.out, [&](std::ostream& os) {
    write_solution_csv(os, sol.grid, sol.values, m.exact, delim);
  });
  (to_file ? std::cout : std::cerr)
      << "N=" << a.n << " alpha=" << format_shortest(a.alpha)
      << " max_error=" << format_shortest(err) << "\n";
}

struct DiffusionArgs {
  double alpha = 1.5;
  std::string ab = "0,0";
  int n = 4;
  double tau = 1e-2;
  double t_final = 10.0;
  std::string forcing = "midpoint";
  std::string out;
  std::string format = "csv";
};

void run_diffusion(const DiffusionArgs& a) {
  const JacobiParams p = parse_ab(a.ab);
  const char delim = delimiter_for(a.format);
  ForcingQuadrature fq;
  if (a.forcing == "midpoint")
    fq = ForcingQuadrature::midpoint;
  else if (a.forcing == "trapezoid")
    fq = ForcingQuadrature::trapezoid;
  else
    throw std::invalid_argument("--forcing: must be 'midpoint' or 'trapezoid'");

  const ManufacturedDiffusion m = manufactured_diffusion(a.alpha);
  const DiffusionSolution sol =
      solve_diffusion(m.problem, p, a.n, a.tau, a.t_final, fq);
  for (const auto& warning : sol.warnings)
    std::cerr << "warning: " << warning << "\n";
  const auto exact_final = [&](double x) { return m.exact(x, sol.t_final); };
  const double err = nodal_max_error(sol.grid, sol.values, exact_final);
  const bool to_file = with_output(a.out, [&](std::ostream& os) {
    write_solution_csv(os, sol.grid, sol.values, exact_final, delim);
  });
  (to_file ? std::cout : std::cerr)
      << "N=" << a.n << " alpha=" << format_shortest(a.alpha)
      << " max_error=" << format_shortest(err) << "\n";
}

struct ReproduceArgs {
  std::string out_dir = "reproduce-out";
  bool figure_data = false;
  std::string n_list;  // optional override for table/figure grid sizes
};

double bt_table_error(double alpha, double w, const JacobiParams& p, int n,
                      BtMode mode) {
  const ManufacturedBt m = manufactured_bagley_torvik(alpha, w, mode);
  const BtSolution sol = solve_bagley_torvik(m.problem, p, n);
  return nodal_max_error(sol.grid, sol.values, m.exact);
}

void run_reproduce(const ReproduceArgs& a) {
  namespace fs = std::filesystem;
  fs::create_directories(a.out_dir);
  const double four_pi = 4.0 * std::numbers::pi;
  std::optional<std::vector<int>> override_n;
  if (!a.n_list.empty())
    override_n = parse_int_list(a.n_list, "--n-list");

  const auto emit = [&](const std::string& name,
                        const std::function<void(std::ostream&)>& fn) {
    const fs::path path = fs::path(a.out_dir) / name;
    std::ofstream os(path);
    if (!os)
      throw std::runtime_error("cannot open output file: " + path.string());
    fn(os);
    os.flush();
    if (!os) throw std::runtime_error("failed while writing: " + path.string());
    std::cout << "wrote " << path.string() << "\n";
  };

  // Initial-value convergence tables: one row per N, one error column per
  // frequency of the manufactured solution sin(w x).
  const std::vector<int> ivp_ns =
      override_n.value_or(std::vector<int>{4, 8, 16, 32, 48, 64});
  const auto ivp_table = [&](const JacobiParams& p, std::ostream& os) {
    os << "N,w=1,w=4pi\n";
    for (int n : ivp_ns) {
      os << n << ","
         << format_shortest(bt_table_error(1.5, 1.0, p, n, BtMode::ivp)) << ","
         << format_shortest(bt_table_error(1.5, four_pi, p, n, BtMode::ivp))
         << "\n";
    }
  };
  emit("table1.csv", [&](std::ostream& os) { ivp_table({0.0, 0.0}, os); });
  emit("table2.csv", [&](std::ostream& os) { ivp_table({-0.5, -0.5}, os); });

  // Boundary-value tables: one row per N, one error column per order.
  const std::vector<double> bvp_alphas = {1.1, 1.25, 1.4, 1.6, 1.75, 1.9};
  const std::vector<int> bvp_ns =
      override_n.value_or(std::vector<int>{8, 12, 16, 20, 24, 28});
  const auto bvp_table = [&](const JacobiParams& p, std::ostream& os) {
    os << "N";
    for (double alpha : bvp_alphas) os << ",alpha=" << format_shortest(alpha);
    os << "\n";
    for (int n : bvp_ns) {
      os << n;
      for (double alpha : bvp_alphas)
        os << ","
           << format_shortest(bt_table_error(alpha, four_pi, p, n, BtMode::bvp));
      os << "\n";
    }
  };
  emit("table3.csv", [&](std::ostream& os) { bvp_table({0.0, 0.0}, os); });
  emit("table4.csv", [&](std::ostream& os) { bvp_table({-0.5, -0.5}, os); });

  // Diffusion table: one row per weight pair, one error column per order.
  const std::vector<JacobiParams> pairs = {
      {0.0, 0.0}, {-0.5, -0.5}, {-0.5, 0.5}};
  const std::vector<double> diff_alphas = {1.1, 1.3, 1.5, 1.7, 1.9};
  emit("table5.csv", [&](std::ostream& os) {
    os << "a,b";
    for (double alpha : diff_alphas) os << ",alpha=" << format_shortest(alpha);
    os << "\n";
    for (const auto& p : pairs) {
      os << format_shortest(p.a) << "," << format_shortest(p.b);
      for (double alpha : diff_alphas) {
        const ManufacturedDiffusion m = manufactured_diffusion(alpha);
        const DiffusionSolution sol =
            solve_diffusion(m.problem, p, 4, 1e-2, 10.0);
        const double err = nodal_max_error(sol.grid, sol.values, [&](double x) {
          return m.exact(x, sol.t_final);
        });
        os << "," << format_shortest(err);
      }
      os << "\n";
    }
  });

  if (!a.figure_data) return;

  // Ratio series rho / N^{2 alpha}: one file per weight pair, six variant
  // panels of five order series each.
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    RadiusSweepConfig cfg;
    cfg.ab_pairs = {pairs[k]};
    if (override_n) cfg.n_list = *override_n;
    const auto records = radius_sweep(cfg);
    emit("figure" + std::to_string(k + 1) + ".csv", [&](std::ostream& os) {
      write_radius_csv(os, records);
    });
  }
  emit("figures.gnuplot", [&](std::ostream& os) {
    os << "# Render the ratio panels: gnuplot figures.gnuplot\n"
       << "# (run from the directory holding figure1.csv..figure3.csv)\n"
       << "set datafile separator ','\n"
       << "set logscale x 2\n"
       << "set terminal pngcairo size 1500,900\n"
       << "variants = 'CL CR RLL RLR RC RZ'\n"
       << "alphas = '1.1 1.3 1.5 1.7 1.9'\n"
       << "do for [f=1:3] {\n"
       << "  set output sprintf('figure%d.png', f)\n"
       << "  set multiplot layout 2,3\n"
       << "  do for [v in variants] {\n"
       << "    set title v\n"
       << "    plot for [al in alphas] sprintf('figure%d.csv', f) \\\n"
       << "      using 5:((strcol(1) eq v) && (strcol(2) eq al) ? $7 : 1/0) "
          "\\\n"
       << "      with linespoints title 'alpha='.al\n"
       << "  }\n"
       << "  unset multiplot\n"
       << "}\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fractional differentiation matrices and collocation solvers on "
      "Jacobi-Gauss-Lobatto grids"};
  app.require_subcommand(1);

  MatrixArgs ma;
  auto* matrix = app.add_subcommand(
      "matrix", "Export one collocation matrix (17-digit CSV)");
  matrix
      ->add_option("--kind", ma.kind,
                   "Operator kind token (integral-l, integral-r, caputo-l, "
                   "caputo-r, rl-l, rl-r, riesz, riesz-caputo, classical)")
      ->required();
  matrix->add_option("--alpha", ma.alpha, "Operator order")->required();
  matrix->add_option("--ab", ma.ab, "Weight parameters 'a,b'");
  matrix->add_option("--n", ma.n, "Grid degree N (N+1 nodes)");
  matrix->add_option("--interval", ma.interval, "Physical interval 'x_a,x_b'");
  matrix->add_option("--out", ma.out, "Output file (default: stdout)");
  matrix->add_option("--format", ma.format, "csv or tsv");
  matrix->callback([&ma]() { run_matrix(ma); });

  ApplyArgs aa;
  auto* apply = app.add_subcommand(
      "apply", "Apply an operator matrix to samples of a function");
  apply->add_option("--kind", aa.kind, "Operator kind token")->required();
  apply->add_option("--alpha", aa.alpha, "Operator order")->required();
  apply->add_option("--ab", aa.ab, "Weight parameters 'a,b'");
  apply->add_option("--n", aa.n, "Grid degree N");
  apply->add_option("--interval", aa.interval, "Physical interval 'x_a,x_b'");
  apply->add_option("--poly", aa.poly,
                    "Polynomial coefficients 'c0,c1,...' (ascending powers)");
  apply
      ->add_option("--sin-w", aa.sin_w, "Use the function sin(w x) with this w")
      ->each([&aa](const std::string&) { aa.sin_set = true; });
  apply->add_flag("--oracle", aa.oracle,
                  "Print independent reference values next to matrix values");
  apply->add_option("--out", aa.out, "Output file (default: stdout)");
  apply->add_option("--format", aa.format, "csv or tsv");
  apply->callback([&aa]() { run_apply(aa); });

  RadiusArgs ra;
  auto* radius = app.add_subcommand(
      "radius", "Spectral-radius sweep of the model-problem matrices");
  radius->add_option("--variants", ra.variants,
                     "Comma-separated variants from {CL,CR,RLL,RLR,RC,RZ}");
  radius->add_option("--alphas", ra.alphas, "Comma-separated orders");
  radius->add_option("--ab-pairs", ra.ab_pairs,
                     "Semicolon-separated 'a,b' pairs");
  radius->add_option("--n-list", ra.n_list, "Comma-separated grid degrees");
  radius->add_option("--out", ra.out, "Output file (default: stdout)");
  radius->add_option("--format", ra.format, "csv or tsv");
  radius->callback([&ra]() { run_radius(ra); });

  BtArgs ba;
  auto* bt = app.add_subcommand(
      "bagley-torvik",
      "Solve the manufactured fractional oscillator problem (exact solution "
      "sin(w x) on [0,1])");
  bt->add_option("--alpha", ba.alpha, "Fractional order in (1,2)");
  bt->add_option("--w", ba.w, "Frequency of the exact solution");
  bt->add_option("--ab", ba.ab, "Weight parameters 'a,b'");
  bt->add_option("--n", ba.n, "Grid degree N");
  bt->add_option("--mode", ba.mode, "'ivp' or 'bvp'");
  bt->add_option("--out", ba.out, "Solution CSV file (default: stdout)");
  bt->add_option("--format", ba.format, "csv or tsv");
  bt->callback([&ba]() { run_bagley_torvik(ba); });

  DiffusionArgs da;
  auto* diffusion = app.add_subcommand(
      "diffusion",
      "Solve the manufactured two-sided fractional diffusion problem (exact "
      "solution (t+1)^alpha x^2(1-x)^2 on [0,1])");
  diffusion->add_option("--alpha", da.alpha, "Fractional order in (1,2)");
  diffusion->add_option("--ab", da.ab, "Weight parameters 'a,b'");
  diffusion->add_option("--n", da.n, "Grid degree N");
  diffusion->add_option("--tau", da.tau, "Time step");
  diffusion->add_option("--t-final", da.t_final, "Final time");
  diffusion->add_option("--forcing", da.forcing,
                        "Forcing quadrature per step: 'midpoint' or "
                        "'trapezoid'");
  diffusion->add_option("--out", da.out, "Solution CSV file (default: stdout)");
  diffusion->add_option("--format", da.format, "csv or tsv");
  diffusion->callback([&da]() { run_diffusion(da); });

  ReproduceArgs pa;
  auto* reproduce = app.add_subcommand(
      "reproduce", "Write all error tables (and ratio figure data) as CSV");
  reproduce->add_option("--out-dir", pa.out_dir, "Output directory");
  reproduce->add_flag("--figure-data", pa.figure_data,
                      "Also write the spectral-radius ratio series");
  reproduce->add_option(
      "--n-list", pa.n_list,
      "Override the grid-degree list used for tables and figures");
  reproduce->callback([&pa]() { run_reproduce(pa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
