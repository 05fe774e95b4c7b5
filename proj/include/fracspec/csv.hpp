#pragma once

// CSV/TSV emission and parsing. Two float formats: shortest round-trip
// (report-style files) and fixed 17 significant digits (matrix exports;
// lossless for double). All files are UTF-8 with LF line endings and a
// mandatory header row.

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"
#include "model_problem.hpp"
#include "operator_spec.hpp"

namespace fracspec {

inline std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_sig17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("parse_double: malformed number '" +
                                std::string(s) + "'");
  return v;
}

inline std::vector<std::string> split_fields(const std::string& line,
                                             char delim) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Matrix export: one metadata header/value pair, then the dense rows at
// 17 significant digits.
inline void write_matrix_csv(std::ostream& os, const OperatorSpec& spec,
                             const Grid& g, const Eigen::MatrixXd& D,
                             char delim = ',') {
  const char d = delim;
  os << "kind" << d << "alpha" << d << "a" << d << "b" << d << "N" << d
     << "x_a" << d << "x_b" << "\n";
  os << kind_token(spec) << d << format_shortest(spec.alpha) << d
     << format_shortest(g.params.a) << d << format_shortest(g.params.b) << d
     << g.N << d << format_shortest(g.map.x_a) << d
     << format_shortest(g.map.x_b) << "\n";
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index j = 0; j < D.cols(); ++j) {
      if (j) os << d;
      os << format_sig17(D(i, j));
    }
    os << "\n";
  }
}

struct MatrixFile {
  std::string kind;
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  int N = 0;
  double x_a = -1.0;
  double x_b = 1.0;
  Eigen::MatrixXd values;
};

inline MatrixFile read_matrix_csv(std::istream& is, char delim = ',') {
  std::string line;
  if (!std::getline(is, line) ||
      split_fields(line, delim) !=
          std::vector<std::string>{"kind", "alpha", "a", "b", "N", "x_a", "x_b"})
    throw std::invalid_argument("read_matrix_csv: bad metadata header");
  if (!std::getline(is, line))
    throw std::invalid_argument("read_matrix_csv: missing metadata row");
  const auto meta = split_fields(line, delim);
  if (meta.size() != 7)
    throw std::invalid_argument("read_matrix_csv: bad metadata row");
  MatrixFile f;
  f.kind = meta[0];
  f.alpha = parse_double(meta[1]);
  f.a = parse_double(meta[2]);
  f.b = parse_double(meta[3]);
  f.N = static_cast<int>(parse_double(meta[4]));
  f.x_a = parse_double(meta[5]);
  f.x_b = parse_double(meta[6]);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line, delim);
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
      row[j] = parse_double(fields[j]);
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("read_matrix_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  const std::size_t expected = static_cast<std::size_t>(f.N) + 1;
  if (f.N < 0 || rows.size() != expected ||
      rows.front().size() != expected)
    throw std::invalid_argument(
        "read_matrix_csv: value block does not match the declared size");
  f.values.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      f.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return f;
}

inline void write_radius_csv(std::ostream& os,
                             const std::vector<RadiusRecord>& records,
                             char delim = ',') {
  const char d = delim;
  os << "variant" << d << "alpha" << d << "a" << d << "b" << d << "N" << d
     << "rho" << d << "ratio" << "\n";
  for (const auto& r : records) {
    os << r.variant << d << format_shortest(r.alpha) << d
       << format_shortest(r.a) << d << format_shortest(r.b) << d << r.N << d
       << format_shortest(r.rho) << d << format_shortest(r.ratio) << "\n";
  }
}

// Nodal solution table; exact/error columns appear when a reference
// solution is supplied.
inline void write_solution_csv(std::ostream& os, const Grid& g,
                               const Eigen::VectorXd& u,
                               const std::function<double(double)>& exact = {},
                               char delim = ',') {
  const char d = delim;
  const Eigen::VectorXd xs = g.physical_nodes();
  if (exact)
    os << "x" << d << "u" << d << "exact" << d << "error" << "\n";
  else
    os << "x" << d << "u" << "\n";
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    os << format_shortest(xs[i]) << d << format_shortest(u[i]);
    if (exact) {
      const double e = exact(xs[i]);
      os << d << format_shortest(e) << d << format_shortest(std::abs(u[i] - e));
    }
    os << "\n";
  }
}

}  // namespace fracspec
