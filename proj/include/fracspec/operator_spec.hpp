#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacobi.hpp"

namespace fracspec {

enum class OperatorKind {
  fractional_integral,  // I^alpha
  caputo,               // Caputo derivative of order alpha
  riemann_liouville,    // Riemann-Liouville derivative of order alpha
  riesz,                // symmetric Riemann-Liouville combination
  riesz_caputo,         // symmetric Caputo combination
  classical             // integer-order derivative d^m/dx^m
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::caputo;
  Side side = Side::left;  // ignored for riesz, riesz_caputo, classical
  double alpha = 0.5;
};

inline bool is_integer_order(double alpha) { return alpha == std::floor(alpha); }

// Smallest integer n with n >= alpha (n = alpha itself at integer orders).
inline int ceil_order(double alpha) { return static_cast<int>(std::ceil(alpha)); }

inline bool has_side(OperatorKind kind) {
  return kind == OperatorKind::fractional_integral ||
         kind == OperatorKind::caputo ||
         kind == OperatorKind::riemann_liouville;
}

// Prefactor of the symmetric combinations, -1 / (2 cos(pi alpha / 2)).
// Undefined where the cosine vanishes, i.e. at odd integer orders.
inline double riesz_coefficient(double alpha) {
  const double c = std::cos(0.5 * std::numbers::pi * alpha);
  if (std::abs(c) < 1e-12)
    throw std::domain_error(
        "riesz_coefficient: undefined at odd integer order alpha=" +
        std::to_string(alpha));
  return -0.5 / c;
}

inline void validate_operator(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::fractional_integral:
      if (!(spec.alpha > 0.0))
        throw std::invalid_argument("operator: integral order must be positive");
      break;
    case OperatorKind::caputo:
    case OperatorKind::riemann_liouville:
      if (!(spec.alpha > 0.0))
        throw std::invalid_argument("operator: derivative order must be positive");
      break;
    case OperatorKind::riesz:
    case OperatorKind::riesz_caputo:
      if (!(spec.alpha > 0.0))
        throw std::invalid_argument("operator: derivative order must be positive");
      riesz_coefficient(spec.alpha);  // throws at odd integer orders
      break;
    case OperatorKind::classical:
      if (!(spec.alpha >= 0.0) || !is_integer_order(spec.alpha))
        throw std::invalid_argument(
            "operator: classical derivative order must be a nonnegative integer");
      break;
  }
}

// Rows of the collocation matrix where the operator itself is unbounded:
// the Riemann-Liouville derivative of the interpolant diverges at its own
// expansion endpoint unless the order is an integer.
inline std::vector<int> undefined_rows(const OperatorSpec& spec, int N) {
  if (is_integer_order(spec.alpha)) return {};
  switch (spec.kind) {
    case OperatorKind::riemann_liouville:
      return spec.side == Side::left ? std::vector<int>{0}
                                     : std::vector<int>{N};
    case OperatorKind::riesz:
      return {0, N};
    default:
      return {};
  }
}

// Stable one-word-per-kind tokens used by the CLI and the CSV metadata.
inline std::string kind_token(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::fractional_integral:
      return spec.side == Side::left ? "integral-l" : "integral-r";
    case OperatorKind::caputo:
      return spec.side == Side::left ? "caputo-l" : "caputo-r";
    case OperatorKind::riemann_liouville:
      return spec.side == Side::left ? "rl-l" : "rl-r";
    case OperatorKind::riesz:
      return "riesz";
    case OperatorKind::riesz_caputo:
      return "riesz-caputo";
    case OperatorKind::classical:
      return "classical";
  }
  throw std::logic_error("kind_token: unreachable");
}

inline OperatorSpec parse_operator_token(const std::string& token, double alpha) {
  OperatorSpec spec;
  spec.alpha = alpha;
  if (token == "integral-l") {
    spec.kind = OperatorKind::fractional_integral;
    spec.side = Side::left;
  } else if (token == "integral-r") {
    spec.kind = OperatorKind::fractional_integral;
    spec.side = Side::right;
  } else if (token == "caputo-l") {
    spec.kind = OperatorKind::caputo;
    spec.side = Side::left;
  } else if (token == "caputo-r") {
    spec.kind = OperatorKind::caputo;
    spec.side = Side::right;
  } else if (token == "rl-l") {
    spec.kind = OperatorKind::riemann_liouville;
    spec.side = Side::left;
  } else if (token == "rl-r") {
    spec.kind = OperatorKind::riemann_liouville;
    spec.side = Side::right;
  } else if (token == "riesz") {
    spec.kind = OperatorKind::riesz;
  } else if (token == "riesz-caputo") {
    spec.kind = OperatorKind::riesz_caputo;
  } else if (token == "classical") {
    spec.kind = OperatorKind::classical;
  } else {
    throw std::invalid_argument("unknown operator kind token: " + token);
  }
  validate_operator(spec);
  return spec;
}

}  // namespace fracspec
