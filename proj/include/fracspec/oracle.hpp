#pragma once

// Reference evaluators for the fractional operators, used to validate the
// collocation matrices. Two fully independent routes are provided:
//
//  * closed-form termwise series for polynomials (exact rebasing at the
//    operative endpoint, then the power rule) and for sin(w x) (shifted
//    Taylor series with relative truncation),
//  * adaptive-free Gauss-Jacobi quadrature of the defining integral, with
//    analytic endpoint corrections for the Riemann-Liouville forms.
//
// The quadrature route never touches the polynomial recurrences, so
// agreement between the two is a genuine cross-check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "operator_spec.hpp"
#include "special_functions.hpp"

namespace fracspec::oracle {

inline constexpr int kMaxPolynomialDegree = 64;
inline constexpr int kDefaultQuadPoints = 64;
inline constexpr int kSeriesCap = 200;
inline constexpr double kSeriesRelTol = 1e-18;

namespace detail {

// Shifting a polynomial to a new expansion point and the subsequent
// termwise sums can cancel badly (the shifted coefficients grow
// binomially while the value stays O(1)), so this whole pipeline runs
// in extended precision.
inline std::vector<long double> taylor_shift_ld(const std::vector<double>& coeffs,
                                                long double x0) {
  std::vector<long double> c(coeffs.begin(), coeffs.end());
  const int n = static_cast<int>(c.size());
  for (int k = 0; k < n; ++k)
    for (int i = n - 2; i >= k; --i) c[i] += x0 * c[i + 1];
  return c;
}

inline long double gamma_ratio_ld(long double p, long double q) {
  return std::exp(std::lgamma(p) - std::lgamma(q));
}

// gamma for possibly-negative non-integer arguments, via reflection.
inline long double gamma_ld(long double z) {
  if (z > 0.0L) return std::exp(std::lgamma(z));
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double s = std::sin(pi * z);
  if (s == 0.0L) throw std::domain_error("oracle: gamma pole");
  return pi / (s * std::exp(std::lgamma(1.0L - z)));
}

inline void check_interval_point(double x_a, double x_b, double x) {
  if (!(x_b > x_a))
    throw std::invalid_argument("oracle: interval must satisfy x_a < x_b");
  if (!(x >= x_a && x <= x_b))
    throw std::invalid_argument("oracle: evaluation point outside interval");
}

// Coefficients in powers of u, the distance from the operative endpoint
// (u = x - x_a on the left, u = x_b - x on the right).
inline std::vector<long double> rebase(const std::vector<double>& c, Side side,
                                       double x_a, double x_b) {
  std::vector<long double> d =
      taylor_shift_ld(c, side == Side::left ? x_a : x_b);
  if (side == Side::right)
    for (std::size_t m = 1; m < d.size(); m += 2) d[m] = -d[m];
  return d;
}

// Termwise power rule on a rebased polynomial. The same u-space formulas
// hold on both sides once the coefficients are expressed in u.
inline double sided_polynomial(OperatorKind kind, double alpha,
                               const std::vector<long double>& d, double u) {
  const int deg = static_cast<int>(d.size()) - 1;
  const long double ul = u;
  long double sum = 0.0L;
  switch (kind) {
    case OperatorKind::fractional_integral:
      for (int m = 0; m <= deg; ++m) {
        if (d[m] == 0.0L) continue;
        sum += d[m] * gamma_ratio_ld(m + 1.0L, m + 1.0L + alpha) *
               std::pow(ul, m + static_cast<long double>(alpha));
      }
      return static_cast<double>(sum);
    case OperatorKind::caputo:
    case OperatorKind::riemann_liouville: {
      const int n = ceil_order(alpha);
      const bool keep_low = kind == OperatorKind::riemann_liouville &&
                            !is_integer_order(alpha);
      if (keep_low) {
        for (int m = 0; m < n && m <= deg; ++m) {
          if (d[m] == 0.0L) continue;
          if (u == 0.0)
            throw std::domain_error(
                "oracle: Riemann-Liouville value diverges at the expansion "
                "endpoint (nonzero term of order below alpha)");
          sum += d[m] * gamma_ratio_ld(m + 1.0L, 1.0L) /
                 gamma_ld(m + 1.0L - static_cast<long double>(alpha)) *
                 std::pow(ul, m - static_cast<long double>(alpha));
        }
      }
      for (int m = n; m <= deg; ++m) {
        if (d[m] == 0.0L) continue;
        sum += d[m] * gamma_ratio_ld(m + 1.0L, m + 1.0L - alpha) *
               std::pow(ul, m - static_cast<long double>(alpha));
      }
      return static_cast<double>(sum);
    }
    default:
      throw std::logic_error("sided_polynomial: sided kinds only");
  }
}

}  // namespace detail

// Coefficients of p in powers of (x - x0), by repeated synthetic division.
inline std::vector<double> taylor_shift(const std::vector<double>& c, double x0) {
  std::vector<long double> d = detail::taylor_shift_ld(c, x0);
  return std::vector<double>(d.begin(), d.end());
}

// Closed-form value of the operator applied to p(x) = sum_k coeffs[k] x^k
// on [x_a, x_b], evaluated at x.
inline double polynomial(const OperatorSpec& spec,
                         const std::vector<double>& coeffs, double x_a,
                         double x_b, double x) {
  validate_operator(spec);
  detail::check_interval_point(x_a, x_b, x);
  if (coeffs.empty())
    throw std::invalid_argument("oracle: empty coefficient list");
  if (static_cast<int>(coeffs.size()) - 1 > kMaxPolynomialDegree)
    throw std::invalid_argument("oracle: polynomial degree above 64");

  switch (spec.kind) {
    case OperatorKind::riesz:
    case OperatorKind::riesz_caputo: {
      const OperatorKind part = spec.kind == OperatorKind::riesz
                                    ? OperatorKind::riemann_liouville
                                    : OperatorKind::caputo;
      const double c = riesz_coefficient(spec.alpha);
      return c * (polynomial({part, Side::left, spec.alpha}, coeffs, x_a, x_b,
                             x) +
                  polynomial({part, Side::right, spec.alpha}, coeffs, x_a, x_b,
                             x));
    }
    case OperatorKind::classical: {
      const int n = static_cast<int>(spec.alpha);
      const std::vector<long double> d = detail::taylor_shift_ld(coeffs, x_a);
      const long double u = x - x_a;
      long double sum = 0.0L;
      for (int m = n; m < static_cast<int>(d.size()); ++m) {
        long double fall = 1.0L;
        for (int i = 0; i < n; ++i) fall *= m - i;
        sum += d[m] * fall * std::pow(u, static_cast<long double>(m - n));
      }
      return static_cast<double>(sum);
    }
    default: {
      const std::vector<long double> d = detail::rebase(coeffs, spec.side, x_a, x_b);
      const double u = spec.side == Side::left ? x - x_a : x_b - x;
      return detail::sided_polynomial(spec.kind, spec.alpha, d, u);
    }
  }
}

// Closed-form value of the operator applied to sin(w x) on [x_a, x_b],
// evaluated at x. Shifted Taylor series, truncated when the term envelope
// drops below kSeriesRelTol of the accumulated sum.
inline double sine(const OperatorSpec& spec, double w, double x_a, double x_b,
                   double x) {
  validate_operator(spec);
  detail::check_interval_point(x_a, x_b, x);

  switch (spec.kind) {
    case OperatorKind::riesz:
    case OperatorKind::riesz_caputo: {
      const OperatorKind part = spec.kind == OperatorKind::riesz
                                    ? OperatorKind::riemann_liouville
                                    : OperatorKind::caputo;
      const double c = riesz_coefficient(spec.alpha);
      return c * (sine({part, Side::left, spec.alpha}, w, x_a, x_b, x) +
                  sine({part, Side::right, spec.alpha}, w, x_a, x_b, x));
    }
    case OperatorKind::classical: {
      const int n = static_cast<int>(spec.alpha);
      return std::pow(w, n) *
             std::sin(w * x + 0.5 * std::numbers::pi * n);
    }
    default:
      break;
  }

  // The shifted series cancels against an envelope of size exp(|w u|),
  // so every term factor is computed in extended precision.
  const long double pi_l = 3.141592653589793238462643383279502884L;
  const long double endpoint = spec.side == Side::left ? x_a : x_b;
  const long double u = spec.side == Side::left ? x - x_a : x_b - x;
  const long double flip = spec.side == Side::left ? 1.0L : -1.0L;
  const long double alpha = spec.alpha;
  const long double wl = w;
  const bool integral = spec.kind == OperatorKind::fractional_integral;
  const int n = integral ? 0 : ceil_order(spec.alpha);
  const bool keep_low = spec.kind == OperatorKind::riemann_liouville &&
                        !is_integer_order(spec.alpha);
  // Taylor coefficient of order m in powers of u:
  //   d_m = (side-sign w)^m / m! * sin(w * endpoint + m pi / 2).
  const auto coeff_scale = [&](int m) {
    long double v = 1.0L;
    for (int i = 1; i <= m; ++i) v *= flip * wl / i;
    return v;
  };
  const auto phase = [&](int m) { return std::sin(wl * endpoint + 0.5L * pi_l * m); };

  long double sum = 0.0L;
  if (keep_low) {
    for (int m = 0; m < n; ++m) {
      const long double d = coeff_scale(m) * phase(m);
      if (d == 0.0L) continue;
      if (u == 0.0L)
        throw std::domain_error(
            "oracle: Riemann-Liouville value diverges at the expansion "
            "endpoint (nonzero term of order below alpha)");
      sum += d * detail::gamma_ratio_ld(m + 1.0L, 1.0L) /
             detail::gamma_ld(m + 1.0L - alpha) * std::pow(u, m - alpha);
    }
  }

  const long double shift = integral ? alpha : -alpha;
  long double scale = coeff_scale(n);  // |d_m| envelope factor, updated in place
  for (int m = n; m <= n + kSeriesCap; ++m) {
    const long double ratio = detail::gamma_ratio_ld(m + 1.0L, m + 1.0L + shift);
    const long double envelope = std::abs(scale) * ratio * std::pow(u, m + shift);
    const long double term = scale * phase(m) * ratio * std::pow(u, m + shift);
    if (!std::isfinite(term)) break;
    sum += term;
    if (m > n + 1 && envelope <= kSeriesRelTol * std::abs(sum)) break;
    scale *= flip * wl / (m + 1);
  }
  return static_cast<double>(sum);
}

namespace detail {

inline const QuadratureRule& cached_rule(double beta, int npts) {
  thread_local std::map<std::pair<double, int>, QuadratureRule> cache;
  const auto key = std::make_pair(beta, npts);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, gauss_jacobi_rule({beta - 1.0, 0.0}, npts)).first;
  return it->second;
}

}  // namespace detail

// I^beta f at x by Gauss-Jacobi quadrature: the kernel singularity
// (distance)^{beta-1} is absorbed into the quadrature weight exactly.
inline double quad_fractional_integral(double beta, Side side, double x_a,
                                       double x_b,
                                       const std::function<double(double)>& f,
                                       double x,
                                       int npts = kDefaultQuadPoints) {
  if (!(beta > 0.0))
    throw std::invalid_argument("oracle: integral order must be positive");
  detail::check_interval_point(x_a, x_b, x);
  const double h = side == Side::left ? x - x_a : x_b - x;
  if (h == 0.0) return 0.0;
  const QuadratureRule& rule = detail::cached_rule(beta, npts);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double s = side == Side::left
                         ? x_a + h * (rule.nodes[q] + 1.0) / 2.0
                         : x_b - h * (rule.nodes[q] + 1.0) / 2.0;
    sum += rule.weights[q] * f(s);
  }
  return std::pow(0.5 * h, beta) / gamma(beta) * sum;
}

// Caputo derivative at x from the n-th derivative of f (n = ceil(alpha)).
inline double quad_caputo(double alpha, Side side, double x_a, double x_b,
                          const std::function<double(double)>& f_nth, double x,
                          int npts = kDefaultQuadPoints) {
  const int n = ceil_order(alpha);
  const double sign = side == Side::right && n % 2 == 1 ? -1.0 : 1.0;
  if (is_integer_order(alpha)) {
    detail::check_interval_point(x_a, x_b, x);
    return sign * f_nth(x);
  }
  return sign *
         quad_fractional_integral(n - alpha, side, x_a, x_b, f_nth, x, npts);
}

// Riemann-Liouville derivative at x: the Caputo part by quadrature plus
// the analytic endpoint-Taylor corrections. derivs[k] must evaluate the
// k-th derivative of f for k = 0..n.
inline double quad_riemann_liouville(
    double alpha, Side side, double x_a, double x_b,
    const std::vector<std::function<double(double)>>& derivs, double x,
    int npts = kDefaultQuadPoints) {
  const int n = ceil_order(alpha);
  if (static_cast<int>(derivs.size()) < n + 1)
    throw std::invalid_argument(
        "oracle: Riemann-Liouville quadrature needs derivatives 0..n");
  if (is_integer_order(alpha))
    return quad_caputo(alpha, side, x_a, x_b, derivs[n], x, npts);

  double out = quad_caputo(alpha, side, x_a, x_b, derivs[n], x, npts);
  const double endpoint = side == Side::left ? x_a : x_b;
  const double u = side == Side::left ? x - x_a : x_b - x;
  for (int k = 0; k < n; ++k) {
    const double v = derivs[k](endpoint);
    if (v == 0.0) continue;
    if (u == 0.0)
      throw std::domain_error(
          "oracle: Riemann-Liouville value diverges at the expansion "
          "endpoint (nonzero term of order below alpha)");
    const double sign = side == Side::right && k % 2 == 1 ? -1.0 : 1.0;
    out += sign * v * std::pow(u, k - alpha) / gamma(k + 1.0 - alpha);
  }
  return out;
}

// Quadrature-route dispatcher over all operator kinds. derivs[k] must
// evaluate the k-th derivative of f, for k = 0..ceil(alpha) (k = 0 alone
// suffices for the fractional integral).
inline double quadrature(const OperatorSpec& spec, double x_a, double x_b,
                         const std::vector<std::function<double(double)>>& derivs,
                         double x, int npts = kDefaultQuadPoints) {
  validate_operator(spec);
  const int n = ceil_order(spec.alpha);
  switch (spec.kind) {
    case OperatorKind::fractional_integral:
      if (derivs.empty())
        throw std::invalid_argument("oracle: need the function itself");
      return quad_fractional_integral(spec.alpha, spec.side, x_a, x_b,
                                      derivs[0], x, npts);
    case OperatorKind::caputo:
      if (static_cast<int>(derivs.size()) < n + 1)
        throw std::invalid_argument("oracle: need derivatives 0..n");
      return quad_caputo(spec.alpha, spec.side, x_a, x_b, derivs[n], x, npts);
    case OperatorKind::riemann_liouville:
      return quad_riemann_liouville(spec.alpha, spec.side, x_a, x_b, derivs, x,
                                    npts);
    case OperatorKind::riesz:
      return riesz_coefficient(spec.alpha) *
             (quad_riemann_liouville(spec.alpha, Side::left, x_a, x_b, derivs,
                                     x, npts) +
              quad_riemann_liouville(spec.alpha, Side::right, x_a, x_b, derivs,
                                     x, npts));
    case OperatorKind::riesz_caputo:
      if (static_cast<int>(derivs.size()) < n + 1)
        throw std::invalid_argument("oracle: need derivatives 0..n");
      return riesz_coefficient(spec.alpha) *
             (quad_caputo(spec.alpha, Side::left, x_a, x_b, derivs[n], x,
                          npts) +
              quad_caputo(spec.alpha, Side::right, x_a, x_b, derivs[n], x,
                          npts));
    case OperatorKind::classical:
      if (static_cast<int>(derivs.size()) < n + 1)
        throw std::invalid_argument("oracle: need derivatives 0..n");
      detail::check_interval_point(x_a, x_b, x);
      return derivs[n](x);
  }
  throw std::logic_error("quadrature: unreachable");
}

}  // namespace fracspec::oracle
