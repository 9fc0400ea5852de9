#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "shearcount/lattice.hpp"

namespace shearcount {

/// Odd 1-periodic sawtooth s(t) = 1/2 - {t}, values in (-1/2, 1/2].
double sawtooth(double t);

/// Exact contribution of the m = 0 row beyond its mean 2 sqrt(y) T under the
/// strict count: (2 ceil(sqrt(y) T) - 1) - 2 sqrt(y) T. Off ties this is
/// 1 - 2 {sqrt(y) T}; it is -1 when sqrt(y) T is an integer.
double center_row_correction(double y, double radius);

/// P(T) = 2 sum_{|m| < T} sqrt(T^2 - m^2).
double p_sum(double radius);

/// y P(T / sqrt(y)) summed as 2 sum_{|m| < T/sqrt(y)} g_m over the rows.
double scaled_p_sum(double y, double radius);

/// H_T(z) = 2 sum_{0 < m < T/sqrt(y)} (s(g_m + m x) + s(g_m - m x)).
double h_sum(const ShearPoint& z, double radius);

struct Decomposition {
  double main_term = 0.0;    ///< y P(T / sqrt(y))
  double oscillatory = 0.0;  ///< H_T(z)
  double correction = 0.0;   ///< m = 0 row correction
  double total = 0.0;
  /// Sawtooth arguments within tolerance of a jump.
  std::int64_t ties = 0;
};

/// N(T) = y P(T/sqrt(y)) + H_T(z) + correction, evaluated in one pass over
/// the rows.
Decomposition lemma_count(const ShearPoint& z, double radius,
                          double tie_eps = kDefaultTieEps);

/// count(z, T) - pi T^2 with the selected counting method.
double remainder(const ShearPoint& z, double radius, CountMethod method);

/// P(T) - pi T^2, for T >= 1. Negative at integer T (inscribed polygon).
double p_error(double radius);

/// Explicit bound on |P(T) - pi T^2| for T >= 2, with M = floor(T) - 1 and
/// r = sqrt(T^2 - M^2): M / (2r) + 4r for the truncated sum plus 4r for the
/// rows |m| = floor(T) it leaves out.
double p_error_bound(double radius);

/// |P(T) - pi T^2| <= kPErrorSqrtConstant * sqrt(T) held on every radius
/// sampled in [2, 1e4]; the largest observed ratio there is 1.18.
inline constexpr double kPErrorSqrtConstant = 9.0;

/// polygon_deficit(k) >= kDeficitFloor * sqrt(k) for k = 2..100; the
/// smallest observed ratio is 1.158, at k = 2.
inline constexpr double kDeficitFloor = 1.0;

/// Integral of f_T'(x) s(x) over [0, M] with f_T(x) = sqrt(T^2 - x^2),
/// by Gauss-Kronrod on each unit interval. Requires 0 <= M <= T - 1.
double sawtooth_integral(double radius, std::int64_t upper);

/// Both sides of the integration-by-parts identity
///   pi T^2/4 - 1/2 sum_{|m|<=M} f_T(m)
///     = I_T(M) + int_M^T f_T(x) dx - f_T(M)/2,     M = floor(T) - 1,
/// each side assembled from independent pieces.
struct SawtoothIdentity {
  std::int64_t upper = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double integral = 0.0;          ///< I_T(M)
  double integral_bound = 0.0;    ///< M / (8 f_T(M))
  double edge = 0.0;              ///< f_T(M)
};

SawtoothIdentity sawtooth_identity(double radius);

/// Vertices (m, +-sqrt(k^2 - m^2)), m = -k..k, counter-clockwise.
Eigen::Matrix2Xd inscribed_polygon(std::int64_t k);

/// Shoelace area of inscribed_polygon(k); equals P(k).
double polygon_area(std::int64_t k);

/// pi k^2 - P(k), the area the inscribed polygon misses.
double polygon_deficit(std::int64_t k);

}  // namespace shearcount
