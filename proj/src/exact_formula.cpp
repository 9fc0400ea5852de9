#include "shearcount/exact_formula.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "shearcount/compensated_sum.hpp"
#include "shearcount/error.hpp"

namespace shearcount {

namespace {

constexpr double kPi = std::numbers::pi;

void check_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidParameter("radius must be positive and finite");
  if (radius > kMaxScaledRadius) throw RangeExceeded("radius exceeds the supported range of 1e6");
}

// sqrt(T^2 - m^2) for an integer m with |m| <= T.
double circle_height(double radius, double m) {
  return std::sqrt((radius - m) * (radius + m));
}

}  // namespace

double sawtooth(double t) { return 0.5 - (t - std::floor(t)); }

double center_row_correction(double y, double radius) {
  const double g0 = row_halfwidth(y, radius, 0);
  return (2.0 * std::ceil(g0) - 1.0) - 2.0 * g0;
}

double p_sum(double radius) {
  check_radius(radius);
  const auto last = static_cast<std::int64_t>(std::ceil(radius)) - 1;
  CompensatedSum<double> sum;
  sum += radius;
  for (std::int64_t m = 1; m <= last; ++m)
    sum += 2.0 * circle_height(radius, static_cast<double>(m));
  return 2.0 * sum.value();
}

double scaled_p_sum(double y, double radius) {
  detail::check_count_arguments({0.0, y}, radius, 0.0);
  const std::int64_t rows = last_row(y, radius);
  CompensatedSum<double> sum;
  sum += 2.0 * row_halfwidth(y, radius, 0);
  for (std::int64_t m = 1; m <= rows; ++m) sum += 4.0 * row_halfwidth(y, radius, m);
  return sum.value();
}

double h_sum(const ShearPoint& z, double radius) {
  detail::check_count_arguments(z, radius, 0.0);
  const std::int64_t rows = last_row(z.y, radius);
  CompensatedSum<double> sum;
  for (std::int64_t m = 1; m <= rows; ++m) {
    const double g = row_halfwidth(z.y, radius, m);
    const double shift = static_cast<double>(m) * z.x;
    sum += sawtooth(g + shift);
    sum += sawtooth(g - shift);
  }
  return 2.0 * sum.value();
}

Decomposition lemma_count(const ShearPoint& z, double radius, double tie_eps) {
  detail::check_count_arguments(z, radius, tie_eps);
  const std::int64_t rows = last_row(z.y, radius);
  const double g0 = row_halfwidth(z.y, radius, 0);
  const double tol = tie_eps * std::max(1.0, g0);
  auto near_integer = [tol](double t) { return std::abs(t - std::nearbyint(t)) <= tol; };

  Decomposition d;
  CompensatedSum<double> main_term;
  CompensatedSum<double> oscillatory;
  main_term += 2.0 * g0;
  if (near_integer(g0)) ++d.ties;
  for (std::int64_t m = 1; m <= rows; ++m) {
    const double g = row_halfwidth(z.y, radius, m);
    const double shift = static_cast<double>(m) * z.x;
    main_term += 4.0 * g;
    oscillatory += sawtooth(g + shift);
    oscillatory += sawtooth(g - shift);
    if (near_integer(g + shift) || near_integer(g - shift)) d.ties += 2;
  }
  d.ties += detail::edge_ties(z, radius, tie_eps);
  d.main_term = main_term.value();
  d.oscillatory = 2.0 * oscillatory.value();
  d.correction = center_row_correction(z.y, radius);
  d.total = d.main_term + d.oscillatory + d.correction;
  return d;
}

double remainder(const ShearPoint& z, double radius, CountMethod method) {
  const CountResult c = count_points(z, radius, method);
  return static_cast<double>(c.count) - kPi * radius * radius;
}

double p_error(double radius) {
  if (!(radius >= 1.0)) throw InvalidParameter("p_error needs T >= 1");
  return p_sum(radius) - kPi * radius * radius;
}

double p_error_bound(double radius) {
  if (!(radius >= 2.0) || !std::isfinite(radius))
    throw InvalidParameter("p_error_bound needs T >= 2");
  const double upper = std::floor(radius) - 1.0;
  const double edge = circle_height(radius, upper);
  return upper / (2.0 * edge) + 8.0 * edge;
}

double sawtooth_integral(double radius, std::int64_t upper) {
  check_radius(radius);
  if (upper < 0 || static_cast<double>(upper) > radius - 1.0)
    throw InvalidParameter("sawtooth_integral needs 0 <= M <= T - 1");
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double t2 = radius * radius;
  CompensatedSum<double> sum;
  for (std::int64_t m = 0; m < upper; ++m) {
    const double left = static_cast<double>(m);
    // s(x) = 1/2 - (x - m) on [m, m + 1)
    auto integrand = [t2, left](double x) { return -x / std::sqrt(t2 - x * x) * (0.5 - (x - left)); };
    sum += Quadrature::integrate(integrand, left, left + 1.0, 15, 1e-14);
  }
  return sum.value();
}

SawtoothIdentity sawtooth_identity(double radius) {
  if (!(radius >= 1.0)) throw InvalidParameter("sawtooth_identity needs T >= 1");
  SawtoothIdentity id;
  id.upper = static_cast<std::int64_t>(std::floor(radius)) - 1;
  const double upper = static_cast<double>(id.upper);
  const double t2 = radius * radius;

  CompensatedSum<double> heights;
  heights += radius;
  for (std::int64_t m = 1; m <= id.upper; ++m)
    heights += 2.0 * circle_height(radius, static_cast<double>(m));
  id.lhs = kPi * t2 / 4.0 - 0.5 * heights.value();

  id.edge = circle_height(radius, upper);
  // area under the circle between x = M and x = T
  const double cap = 0.5 * (t2 * std::atan2(id.edge, upper) - upper * id.edge);
  id.integral = sawtooth_integral(radius, id.upper);
  id.integral_bound = upper / (8.0 * id.edge);
  id.rhs = id.integral + cap - 0.5 * id.edge;
  return id;
}

Eigen::Matrix2Xd inscribed_polygon(std::int64_t k) {
  if (k < 1) throw InvalidParameter("polygon needs an integer radius >= 1");
  Eigen::Matrix2Xd v(2, 4 * k);
  Eigen::Index col = 0;
  auto height = [k](std::int64_t m) { return std::sqrt(static_cast<double>((k - m) * (k + m))); };
  for (std::int64_t m = k; m >= -k; --m) v.col(col++) << static_cast<double>(m), height(m);
  for (std::int64_t m = -k + 1; m <= k - 1; ++m) v.col(col++) << static_cast<double>(m), -height(m);
  return v;
}

double polygon_area(std::int64_t k) {
  const Eigen::Matrix2Xd v = inscribed_polygon(k);
  CompensatedSum<double> twice_area;
  const Eigen::Index count = v.cols();
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::Index j = (i + 1) % count;
    twice_area += v(0, i) * v(1, j);
    twice_area += -v(0, j) * v(1, i);
  }
  return 0.5 * twice_area.value();
}

double polygon_deficit(std::int64_t k) {
  if (k < 1) throw InvalidParameter("deficit needs an integer radius >= 1");
  const double kd = static_cast<double>(k);
  return kPi * kd * kd - p_sum(kd);
}

}  // namespace shearcount
