#include "shearcount/lattice.hpp"

#include <cmath>
#include <string>

#include "shearcount/error.hpp"
#include "shearcount/exact_formula.hpp"

namespace shearcount {

void ShearPoint::validate() const {
  if (!std::isfinite(x)) throw InvalidParameter("shear coordinate x must be finite");
  if (!(y > 0.0) || !std::isfinite(y))
    throw InvalidParameter("height y must be positive and finite, got " + std::to_string(y));
}

Eigen::Matrix2d ShearPoint::basis() const {
  const double sy = std::sqrt(y);
  Eigen::Matrix2d b;
  b << sy, 0.0,
       x / sy, 1.0 / sy;
  return b;
}

std::string_view to_string(CountMethod method) {
  switch (method) {
    case CountMethod::Enumerate: return "enumerate";
    case CountMethod::RowSlice: return "rowslice";
    case CountMethod::Formula: return "formula";
  }
  return "unknown";
}

CountMethod parse_count_method(std::string_view name) {
  if (name == "enumerate") return CountMethod::Enumerate;
  if (name == "rowslice") return CountMethod::RowSlice;
  if (name == "formula") return CountMethod::Formula;
  throw InvalidParameter("unknown count method '" + std::string(name) + "'");
}

Eigen::Vector2d lattice_vector(const ShearPoint& z, std::int64_t m, std::int64_t n) {
  const double sy = std::sqrt(z.y);
  const double md = static_cast<double>(m);
  return {md * sy, (md * z.x + static_cast<double>(n)) / sy};
}

namespace detail {

void check_count_arguments(const ShearPoint& z, double radius, double tie_eps) {
  z.validate();
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidParameter("radius must be positive and finite");
  if (!(tie_eps >= 0.0)) throw InvalidParameter("tie tolerance must be nonnegative");
  if (radius / std::sqrt(z.y) > kMaxScaledRadius)
    throw RangeExceeded("T/sqrt(y) exceeds the supported range of 1e6");
}

std::int64_t edge_ties(const ShearPoint& z, double radius, double tie_eps) {
  const std::int64_t m = last_row(z.y, radius) + 1;
  const double md = static_cast<double>(m);
  if (std::abs(radius - md * std::sqrt(z.y)) > tie_eps * radius) return 0;
  const double shift = md * z.x;
  const double tol = tie_eps * std::max(1.0, std::abs(shift));
  return std::abs(shift - std::nearbyint(shift)) <= tol ? 2 : 0;
}

}  // namespace detail

double row_halfwidth(double y, double radius, std::int64_t m) {
  const double offset = static_cast<double>(m) * std::sqrt(y);
  return std::sqrt(y * (radius - offset) * (radius + offset));
}

std::int64_t last_row(double y, double radius) {
  const double sy = std::sqrt(y);
  auto m = static_cast<std::int64_t>(std::ceil(radius / sy)) - 1;
  while (static_cast<double>(m + 1) * sy < radius) ++m;
  while (m > 0 && static_cast<double>(m) * sy >= radius) --m;
  return std::max<std::int64_t>(m, 0);
}

// Oracle: every candidate (m, n) in a padded box is tested on its own. Shares
// nothing with the row formulas below.
CountResult count_enumerate(const ShearPoint& z, double radius, double tie_eps) {
  detail::check_count_arguments(z, radius, tie_eps);
  const double y = z.y;
  const double scale = y * radius * radius;
  const auto m_bound = static_cast<std::int64_t>(std::floor(radius / std::sqrt(y))) + 1;
  const double width_bound = std::sqrt(scale) + 2.0;
  if (static_cast<double>(2 * m_bound + 1) * (2.0 * width_bound + 3.0) > 1e11)
    throw RangeExceeded("too many candidates for count_enumerate");

  CountResult result{0, 0, CountMethod::Enumerate};
  for (std::int64_t m = -m_bound; m <= m_bound; ++m) {
    const double md = static_cast<double>(m);
    const double rhs = scale - y * y * md * md;
    const double width = std::sqrt(std::max(rhs, 0.0));
    const double center = -md * z.x;
    const auto n_lo = static_cast<std::int64_t>(std::floor(center - width)) - 1;
    const auto n_hi = static_cast<std::int64_t>(std::ceil(center + width)) + 1;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const double v = md * z.x + static_cast<double>(n);
      const double lhs = v * v;
      if (std::abs(lhs - rhs) <= tie_eps * scale) ++result.ties;
      if (lhs < rhs) ++result.count;
    }
  }
  return result;
}

CountResult count_rowslice(const ShearPoint& z, double radius, double tie_eps) {
  detail::check_count_arguments(z, radius, tie_eps);
  const std::int64_t rows = last_row(z.y, radius);
  const double tol = tie_eps * std::max(1.0, std::sqrt(z.y) * radius);
  auto near_integer = [tol](double t) { return std::abs(t - std::nearbyint(t)) <= tol; };

  CountResult result{0, 0, CountMethod::RowSlice};
  for (std::int64_t m = -rows; m <= rows; ++m) {
    const double g = row_halfwidth(z.y, radius, m);
    const double shift = static_cast<double>(m) * z.x;
    const double lo = -g - shift;
    const double hi = g - shift;
    // integers strictly inside (lo, hi)
    result.count += static_cast<std::int64_t>(std::ceil(hi)) -
                    static_cast<std::int64_t>(std::floor(lo)) - 1;
    if (near_integer(lo) || near_integer(hi)) ++result.ties;
  }
  result.ties += detail::edge_ties(z, radius, tie_eps);
  return result;
}

CountResult count_points(const ShearPoint& z, double radius, CountMethod method,
                         double tie_eps) {
  switch (method) {
    case CountMethod::Enumerate: return count_enumerate(z, radius, tie_eps);
    case CountMethod::RowSlice: return count_rowslice(z, radius, tie_eps);
    case CountMethod::Formula: {
      const Decomposition d = lemma_count(z, radius, tie_eps);
      return {static_cast<std::int64_t>(std::llround(d.total)), d.ties, CountMethod::Formula};
    }
  }
  throw InvalidParameter("unknown count method");
}

}  // namespace shearcount
