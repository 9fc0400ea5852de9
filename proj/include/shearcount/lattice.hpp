#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace shearcount {

/// Point z = x + iy of the upper half plane parameterizing the lattice
///   L_z = { (m sqrt(y), (m x + n) / sqrt(y)) : m, n integers }.
/// x is only meaningful mod 1 since L_{z+1} = L_z.
struct ShearPoint {
  double x = 0.0;
  double y = 1.0;

  /// Throws InvalidParameter unless y > 0 and both coordinates are finite.
  void validate() const;

  /// Columns are the basis vectors (sqrt(y), x/sqrt(y)) and (0, 1/sqrt(y)).
  Eigen::Matrix2d basis() const;
};

enum class CountMethod { Enumerate, RowSlice, Formula };

std::string_view to_string(CountMethod method);
/// Throws InvalidParameter on an unknown name.
CountMethod parse_count_method(std::string_view name);

struct CountResult {
  std::int64_t count = 0;
  /// Boundary tests that fell inside the tie tolerance; 0 means the count
  /// is unambiguous.
  std::int64_t ties = 0;
  CountMethod method = CountMethod::Enumerate;
};

inline constexpr double kDefaultTieEps = 1e-12;

/// The lattice vector with coordinates (m, n) in the basis of L_z.
Eigen::Vector2d lattice_vector(const ShearPoint& z, std::int64_t m, std::int64_t n);

/// Number of lattice points strictly inside the circle of radius T, found by
/// testing every candidate (m, n) in a padded bounding box individually.
/// Quadratic in T / sqrt(y); meant as an oracle.
CountResult count_enumerate(const ShearPoint& z, double radius,
                            double tie_eps = kDefaultTieEps);

/// Same count, one O(1) floor difference per row m, linear in T / sqrt(y).
CountResult count_rowslice(const ShearPoint& z, double radius,
                           double tie_eps = kDefaultTieEps);

/// Half-width sqrt(y T^2 - y^2 m^2) of row m, i.e. the bound on |m x + n|.
/// Only meaningful for |m| <= last_row(y, T).
double row_halfwidth(double y, double radius, std::int64_t m);

/// Largest m with 0 < m sqrt(y) < T, or 0 when there is none.
std::int64_t last_row(double y, double radius);

namespace detail {
/// Ties from the first excluded rows |m| = last_row + 1 when they touch the
/// circle, i.e. lattice points sitting on it with g_m = 0.
std::int64_t edge_ties(const ShearPoint& z, double radius, double tie_eps);
/// Throws InvalidParameter / RangeExceeded for a bad (z, T) pair.
void check_count_arguments(const ShearPoint& z, double radius, double tie_eps);
}  // namespace detail

/// Dispatches on method; Formula rounds the explicit decomposition.
CountResult count_points(const ShearPoint& z, double radius, CountMethod method,
                         double tie_eps = kDefaultTieEps);

}  // namespace shearcount
