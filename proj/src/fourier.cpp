#include "shearcount/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <vector>

#include "shearcount/compensated_sum.hpp"
#include "shearcount/error.hpp"

namespace shearcount {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesScale = 4.0 / kPi;
constexpr std::int64_t kBlock = 1 << 16;
constexpr std::int64_t kExactOverlapRows = 2048;
constexpr double kMaxPairs = 268435456.0;  // 2^28 (m, n) pairs per evaluation

void check_arguments(double y, double radius) {
  if (!(y > 0.0) || !std::isfinite(y)) throw InvalidParameter("y must be positive and finite");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidParameter("radius must be positive and finite");
  if (radius / std::sqrt(y) > kMaxScaledRadius)
    throw RangeExceeded("T/sqrt(y) exceeds the supported range of 1e6");
}

// n g mod 1 in about [-1/2, 1/2], keeping the rounding error of the product.
double reduced_phase(std::int64_t n, double g) {
  const double nd = static_cast<double>(n);
  const double p = nd * g;
  const double err = std::fma(nd, g, -p);
  return (p - std::nearbyint(p)) + err;
}

// sum_{j > J} 1/j^2
double inverse_square_tail(std::int64_t j) {
  return j == 0 ? kPi * kPi / 6.0 : 1.0 / static_cast<double>(j);
}

std::vector<double> row_halfwidths(double y, double radius, std::int64_t rows) {
  std::vector<double> g(static_cast<std::size_t>(rows + 1), 0.0);
  for (std::int64_t m = 1; m <= rows; ++m) g[static_cast<std::size_t>(m)] = row_halfwidth(y, radius, m);
  return g;
}

std::int64_t retained_harmonics(std::int64_t m, std::int64_t k_max, std::int64_t n_max) {
  return std::min(n_max, k_max / m);
}

}  // namespace

double sin_2pi_multiple(std::int64_t n, double g) {
  return std::sin(2.0 * kPi * reduced_phase(n, g));
}

double truncation_l2_bound(double y, double radius, std::int64_t k_max, std::int64_t n_max) {
  check_arguments(y, radius);
  const std::int64_t rows = last_row(y, radius);
  if (rows == 0) return 0.0;

  // Each dropped (m, n) shares its frequency m n with at most
  // #{m' <= rows : m' | m n} other terms. Cauchy-Schwarz on every frequency
  // and summing over n with m' | m n, i.e. q | n for q = m' / gcd(m, m'):
  //   int |D|^2 <= (8/pi^2) sum_{m, m'} q^-2 tail(floor(N_m / q)).
  CompensatedSum<double> total;
  if (rows <= kExactOverlapRows) {
    for (std::int64_t m = 1; m <= rows; ++m) {
      const std::int64_t kept = retained_harmonics(m, k_max, n_max);
      for (std::int64_t other = 1; other <= rows; ++other) {
        const std::int64_t q = other / std::gcd(m, other);
        const double qd = static_cast<double>(q);
        total += inverse_square_tail(kept / q) / (qd * qd);
      }
    }
  } else {
    for (std::int64_t m = 1; m <= rows; ++m)
      total += static_cast<double>(rows) * inverse_square_tail(retained_harmonics(m, k_max, n_max));
  }
  return std::sqrt(8.0 / (kPi * kPi) * total.value());
}

FourierSpectrum spectrum(double y, double radius, std::int64_t k_max, std::int64_t n_max) {
  check_arguments(y, radius);
  if (k_max < 1) throw InvalidParameter("k_max must be at least 1");
  if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
  if (k_max > (std::int64_t{1} << 27)) throw RangeExceeded("k_max too large to materialize");

  FourierSpectrum s;
  s.k_max = k_max;
  s.n_max = n_max;
  s.coeffs = Eigen::VectorXd::Zero(k_max);
  const std::int64_t rows = last_row(y, radius);
  for (std::int64_t m = 1; m <= rows; ++m) {
    const double g = row_halfwidth(y, radius, m);
    const std::int64_t kept = retained_harmonics(m, k_max, n_max);
    for (std::int64_t n = 1; n <= kept; ++n)
      s.coeffs[m * n - 1] += kSeriesScale * sin_2pi_multiple(n, g) / static_cast<double>(n);
  }
  s.l2_truncation_bound = truncation_l2_bound(y, radius, k_max, n_max);
  return s;
}

ParsevalEstimate parseval_meansquare(double y, double radius, std::int64_t k_max,
                                     std::int64_t n_max) {
  check_arguments(y, radius);
  if (k_max < 1) throw InvalidParameter("k_max must be at least 1");
  if (n_max < 1) throw InvalidParameter("n_max must be at least 1");

  const std::int64_t rows = last_row(y, radius);
  const std::vector<double> g = row_halfwidths(y, radius, rows);
  double pairs = 0.0;
  for (std::int64_t m = 1; m <= rows; ++m)
    pairs += static_cast<double>(retained_harmonics(m, k_max, n_max));
  if (pairs > kMaxPairs) throw RangeExceeded("too many (m, n) pairs for the Parseval sum");

  // Scatter the pairs block by block; within a coefficient m increases, so
  // every c_k is summed in divisor order.
  const std::int64_t k_top = std::min<std::int64_t>(k_max, rows * n_max);
  CompensatedSum<double> half_sum;
  std::vector<double> block(static_cast<std::size_t>(kBlock));
  for (std::int64_t k0 = 1; k0 <= k_top; k0 += kBlock) {
    const std::int64_t k1 = std::min(k_top, k0 + kBlock - 1);
    std::fill(block.begin(), block.end(), 0.0);
    for (std::int64_t m = 1; m <= rows; ++m) {
      const std::int64_t n_lo = (k0 + m - 1) / m;
      const std::int64_t n_hi = std::min(retained_harmonics(m, k_max, n_max), k1 / m);
      for (std::int64_t n = n_lo; n <= n_hi; ++n)
        block[static_cast<std::size_t>(m * n - k0)] +=
            kSeriesScale * sin_2pi_multiple(n, g[static_cast<std::size_t>(m)]) / static_cast<double>(n);
    }
    for (std::int64_t k = k0; k <= k1; ++k) {
      const double c = block[static_cast<std::size_t>(k - k0)];
      half_sum += 0.5 * c * c;
    }
  }

  ParsevalEstimate est;
  est.k_max = k_max;
  est.n_max = n_max;
  est.value = half_sum.value();
  const double dropped = truncation_l2_bound(y, radius, k_max, n_max);
  est.error_bound = dropped * (2.0 * std::sqrt(est.value) + dropped);
  return est;
}

std::int64_t default_nmax(double y, double radius, double relative_error) {
  check_arguments(y, radius);
  if (!(relative_error > 0.0)) throw InvalidParameter("relative error must be positive");
  const std::int64_t rows = last_row(y, radius);
  constexpr std::int64_t kPilot = 256;
  if (rows == 0) return 1;

  const ParsevalEstimate pilot = parseval_meansquare(y, radius, kPilot * rows, kPilot);
  const double pilot_drop = truncation_l2_bound(y, radius, kPilot * rows, kPilot);
  // lower bound on the L2 norm of H
  const double norm_floor = std::sqrt(pilot.value) - pilot_drop;
  const auto cap = static_cast<std::int64_t>(kMaxPairs / static_cast<double>(rows));
  if (!(norm_floor > 0.0)) return std::min(kPilot, cap);

  // error bound d (2 |H| + d) <= rel |H|^2  <=>  d <= |H| (sqrt(1 + rel) - 1)
  const double target = norm_floor * (std::sqrt(1.0 + relative_error) - 1.0);
  std::int64_t n = kPilot;
  while (n * 2 <= cap && truncation_l2_bound(y, radius, n * rows, n) > target) n *= 2;
  return n;
}

ParsevalEstimate parseval_meansquare(double y, double radius) {
  const std::int64_t n = default_nmax(y, radius);
  const std::int64_t rows = last_row(y, radius);
  return parseval_meansquare(y, radius, std::max<std::int64_t>(1, n * rows), n);
}

double h_truncated(const ShearPoint& z, double radius, std::int64_t n_max) {
  z.validate();
  check_arguments(z.y, radius);
  if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
  const std::int64_t rows = last_row(z.y, radius);
  CompensatedSum<double> sum;
  for (std::int64_t m = 1; m <= rows; ++m) {
    const double g = row_halfwidth(z.y, radius, m);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double wave = std::cos(2.0 * kPi * reduced_phase(m * n, z.x));
      sum += sin_2pi_multiple(n, g) * wave / static_cast<double>(n);
    }
  }
  return kSeriesScale * sum.value();
}

double certificate(double y, double radius, std::int64_t split) {
  check_arguments(y, radius);
  if (split < 2) throw InvalidParameter("certificate needs A >= 2");
  const std::int64_t rows = last_row(y, radius);
  if (rows == 0) return 0.0;
  const std::vector<double> g = row_halfwidths(y, radius, rows);
  const double scaled_radius = radius / std::sqrt(y);

  CompensatedSum<double> harmonic;
  CompensatedSum<double> low;
  for (std::int64_t n = 1; n <= split; ++n) {
    const double nd = static_cast<double>(n);
    harmonic += 1.0 / nd;
    CompensatedSum<double> orth;
    for (std::int64_t m = 1; m <= rows; ++m) {
      const double s = sin_2pi_multiple(n, g[static_cast<std::size_t>(m)]);
      orth += 0.5 * s * s;
    }
    low += orth.value() / nd;
  }

  const std::int64_t exact_end = 10 * split;
  CompensatedSum<double> high;
  for (std::int64_t m = 1; m <= rows; ++m) {
    CompensatedSum<double> tail;
    for (std::int64_t n = split + 1; n <= exact_end; ++n) {
      const double s = sin_2pi_multiple(n, g[static_cast<std::size_t>(m)]);
      const double nd = static_cast<double>(n);
      tail += s * s / (nd * nd);
    }
    tail += 1.0 / static_cast<double>(exact_end);
    high += 0.5 * tail.value();
  }

  const double scale = 2.0 * 16.0 / (kPi * kPi);
  return scale * (harmonic.value() * low.value() + scaled_radius * high.value());
}

}  // namespace shearcount
