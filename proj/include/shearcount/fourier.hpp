#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "shearcount/lattice.hpp"

namespace shearcount {

/// Cosine coefficients of H_T(x + iy) as a function of x:
///   H = sum_k c_k cos(2 pi k x),
///   c_k = (4/pi) sum_{m n = k, 0 < m < T/sqrt(y), n <= n_max} sin(2 pi n g_m) / n.
/// There is no constant term.
struct FourierSpectrum {
  std::int64_t k_max = 0;
  std::int64_t n_max = 0;
  Eigen::VectorXd coeffs;  ///< coeffs[k - 1] = c_k
  /// Bound on the L2(dx) norm of everything the truncation drops.
  double l2_truncation_bound = 0.0;

  double coefficient(std::int64_t k) const { return coeffs[k - 1]; }
};

FourierSpectrum spectrum(double y, double radius, std::int64_t k_max,
                         std::int64_t n_max);

/// L2 bound on the part of the series with n > min(n_max, k_max / m) in row m.
double truncation_l2_bound(double y, double radius, std::int64_t k_max,
                           std::int64_t n_max);

struct ParsevalEstimate {
  double value = 0.0;        ///< 1/2 sum_{k <= k_max} c_k^2
  double error_bound = 0.0;  ///< bound on |int_0^1 H^2 dx - value|
  std::int64_t k_max = 0;
  std::int64_t n_max = 0;
};

/// Mean square of H_T over x from the coefficients, without materializing
/// them all at once.
ParsevalEstimate parseval_meansquare(double y, double radius, std::int64_t k_max,
                                     std::int64_t n_max);

/// Smallest power-of-two n_max whose Parseval error bound is at most
/// relative_error times a pilot lower bound of the mean square.
std::int64_t default_nmax(double y, double radius, double relative_error = 5e-3);

/// parseval_meansquare with n_max = default_nmax and k_max covering every
/// retained (m, n) pair.
ParsevalEstimate parseval_meansquare(double y, double radius);

/// The double series for H_T truncated at n <= n_max, evaluated at z.x.
double h_truncated(const ShearPoint& z, double radius, std::int64_t n_max);

/// Explicit upper bound for int_0^1 H_T^2 dx obtained by splitting the
/// sawtooth series at n = A:
///   2 (16/pi^2) [ H_A sum_{n<=A} (1/n) (1/2) sum_m sin^2(2 pi n g_m)
///               + T~ sum_m (1/2) sum_{n>A} sin^2(2 pi n g_m) / n^2 ]
/// where H_A is the harmonic number and the n > A tail is summed exactly up
/// to 10 A, with 1/(10 A) covering the rest. Zero when T / sqrt(y) <= 1.
double certificate(double y, double radius, std::int64_t split);

/// sin(2 pi n g) with the phase n g reduced mod 1 using an exact product.
double sin_2pi_multiple(std::int64_t n, double g);

}  // namespace shearcount
