#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace shearcount {

/// A jump of x -> N_{x+iy}(T) at location x in [0, 1).
struct BreakEvent {
  double x = 0.0;
  std::int64_t delta = 0;
};

/// All jumps of the count over one period of the shear, coincident jumps
/// merged. The count is piecewise constant between events.
struct BreakpointSweep {
  double y = 1.0;
  double radius = 0.0;
  std::vector<BreakEvent> events;  ///< sorted by x, nonzero deltas
  std::int64_t base_count = 0;     ///< count on (0, first positive event)

  /// Count at a non-jump x, reconstructed from base_count and the events.
  std::int64_t count_at(double x) const;
};

/// Jumps are merged when their locations agree after rounding to this grid.
inline constexpr double kBreakpointResolution = 1e-13;
inline constexpr double kMaxBreakpointEvents = 1e8;

/// Projected raw event count 2 T^2 / y.
double projected_events(double y, double radius);

/// Throws RangeExceeded when projected_events exceeds kMaxBreakpointEvents.
BreakpointSweep breakpoints(double y, double radius);

struct PiecewiseMoments {
  double mean = 0.0;         ///< int_0^1 (N - offset) dx
  double mean_square = 0.0;  ///< int_0^1 (N - offset)^2 dx
  double error_bound = 0.0;
};

/// Exact moments of the piecewise-constant N(x) - offset over one period.
PiecewiseMoments integrate_sweep(const BreakpointSweep& sweep, double offset);

enum class Integrator { Breakpoints, Grid, ParsevalAssembled };

std::string_view to_string(Integrator integrator);
/// Accepts "breakpoints", "grid", "parseval" and "parseval-assembled".
Integrator parse_integrator(std::string_view name);

struct MeanSquareReport {
  double y = 0.0;
  double radius = 0.0;
  double mean_remainder = 0.0;  ///< int_0^1 R dx
  double mean_square = 0.0;     ///< int_0^1 R^2 dx
  Integrator method = Integrator::Breakpoints;
  double error_bound = 0.0;
  double upper_bound_value = 0.0;
  double ratio = 0.0;           ///< mean_square / upper_bound_value
  std::int64_t breakpoint_count = 0;
  double elapsed_ms = 0.0;
  std::string error;            ///< nonempty when the row failed
};

/// T~ max(1, log T~)^2 + y^{3/2} T with T~ = T / sqrt(y).
double upper_bound_value(double y, double radius);

/// Largest mean_square / upper_bound_value seen on log-spaced T in
/// [10, 2000] (40 radii per height), y in {1, 2, 5}; attained near T = 67, y = 5.
inline constexpr double kObservedRatioSup = 0.744244;

MeanSquareReport meansquare_exact(double y, double radius);

/// Midpoint rule with count_rowslice at each node. error_bound is 0: the
/// integrand is piecewise constant, so compare two resolutions instead.
MeanSquareReport meansquare_grid(double y, double radius, std::int64_t grid_points);

/// Mean remainder from the closed form and the mean square assembled as
/// int H^2 + (mean remainder)^2 from the Parseval value (H has mean zero).
/// k_max / n_max of 0 pick the defaults of parseval_meansquare.
MeanSquareReport meansquare_parseval(double y, double radius, std::int64_t k_max = 0,
                                     std::int64_t n_max = 0);

/// y P(T/sqrt(y)) - pi T^2 + center_row_correction(y, T). Every row m != 0
/// averages to exactly 2 g_m over a full period of x.
double mean_remainder_closed(double y, double radius);

struct LowerBoundWitness {
  double radius = 0.0;          ///< k sqrt(y)
  double mean_remainder = 0.0;  ///< -y deficit + m = 0 correction
  double mean_square = 0.0;     ///< from the breakpoint sweep
  double deficit = 0.0;         ///< pi k^2 - P(k)
  double floor_value = 0.0;     ///< mean_remainder^2
  bool floor_holds = false;     ///< mean_square >= floor_value
};

LowerBoundWitness lower_bound_witness(double y, std::int64_t k);

struct SweepConfig {
  std::vector<double> y_values;
  double radius_min = 0.0;
  double radius_max = 0.0;
  std::int64_t samples = 0;
  bool log_spaced = false;
  Integrator integrator = Integrator::Breakpoints;
  std::int64_t grid_points = 1 << 16;
  /// When false elapsed_ms is written as 0 so output is reproducible.
  bool record_timing = false;
};

/// Radii the sweep visits, ascending; empty when samples == 0 or min > max.
std::vector<double> sweep_radii(const SweepConfig& config);

/// One report per (y, T), ordered by (y, T). Rows run on `threads` workers;
/// a failing row carries its message in `error`. With the breakpoint
/// integrator, rows over kMaxBreakpointEvents fall back to the grid.
std::vector<MeanSquareReport> sweep(const SweepConfig& config, unsigned threads = 1);

inline constexpr std::string_view kSweepCsvHeader =
    "T,y,mean_square,mean_remainder,upper_bound,ratio,method,breakpoints,elapsed_ms";

void write_sweep_csv(std::ostream& out, const std::vector<MeanSquareReport>& rows);
/// Parses what write_sweep_csv emits. Throws InvalidParameter on bad input.
std::vector<MeanSquareReport> read_sweep_csv(std::istream& in);

}  // namespace shearcount
