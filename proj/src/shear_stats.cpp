#include "shearcount/shear_stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "shearcount/compensated_sum.hpp"
#include "shearcount/error.hpp"
#include "shearcount/exact_formula.hpp"
#include "shearcount/fourier.hpp"
#include "shearcount/io.hpp"
#include "shearcount/lattice.hpp"
#include "shearcount/parallel.hpp"

namespace shearcount {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kGridTicks = 10'000'000'000'000;  // 1 / kBreakpointResolution

void check_arguments(double y, double radius) {
  detail::check_count_arguments({0.0, y}, radius, 0.0);
}

struct RawEvent {
  std::int64_t tick;
  std::int64_t delta;
};

std::int64_t to_tick(double x) {
  auto tick = static_cast<std::int64_t>(std::llround(x * static_cast<double>(kGridTicks)));
  tick %= kGridTicks;
  if (tick < 0) tick += kGridTicks;
  return tick;
}

}  // namespace

double projected_events(double y, double radius) { return 2.0 * radius * radius / y; }

std::int64_t BreakpointSweep::count_at(double x) const {
  x -= std::floor(x);
  std::int64_t count = base_count;
  for (const BreakEvent& e : events) {
    if (e.x >= x) break;
    if (e.x > 0.0) count += e.delta;
  }
  return count;
}

BreakpointSweep breakpoints(double y, double radius) {
  check_arguments(y, radius);
  if (projected_events(y, radius) > kMaxBreakpointEvents)
    throw RangeExceeded("breakpoint sweep would need more than 1e8 events");

  // Row m (and its mirror -m) gains a point when m x + n crosses -g_m upward
  // and loses one when it crosses g_m, i.e. at x = (frac(-g) + t)/m and
  // x = (frac(g) + t)/m for t = 0..m-1.
  const std::int64_t rows = last_row(y, radius);
  std::vector<RawEvent> raw;
  raw.reserve(static_cast<std::size_t>(rows * (rows + 1)));
  for (std::int64_t m = 1; m <= rows; ++m) {
    const double g = row_halfwidth(y, radius, m);
    const double enter = std::ceil(g) - g;
    const double leave = g - std::floor(g);
    const double md = static_cast<double>(m);
    for (std::int64_t t = 0; t < m; ++t) {
      const double td = static_cast<double>(t);
      raw.push_back({to_tick((enter + td) / md), +2});
      raw.push_back({to_tick((leave + td) / md), -2});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawEvent& a, const RawEvent& b) { return a.tick < b.tick; });

  BreakpointSweep sweep;
  sweep.y = y;
  sweep.radius = radius;
  // Locations whose deltas cancel still carry a one-point dip of the count
  // (g_m integer), so they stay candidates to avoid when probing.
  std::vector<double> locations;
  for (std::size_t i = 0; i < raw.size();) {
    const std::int64_t tick = raw[i].tick;
    std::int64_t delta = 0;
    for (; i < raw.size() && raw[i].tick == tick; ++i) delta += raw[i].delta;
    const double x = static_cast<double>(tick) / static_cast<double>(kGridTicks);
    locations.push_back(x);
    if (delta != 0) sweep.events.push_back({x, delta});
  }

  // Anchor the running count at the middle of the widest gap, where the
  // row-slice count is far from every jump.
  double probe = 0.5;
  if (!locations.empty()) {
    double widest = locations.front() + 1.0 - locations.back();
    probe = locations.back() + 0.5 * widest;
    for (std::size_t i = 0; i + 1 < locations.size(); ++i) {
      const double gap = locations[i + 1] - locations[i];
      if (gap > widest) {
        widest = gap;
        probe = locations[i] + 0.5 * gap;
      }
    }
    probe -= std::floor(probe);
  }
  std::int64_t count = count_rowslice({probe, y}, radius, 0.0).count;
  for (const BreakEvent& e : sweep.events) {
    if (e.x >= probe) break;
    if (e.x > 0.0) count -= e.delta;
  }
  sweep.base_count = count;
  return sweep;
}

PiecewiseMoments integrate_sweep(const BreakpointSweep& sweep, double offset) {
  CompensatedSum<double> first;
  CompensatedSum<double> second;
  double location_error = 0.0;
  std::int64_t count = sweep.base_count;
  double previous = 0.0;
  auto add_interval = [&](double end) {
    const double value = static_cast<double>(count) - offset;
    const double length = end - previous;
    first += length * value;
    second += length * value * value;
  };
  for (const BreakEvent& e : sweep.events) {
    if (e.x <= 0.0) continue;
    add_interval(e.x);
    const double before = static_cast<double>(count) - offset;
    count += e.delta;
    const double after = static_cast<double>(count) - offset;
    location_error += kBreakpointResolution * std::abs(after * after - before * before);
    previous = e.x;
  }
  add_interval(1.0);

  std::int64_t net = 0;
  for (const BreakEvent& e : sweep.events) net += e.delta;
  if (net != 0) throw std::logic_error("breakpoint deltas do not cancel over a period");

  PiecewiseMoments moments;
  moments.mean = first.value();
  moments.mean_square = second.value();
  const double eps = std::numeric_limits<double>::epsilon();
  moments.error_bound = location_error +
                        4.0 * eps * second.value() * (1.0 + std::log2(1.0 + static_cast<double>(sweep.events.size())));
  return moments;
}

std::string_view to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::Breakpoints: return "breakpoints";
    case Integrator::Grid: return "grid";
    case Integrator::ParsevalAssembled: return "parseval-assembled";
  }
  return "unknown";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "breakpoints") return Integrator::Breakpoints;
  if (name == "grid") return Integrator::Grid;
  if (name == "parseval" || name == "parseval-assembled") return Integrator::ParsevalAssembled;
  throw InvalidParameter("unknown integrator '" + std::string(name) + "'");
}

double upper_bound_value(double y, double radius) {
  const double scaled = radius / std::sqrt(y);
  const double lg = std::max(1.0, std::log(scaled));
  return scaled * lg * lg + std::pow(y, 1.5) * radius;
}

namespace {

MeanSquareReport make_report(double y, double radius, Integrator method) {
  MeanSquareReport r;
  r.y = y;
  r.radius = radius;
  r.method = method;
  r.upper_bound_value = upper_bound_value(y, radius);
  return r;
}

void finish(MeanSquareReport& r) { r.ratio = r.mean_square / r.upper_bound_value; }

}  // namespace

MeanSquareReport meansquare_exact(double y, double radius) {
  const BreakpointSweep sweep = breakpoints(y, radius);
  const PiecewiseMoments moments = integrate_sweep(sweep, kPi * radius * radius);
  MeanSquareReport r = make_report(y, radius, Integrator::Breakpoints);
  r.mean_remainder = moments.mean;
  r.mean_square = moments.mean_square;
  r.error_bound = moments.error_bound;
  r.breakpoint_count = static_cast<std::int64_t>(sweep.events.size());
  finish(r);
  return r;
}

MeanSquareReport meansquare_grid(double y, double radius, std::int64_t grid_points) {
  check_arguments(y, radius);
  if (grid_points < 16) throw InvalidParameter("grid needs at least 16 points");
  const double area = kPi * radius * radius;
  CompensatedSum<double> first;
  CompensatedSum<double> second;
  const double step = 1.0 / static_cast<double>(grid_points);
  for (std::int64_t i = 0; i < grid_points; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * step;
    const double value = static_cast<double>(count_rowslice({x, y}, radius, 0.0).count) - area;
    first += value;
    second += value * value;
  }
  MeanSquareReport r = make_report(y, radius, Integrator::Grid);
  r.mean_remainder = first.value() * step;
  r.mean_square = second.value() * step;
  finish(r);
  return r;
}

double mean_remainder_closed(double y, double radius) {
  check_arguments(y, radius);
  return scaled_p_sum(y, radius) - kPi * radius * radius + center_row_correction(y, radius);
}

MeanSquareReport meansquare_parseval(double y, double radius, std::int64_t k_max,
                                     std::int64_t n_max) {
  check_arguments(y, radius);
  ParsevalEstimate est;
  if (k_max == 0 && n_max == 0) {
    est = parseval_meansquare(y, radius);
  } else {
    const std::int64_t rows = std::max<std::int64_t>(1, last_row(y, radius));
    const std::int64_t n = n_max > 0 ? n_max : default_nmax(y, radius);
    est = parseval_meansquare(y, radius, k_max > 0 ? k_max : n * rows, n);
  }
  const double mean = mean_remainder_closed(y, radius);
  MeanSquareReport r = make_report(y, radius, Integrator::ParsevalAssembled);
  r.mean_remainder = mean;
  r.mean_square = est.value + mean * mean;
  r.error_bound = est.error_bound;
  finish(r);
  return r;
}

LowerBoundWitness lower_bound_witness(double y, std::int64_t k) {
  if (k < 1) throw InvalidParameter("witness needs k >= 1");
  if (!(y > 0.0)) throw InvalidParameter("y must be positive");
  LowerBoundWitness w;
  w.radius = static_cast<double>(k) * std::sqrt(y);
  w.deficit = polygon_deficit(k);
  w.mean_remainder = -y * w.deficit + center_row_correction(y, w.radius);
  const MeanSquareReport exact = meansquare_exact(y, w.radius);
  w.mean_square = exact.mean_square;
  w.floor_value = w.mean_remainder * w.mean_remainder;
  const double slack = exact.error_bound + 8.0 * std::numeric_limits<double>::epsilon() * w.floor_value;
  w.floor_holds = w.mean_square + slack >= w.floor_value;
  return w;
}

std::vector<double> sweep_radii(const SweepConfig& config) {
  std::vector<double> radii;
  if (config.samples <= 0 || config.radius_min > config.radius_max) return radii;
  if (!(config.radius_min > 0.0)) throw InvalidParameter("radius_min must be positive");
  const auto n = config.samples;
  radii.reserve(static_cast<std::size_t>(n));
  if (n == 1) return {config.radius_min};
  const double lo = config.log_spaced ? std::log(config.radius_min) : config.radius_min;
  const double hi = config.log_spaced ? std::log(config.radius_max) : config.radius_max;
  for (std::int64_t i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    radii.push_back(config.log_spaced ? std::exp(t) : t);
  }
  radii.front() = config.radius_min;
  radii.back() = config.radius_max;
  return radii;
}

std::vector<MeanSquareReport> sweep(const SweepConfig& config, unsigned threads) {
  const std::vector<double> radii = sweep_radii(config);
  std::vector<double> ys = config.y_values;
  std::sort(ys.begin(), ys.end());

  std::vector<MeanSquareReport> rows;
  rows.reserve(ys.size() * radii.size());
  for (double y : ys)
    for (double t : radii) {
      MeanSquareReport r;
      r.y = y;
      r.radius = t;
      r.method = config.integrator;
      rows.push_back(r);
    }

  parallel_for(rows.size(), threads, [&](std::size_t i) {
    MeanSquareReport& row = rows[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (config.integrator) {
        case Integrator::Breakpoints:
          row = projected_events(row.y, row.radius) <= kMaxBreakpointEvents
                    ? meansquare_exact(row.y, row.radius)
                    : meansquare_grid(row.y, row.radius, config.grid_points);
          break;
        case Integrator::Grid: row = meansquare_grid(row.y, row.radius, config.grid_points); break;
        case Integrator::ParsevalAssembled: row = meansquare_parseval(row.y, row.radius); break;
      }
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.mean_remainder = row.mean_square = row.upper_bound_value = row.ratio = nan;
      row.error = e.what();
    }
    if (config.record_timing)
      row.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
  return rows;
}

namespace {

std::string sanitize(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<MeanSquareReport>& rows) {
  const bool with_errors =
      std::any_of(rows.begin(), rows.end(), [](const MeanSquareReport& r) { return !r.error.empty(); });
  out << kSweepCsvHeader << (with_errors ? ",error" : "") << '\n';
  for (const MeanSquareReport& r : rows) {
    out << format_real(r.radius) << ',' << format_real(r.y) << ',' << format_real(r.mean_square) << ','
        << format_real(r.mean_remainder) << ',' << format_real(r.upper_bound_value) << ','
        << format_real(r.ratio) << ',' << to_string(r.method) << ',' << r.breakpoint_count << ','
        << format_real(r.elapsed_ms);
    if (with_errors) out << ',' << sanitize(r.error);
    out << '\n';
  }
}

std::vector<MeanSquareReport> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kSweepCsvHeader, 0) != 0)
    throw InvalidParameter("sweep CSV: bad header");
  const bool with_errors = line.size() > kSweepCsvHeader.size();
  if (with_errors && line.substr(kSweepCsvHeader.size()) != ",error")
    throw InvalidParameter("sweep CSV: unexpected extra columns");

  std::vector<MeanSquareReport> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != (with_errors ? 10u : 9u)) throw InvalidParameter("sweep CSV: wrong field count");
    try {
      MeanSquareReport r;
      r.radius = std::stod(f[0]);
      r.y = std::stod(f[1]);
      r.mean_square = std::stod(f[2]);
      r.mean_remainder = std::stod(f[3]);
      r.upper_bound_value = std::stod(f[4]);
      r.ratio = std::stod(f[5]);
      r.method = parse_integrator(f[6]);
      r.breakpoint_count = std::stoll(f[7]);
      r.elapsed_ms = std::stod(f[8]);
      if (with_errors) r.error = f[9];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InvalidParameter("sweep CSV: malformed row '" + line + "'");
    }
  }
  return rows;
}

}  // namespace shearcount
