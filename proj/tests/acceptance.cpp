// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "shearcount/exact_formula.hpp"
#include "shearcount/fourier.hpp"
#include "shearcount/lattice.hpp"
#include "shearcount/parallel.hpp"
#include "shearcount/shear_stats.hpp"
#include "shearcount/verify.hpp"

using namespace shearcount;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

class Criterion {
public:
  Criterion(int id, std::string title)
      : id_(id), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void finish(double time_limit = 0.0) {
    const double elapsed = seconds();
    if (time_limit > 0.0 && elapsed > time_limit) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "runtime %.1fs exceeds %.0fs", elapsed, time_limit);
      fail(buf);
    }
    std::printf("[%s] C%-2d %s (%.2fs)", failures_ == 0 ? "PASS" : "FAIL", id_, title_.c_str(), elapsed);
    if (!notes_.empty()) std::printf(" | %s", notes_.c_str());
    if (failures_ > 0) std::printf(" | %ld failure(s), first: %s", static_cast<long>(failures_), first_.c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (failures_ > 0) ++g_failures;
  }

private:
  int id_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  long failures_ = 0;
  std::string first_;
  std::string notes_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = i == n - 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

void counting_criteria() {
  Criterion c1(1, "decomposition reproduces the enumerated count on 500 seeded cases");
  Criterion c2(2, "rowslice equals enumerate on the same cases");
  CaseSampler sampler(42, 150.0);
  double worst_frac = 0.0;
  for (int i = 0; i < 500; ++i) {
    const VerifyCase vc = sampler.next();
    const std::string where = fmt("x=%.17g y=%.17g T=%.17g", vc.z.x, vc.z.y, vc.radius);
    const CountResult e = count_enumerate(vc.z, vc.radius);
    const CountResult r = count_rowslice(vc.z, vc.radius);
    const Decomposition d = lemma_count(vc.z, vc.radius);
    const double frac = std::abs(d.total - std::nearbyint(d.total));
    worst_frac = std::max(worst_frac, frac);
    c1.expect(static_cast<std::int64_t>(std::nearbyint(d.total)) == e.count, where);
    c1.expect(frac < 1e-6, where + fmt(" frac=%.3g", frac));
    c2.expect(r.count == e.count, where);
  }
  c1.note(fmt("max |total - round(total)| = %.3g", worst_frac));
  c1.finish(60.0);
  c2.finish(60.0);
}

void p_sum_criteria() {
  Criterion c3(3, "P(T) error within the explicit bound and 9 sqrt(T)");
  double sup_sqrt = 0.0, sup_bound = 0.0;
  for (double t : log_space(2.0, 1e4, 200)) {
    const double err = std::abs(p_error(t));
    sup_sqrt = std::max(sup_sqrt, err / std::sqrt(t));
    sup_bound = std::max(sup_bound, err / p_error_bound(t));
    c3.expect(err <= p_error_bound(t), fmt("T=%.17g exceeds p_error_bound", t));
    c3.expect(err <= kPErrorSqrtConstant * std::sqrt(t), fmt("T=%.17g exceeds 9 sqrt(T)", t));
  }
  c3.note(fmt("max err/sqrt(T) = %.4f, max err/bound = %.4f", sup_sqrt, sup_bound));
  c3.finish(30.0);

  Criterion c4(4, "integration-by-parts identity and 0 <= I_T(M) <= M/(8 f_T(M))");
  double worst = 0.0;
  for (double t : {5.0, 10.0, 50.0, 200.0}) {
    const SawtoothIdentity id = sawtooth_identity(t);
    const double gap = std::abs(id.lhs - id.rhs);
    worst = std::max(worst, gap);
    c4.expect(gap <= 1e-8, fmt("T=%g residual %.3g", t, gap));
    c4.expect(id.integral >= 0.0 && id.integral <= id.integral_bound,
              fmt("T=%g I=%.6g bound=%.6g", t, id.integral, id.integral_bound));
  }
  c4.note(fmt("max residual %.3g", worst));
  c4.finish();
}

void mean_criteria() {
  Criterion c5(5, "breakpoint-exact integral of H vanishes");
  Criterion c6(6, "exact mean remainder equals the closed form");
  double worst5 = 0.0, worst6 = 0.0;
  for (double y : {0.7, 1.0, 2.5})
    for (double t : {1.5, 7.3, 20.0, 50.0}) {
      const double tol = 1e-9 * (1.0 + kPi * t * t);
      const BreakpointSweep sw = breakpoints(y, t);
      const double offset = scaled_p_sum(y, t) + center_row_correction(y, t);
      const double h_mean = integrate_sweep(sw, offset).mean;
      const double gap = std::abs(meansquare_exact(y, t).mean_remainder - mean_remainder_closed(y, t));
      worst5 = std::max(worst5, std::abs(h_mean) / tol);
      worst6 = std::max(worst6, gap / tol);
      c5.expect(std::abs(h_mean) <= tol, fmt("y=%g T=%g int H=%.3g", y, t, h_mean));
      c6.expect(gap <= tol, fmt("y=%g T=%g gap=%.3g", y, t, gap));
    }
  c5.note(fmt("max |int H| / tol = %.3g", worst5));
  c6.note(fmt("max gap / tol = %.3g", worst6));
  c5.finish();
  c6.finish();
}

struct GridPoint {
  double y, radius;
};

std::vector<GridPoint> parseval_grid() {
  std::vector<GridPoint> grid;
  for (double y : {0.7, 1.0, 2.5})
    for (double t : {1.5, 7.3, 20.0, 50.0, 95.0 * std::sqrt(y)})
      if (t / std::sqrt(y) <= 100.0) grid.push_back({y, t});
  return grid;
}

void parseval_criteria(unsigned threads) {
  const std::vector<GridPoint> grid = parseval_grid();
  std::vector<ParsevalEstimate> est(grid.size());
  std::vector<MeanSquareReport> exact(grid.size());
  Criterion c7(7, "Parseval value within its error bound of the breakpoint integral");
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    est[i] = parseval_meansquare(grid[i].y, grid[i].radius);
    exact[i] = meansquare_exact(grid[i].y, grid[i].radius);
  });
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& [y, t] = grid[i];
    const double h2 = exact[i].mean_square - exact[i].mean_remainder * exact[i].mean_remainder;
    const double gap = std::abs(est[i].value - h2);
    c7.expect(gap <= est[i].error_bound + exact[i].error_bound,
              fmt("y=%g T=%g gap=%.3g bound=%.3g", y, t, gap, est[i].error_bound));
    if (est[i].value > 0.1) {
      worst_rel = std::max(worst_rel, est[i].error_bound / est[i].value);
      c7.expect(est[i].error_bound <= 0.01 * est[i].value,
                fmt("y=%g T=%g error_bound/value=%.3g", y, t, est[i].error_bound / est[i].value));
    }
  }
  c7.note(fmt("%g points, max error_bound/value = %.4f", static_cast<double>(grid.size()), worst_rel));
  c7.finish(300.0);

  Criterion c8(8, "certificate dominates the Parseval value for A = 2..1024");
  double tightest = INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::int64_t a = 2; a <= 1024; a += 2) {
      const double cert = certificate(grid[i].y, grid[i].radius, a);
      if (est[i].value > 0.0) tightest = std::min(tightest, cert / est[i].value);
      c8.expect(est[i].value <= cert,
                fmt("y=%g T=%g A=%g value=%.6g", grid[i].y, grid[i].radius, static_cast<double>(a), est[i].value));
    }
  c8.note(fmt("min certificate/value over nonzero values = %.3g", tightest));
  c8.finish();
}

void sweep_criterion(unsigned threads) {
  Criterion c9(9, "upper-bound sweep: finite ratios, tail max <= 2x head max");
  SweepConfig config;
  config.y_values = {1.0, 2.0, 5.0};
  config.radius_min = 10.0;
  config.radius_max = 2000.0;
  config.samples = 40;
  config.log_spaced = true;
  config.integrator = Integrator::Breakpoints;
  const auto rows = sweep(config, threads);
  double sup = 0.0;
  for (double y : config.y_values) {
    double head = 0.0, tail = 0.0;
    for (const auto& r : rows) {
      if (r.y != y) continue;
      if (!r.error.empty() || !std::isfinite(r.ratio)) {
        c9.fail(fmt("y=%g T=%g ratio not finite", y, r.radius));
        continue;
      }
      c9.expect(r.method == Integrator::Breakpoints, fmt("y=%g T=%g fell back to the grid", y, r.radius));
      (r.radius <= 500.0 ? head : tail) = std::max(r.radius <= 500.0 ? head : tail, r.ratio);
      sup = std::max(sup, r.ratio);
    }
    c9.expect(tail <= 2.0 * head, fmt("y=%g tail max %.4g > 2 x head max %.4g", y, tail, head));
    c9.note(fmt("y=%g: head %.4f tail %.4f", y, head, tail));
  }
  c9.note(fmt("observed sup %.6f (recorded %.6f)", sup, kObservedRatioSup));
  c9.finish(1800.0);
}

void witness_criteria() {
  Criterion c10(10, "lower-bound witnesses at T = k sqrt(y)");
  double min_ratio = INFINITY;
  for (double y : {1.0, 4.0})
    for (std::int64_t k = 2; k <= 100; ++k) {
      const LowerBoundWitness w = lower_bound_witness(y, k);
      const double kd = static_cast<double>(k);
      min_ratio = std::min(min_ratio, w.deficit / std::sqrt(kd));
      c10.expect(w.mean_square >= w.mean_remainder * w.mean_remainder, fmt("y=%g k=%g Cauchy-Schwarz", y, kd));
      c10.expect(w.mean_remainder < 0.0, fmt("y=%g k=%g mean_remainder=%.6g", y, kd, w.mean_remainder));
      c10.expect(w.deficit >= kDeficitFloor * std::sqrt(kd), fmt("y=%g k=%g deficit=%.6g", y, kd, w.deficit));
    }
  c10.note(fmt("min deficit/sqrt(k) = %.4f, c0 = %g", min_ratio, kDeficitFloor));
  c10.finish();

  Criterion c11(11, "inscribed polygon area equals P(k)");
  double worst = 0.0;
  for (std::int64_t k = 1; k <= 500; ++k) {
    const double p = p_sum(static_cast<double>(k));
    const double rel = std::abs(polygon_area(k) - p) / p;
    worst = std::max(worst, rel);
    c11.expect(rel <= 1e-9, fmt("k=%g rel=%.3g", static_cast<double>(k), rel));
  }
  c11.note(fmt("max relative gap %.3g", worst));
  c11.finish();
}

void determinism_criterion() {
  Criterion c12(12, "sweep CSV identical for 1 and 4 threads");
  SweepConfig config;
  config.y_values = {0.7, 1.0, 2.5};
  config.radius_min = 2.0;
  config.radius_max = 300.0;
  config.samples = 15;
  config.log_spaced = true;
  std::ostringstream a, b;
  write_sweep_csv(a, sweep(config, 1));
  write_sweep_csv(b, sweep(config, 4));
  c12.expect(!a.str().empty() && a.str() == b.str(), "CSV output differs");
  c12.finish();
}

}  // namespace

int main() {
  unsigned threads = 1;
  try {
    threads = default_thread_count();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  counting_criteria();
  p_sum_criteria();
  mean_criteria();
  parseval_criteria(threads);
  sweep_criterion(threads);
  witness_criteria();
  determinism_criterion();
  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
