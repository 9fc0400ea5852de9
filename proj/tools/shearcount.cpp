// shearcount: lattice point counts, remainder statistics and spectra for the
// shear family L_{x+iy}.
//
// Exit codes: 0 success, 1 usage, 2 ties, 3 range exceeded, 4 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shearcount/error.hpp"
#include "shearcount/exact_formula.hpp"
#include "shearcount/fourier.hpp"
#include "shearcount/io.hpp"
#include "shearcount/lattice.hpp"
#include "shearcount/parallel.hpp"
#include "shearcount/shear_stats.hpp"
#include "shearcount/verify.hpp"

namespace sc = shearcount;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kTies = 2, kRange = 3, kVerifyFailed = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

struct CountFlags {
  double x = 0.0;
  double y = 1.0;
  double radius = 0.0;
  std::string method = "rowslice";
  double eps = sc::kDefaultTieEps;
  bool json = false;
};

int run_count(const CountFlags& f) {
  require(f.y > 0.0, "--y must be positive");
  require(f.radius > 0.0, "--radius must be positive");
  require(f.eps >= 0.0, "--eps must be nonnegative");
  const sc::CountMethod method = sc::parse_count_method(f.method);
  const sc::CountResult r = sc::count_points({f.x, f.y}, f.radius, method, f.eps);
  const double remainder = static_cast<double>(r.count) - std::numbers::pi * f.radius * f.radius;
  if (f.json) {
    nlohmann::ordered_json out;
    out["count"] = r.count;
    out["remainder"] = remainder;
    out["ties"] = r.ties;
    out["method"] = std::string(sc::to_string(r.method));
    if (r.ties > 0) out["warning"] = "boundary ties present; count is ambiguous at this tolerance";
    std::cout << out.dump() << '\n';
  } else {
    std::cout << r.count << '\n';
    if (r.ties > 0)
      std::cerr << "warning: " << r.ties << " boundary tie(s); count is ambiguous at this tolerance\n";
  }
  return r.ties > 0 ? kTies : kOk;
}

struct MeanSquareFlags {
  double y = 0.0;
  double radius = 0.0;
  std::string integrator = "breakpoints";
  std::optional<std::int64_t> grid_points;
  std::optional<std::int64_t> k_max;
  std::optional<std::int64_t> n_max;
  std::string out;
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  require(file.good(), "cannot open --out '" + path + "' for writing");
  return file;
}

int run_meansquare(const MeanSquareFlags& f) {
  require(f.y > 0.0, "--y must be positive");
  require(f.radius > 0.0, "--radius must be positive");
  const sc::Integrator integrator = sc::parse_integrator(f.integrator);
  require(!f.grid_points || integrator == sc::Integrator::Grid,
          "--grid-points only applies to --integrator grid");
  require(!(f.k_max || f.n_max) || integrator == sc::Integrator::ParsevalAssembled,
          "--kmax/--nmax only apply to --integrator parseval");
  require(!f.grid_points || *f.grid_points >= 16, "--grid-points must be at least 16");
  require(!f.k_max || *f.k_max >= 1, "--kmax must be at least 1");
  require(!f.n_max || *f.n_max >= 1, "--nmax must be at least 1");

  sc::MeanSquareReport report;
  switch (integrator) {
    case sc::Integrator::Breakpoints: report = sc::meansquare_exact(f.y, f.radius); break;
    case sc::Integrator::Grid: report = sc::meansquare_grid(f.y, f.radius, f.grid_points.value_or(1 << 16)); break;
    case sc::Integrator::ParsevalAssembled:
      report = sc::meansquare_parseval(f.y, f.radius, f.k_max.value_or(0), f.n_max.value_or(0));
      break;
  }
  std::ofstream file;
  sc::write_sweep_csv(open_output(f.out, file), {report});
  return kOk;
}

struct SweepFlags {
  std::vector<double> y_values;
  double radius_min = 0.0;
  double radius_max = 0.0;
  std::int64_t samples = 0;
  bool log_spaced = false;
  std::string integrator = "breakpoints";
  std::int64_t grid_points = 1 << 16;
  bool timing = false;
  std::string out;
};

int run_sweep(const SweepFlags& f, unsigned threads) {
  for (double y : f.y_values) require(y > 0.0, "--y values must be positive");
  require(f.samples >= 0, "--samples must be nonnegative");
  require(f.grid_points >= 16, "--grid-points must be at least 16");
  require(f.samples == 0 || f.radius_min > 0.0, "--radius-min must be positive");

  sc::SweepConfig config;
  config.y_values = f.y_values;
  config.radius_min = f.radius_min;
  config.radius_max = f.radius_max;
  config.samples = f.samples;
  config.log_spaced = f.log_spaced;
  config.integrator = sc::parse_integrator(f.integrator);
  config.grid_points = f.grid_points;
  config.record_timing = f.timing;

  std::ofstream file(f.out);
  require(file.good(), "cannot open --out '" + f.out + "' for writing");
  const std::vector<sc::MeanSquareReport> rows = sc::sweep(config, threads);
  sc::write_sweep_csv(file, rows);
  file.close();
  require(!file.fail(), "failed writing '" + f.out + "'");

  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  if (failed > 0) std::cerr << "warning: " << failed << " of " << rows.size() << " rows failed\n";
  if (!rows.empty() && failed == rows.size()) {
    std::cerr << "error: no sweep row succeeded\n";
    return kRange;
  }
  return kOk;
}

struct SpectrumFlags {
  double y = 0.0;
  double radius = 0.0;
  std::int64_t k_max = 0;
  std::optional<std::int64_t> n_max;
  std::string out;
};

int run_spectrum(const SpectrumFlags& f) {
  require(f.y > 0.0, "--y must be positive");
  require(f.radius > 0.0, "--radius must be positive");
  require(f.k_max >= 1, "--kmax must be at least 1");
  require(!f.n_max || *f.n_max >= 1, "--nmax must be at least 1");
  // harmonics beyond k_max cannot reach any retained coefficient
  const sc::FourierSpectrum s = sc::spectrum(f.y, f.radius, f.k_max, f.n_max.value_or(f.k_max));
  std::ofstream file;
  sc::write_spectrum_csv(open_output(f.out, file), s);
  return kOk;
}

struct VerifyFlags {
  std::uint64_t seed = 42;
  std::int64_t cases = 500;
  double tmax = 150.0;
  bool inject_fault = false;
};

int run_verify(const VerifyFlags& f, unsigned threads) {
  require(f.cases >= 0, "--cases must be nonnegative");
  require(f.tmax > 1.0, "--tmax must exceed 1");
  sc::VerifyOptions options;
  options.seed = f.seed;
  options.cases = f.cases;
  options.tmax = f.tmax;
  options.threads = threads;
  options.inject_fault = f.inject_fault;
  if (f.cases == 0) std::cout << "warning: --cases 0, per-case checks pass vacuously\n";

  const std::vector<sc::CheckOutcome> outcomes = sc::run_verification(options);
  bool all_passed = true;
  std::printf("%-28s %8s %8s  %s\n", "check", "checked", "failed", "status");
  for (const auto& o : outcomes) {
    std::printf("%-28s %8lld %8lld  %s\n", o.name.c_str(), static_cast<long long>(o.checked),
                static_cast<long long>(o.failed), o.passed() ? "PASS" : "FAIL");
    if (!o.passed()) {
      std::printf("    first failure: %s (seed=%llu)\n", o.first_failure.c_str(),
                  static_cast<unsigned long long>(f.seed));
      all_passed = false;
    }
  }
  return all_passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice point counting and mean-square statistics for shears of unimodular lattices"};
  app.require_subcommand(1);

  CountFlags count;
  auto* count_cmd = app.add_subcommand("count", "count lattice points strictly inside radius T");
  count_cmd->add_option("--x", count.x, "shear coordinate");
  count_cmd->add_option("--y", count.y, "height (> 0)");
  count_cmd->add_option("--radius", count.radius, "radius T (> 0)")->required();
  count_cmd->add_option("--method", count.method, "enumerate | rowslice | formula")
      ->check(CLI::IsMember({"enumerate", "rowslice", "formula"}));
  count_cmd->add_option("--eps", count.eps, "relative tie tolerance");
  count_cmd->add_flag("--json", count.json, "emit JSON");

  MeanSquareFlags ms;
  auto* ms_cmd = app.add_subcommand("meansquare", "mean and mean square of the remainder over x");
  ms_cmd->add_option("--y", ms.y, "height (> 0)")->required();
  ms_cmd->add_option("--radius", ms.radius, "radius T (> 0)")->required();
  ms_cmd->add_option("--integrator", ms.integrator, "breakpoints | grid | parseval")
      ->check(CLI::IsMember({"breakpoints", "grid", "parseval", "parseval-assembled"}));
  ms_cmd->add_option("--grid-points", ms.grid_points, "grid nodes (grid integrator)");
  ms_cmd->add_option("--kmax", ms.k_max, "largest frequency (parseval integrator)");
  ms_cmd->add_option("--nmax", ms.n_max, "largest sawtooth harmonic (parseval integrator)");
  ms_cmd->add_option("--out", ms.out, "output CSV path (default: stdout)");

  SweepFlags sw;
  auto* sw_cmd = app.add_subcommand("sweep", "mean-square sweep over (y, T)");
  sw_cmd->add_option("--y", sw.y_values, "heights, repeatable or comma separated")->required()->delimiter(',');
  sw_cmd->add_option("--radius-min", sw.radius_min, "smallest radius")->required();
  sw_cmd->add_option("--radius-max", sw.radius_max, "largest radius")->required();
  sw_cmd->add_option("--samples", sw.samples, "radii per height")->required();
  sw_cmd->add_flag("--log", sw.log_spaced, "log-spaced radii");
  sw_cmd->add_option("--integrator", sw.integrator, "breakpoints | grid | parseval")
      ->check(CLI::IsMember({"breakpoints", "grid", "parseval", "parseval-assembled"}));
  sw_cmd->add_option("--grid-points", sw.grid_points, "grid nodes for the grid integrator and fallback");
  sw_cmd->add_flag("--timing", sw.timing, "fill elapsed_ms (output is then not reproducible)");
  sw_cmd->add_option("--out", sw.out, "output CSV path")->required();

  SpectrumFlags sp;
  auto* sp_cmd = app.add_subcommand("spectrum", "cosine coefficients of H_T in x");
  sp_cmd->add_option("--y", sp.y, "height (> 0)")->required();
  sp_cmd->add_option("--radius", sp.radius, "radius T (> 0)")->required();
  sp_cmd->add_option("--kmax", sp.k_max, "number of coefficients")->required();
  sp_cmd->add_option("--nmax", sp.n_max, "largest sawtooth harmonic (default: kmax)");
  sp_cmd->add_option("--out", sp.out, "output CSV path (default: stdout)");

  VerifyFlags vf;
  auto* vf_cmd = app.add_subcommand("verify", "run the seeded invariant suite");
  vf_cmd->add_option("--seed", vf.seed, "mt19937_64 seed");
  vf_cmd->add_option("--cases", vf.cases, "random cases");
  vf_cmd->add_option("--tmax", vf.tmax, "largest sampled radius");
  vf_cmd->add_flag("--inject-fault", vf.inject_fault, "corrupt one count to test the harness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count_cmd) return run_count(count);
    if (*ms_cmd) return run_meansquare(ms);
    if (*sp_cmd) return run_spectrum(sp);
    const unsigned threads = sc::default_thread_count();
    if (*sw_cmd) return run_sweep(sw, threads);
    if (*vf_cmd) return run_verify(vf, threads);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sc::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sc::RangeExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (*ms_cmd) std::cerr << "hint: try --integrator grid\n";
    return kRange;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
