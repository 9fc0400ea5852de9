#include "shearcount/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shearcount/error.hpp"
#include "shearcount/exact_formula.hpp"
#include "shearcount/fourier.hpp"
#include "shearcount/io.hpp"
#include "shearcount/parallel.hpp"
#include "shearcount/shear_stats.hpp"

namespace shearcount {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kVerifyNmax = 512;
constexpr std::int64_t kCertificateStride = 10;

enum Check {
  kOracle,
  kDecomposition,
  kSymmetry,
  kRemainderVsH,
  kClosedMean,
  kMeanZero,
  kParseval,
  kCertificate,
  kCaseChecks
};

constexpr const char* kCheckNames[kCaseChecks] = {
    "oracle_equivalence",     "decomposition_identity",      "shear_symmetry",
    "remainder_minus_h",      "mean_remainder_closed", "mean_zero_h",
    "parseval_vs_breakpoints", "certificate_dominates"};

struct CaseResult {
  bool ran[kCaseChecks] = {};
  bool ok[kCaseChecks] = {};
};

std::string describe(const VerifyCase& c) {
  return "x=" + format_real(c.z.x) + " y=" + format_real(c.z.y) + " T=" + format_real(c.radius);
}

CaseResult check_case(const VerifyCase& c, std::int64_t index, bool inject_fault) {
  CaseResult r;
  auto record = [&r](Check which, bool ok) {
    r.ran[which] = true;
    r.ok[which] = ok;
  };
  const double y = c.z.y;
  const double radius = c.radius;
  const double area = kPi * radius * radius;
  const double scaled = radius / std::sqrt(y);

  const CountResult enumerated = count_enumerate(c.z, radius);
  CountResult sliced = count_rowslice(c.z, radius);
  if (inject_fault && index == 0) sliced.count += 1;
  record(kOracle, sliced.count == enumerated.count);

  const Decomposition d = lemma_count(c.z, radius);
  const double rounded = std::nearbyint(d.total);
  record(kDecomposition, static_cast<std::int64_t>(rounded) == enumerated.count &&
                     std::abs(d.total - rounded) < 1e-6);

  const auto mirrored = count_rowslice({-c.z.x, y}, radius).count;
  const auto shifted = count_rowslice({c.z.x + 1.0, y}, radius).count;
  record(kSymmetry, mirrored == sliced.count && shifted == sliced.count);

  if (scaled >= 1.0) {
    const double gap = std::abs((static_cast<double>(enumerated.count) - area) - h_sum(c.z, radius));
    bool ok = gap <= y * std::abs(p_error(scaled)) + 1.0 + 1e-9 * (1.0 + area);
    if (scaled >= 2.0) ok = ok && gap <= y * p_error_bound(scaled) + 1.0;
    record(kRemainderVsH, ok);
  }

  const BreakpointSweep sweep = breakpoints(y, radius);
  const double tolerance = 1e-9 * (1.0 + area);
  const PiecewiseMoments remainder_moments = integrate_sweep(sweep, area);
  record(kClosedMean, std::abs(remainder_moments.mean - mean_remainder_closed(y, radius)) <= tolerance);

  const double h_offset = scaled_p_sum(y, radius) + center_row_correction(y, radius);
  const PiecewiseMoments h_moments = integrate_sweep(sweep, h_offset);
  record(kMeanZero, std::abs(h_moments.mean) <= tolerance);

  const std::int64_t rows = std::max<std::int64_t>(1, last_row(y, radius));
  const ParsevalEstimate est = parseval_meansquare(y, radius, kVerifyNmax * rows, kVerifyNmax);
  record(kParseval, std::abs(est.value - h_moments.mean_square) <= est.error_bound + h_moments.error_bound);

  if (index % kCertificateStride == 0) {
    bool ok = true;
    for (std::int64_t a = 2; a <= 1024; a *= 2) ok = ok && est.value <= certificate(y, radius, a);
    record(kCertificate, ok);
  }
  return r;
}

}  // namespace

CaseSampler::CaseSampler(std::uint64_t seed, double tmax) : engine_(seed), tmax_(tmax) {
  if (!(tmax > 1.0)) throw InvalidParameter("tmax must exceed 1");
}

double CaseSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

VerifyCase CaseSampler::next() {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    VerifyCase c;
    c.z.x = uniform();
    c.z.y = 0.5 + 3.5 * uniform();
    c.radius = tmax_ - (tmax_ - 1.0) * uniform();
    const bool tie_free = count_enumerate(c.z, c.radius).ties == 0 &&
                          count_rowslice(c.z, c.radius).ties == 0 &&
                          count_rowslice({-c.z.x, c.z.y}, c.radius).ties == 0 &&
                          count_rowslice({c.z.x + 1.0, c.z.y}, c.radius).ties == 0 &&
                          lemma_count(c.z, c.radius).ties == 0;
    if (tie_free) return c;
  }
  throw std::runtime_error("could not sample a tie-free case in 1000 attempts");
}

std::vector<CheckOutcome> run_verification(const VerifyOptions& options) {
  if (options.cases < 0) throw InvalidParameter("case count must be nonnegative");
  CaseSampler sampler(options.seed, options.tmax);
  std::vector<VerifyCase> cases;
  cases.reserve(static_cast<std::size_t>(options.cases));
  for (std::int64_t i = 0; i < options.cases; ++i) cases.push_back(sampler.next());

  std::vector<CaseResult> results(cases.size());
  parallel_for(cases.size(), options.threads, [&](std::size_t i) {
    results[i] = check_case(cases[i], static_cast<std::int64_t>(i), options.inject_fault);
  });

  std::vector<CheckOutcome> outcomes;
  for (int check = 0; check < kCaseChecks; ++check) {
    CheckOutcome o;
    o.name = kCheckNames[check];
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].ran[check]) continue;
      ++o.checked;
      if (!results[i].ok[check]) {
        if (o.failed == 0) o.first_failure = describe(cases[i]);
        ++o.failed;
      }
    }
    outcomes.push_back(std::move(o));
  }

  CheckOutcome polygon{"polygon_area", 0, 0, {}};
  for (std::int64_t k = 1; k <= 200; ++k) {
    double area = polygon_area(k);
    if (options.inject_fault && options.cases == 0 && k == 1) area += 1.0;
    const double p = p_sum(static_cast<double>(k));
    ++polygon.checked;
    if (std::abs(area - p) > 1e-9 * p) {
      if (polygon.failed++ == 0) polygon.first_failure = "k=" + std::to_string(k);
    }
  }
  outcomes.push_back(std::move(polygon));

  CheckOutcome identity{"sawtooth_integral_identity", 0, 0, {}};
  for (double t : {5.0, 10.0, 50.0, 200.0}) {
    const SawtoothIdentity id = sawtooth_identity(t);
    ++identity.checked;
    const bool ok = std::abs(id.lhs - id.rhs) <= 1e-8 && id.integral >= 0.0 &&
                    id.integral <= id.integral_bound;
    if (!ok && identity.failed++ == 0) identity.first_failure = "T=" + format_real(t);
  }
  outcomes.push_back(std::move(identity));
  return outcomes;
}

}  // namespace shearcount
