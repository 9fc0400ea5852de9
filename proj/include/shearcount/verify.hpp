#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shearcount/lattice.hpp"

namespace shearcount {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::int64_t cases = 500;
  double tmax = 150.0;
  unsigned threads = 1;
  /// Corrupt one count so the harness must report a failure.
  bool inject_fault = false;
};

struct CheckOutcome {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t failed = 0;
  std::string first_failure;  ///< parameters of the first failing case

  bool passed() const { return failed == 0; }
};

struct VerifyCase {
  ShearPoint z;
  double radius = 0.0;
};

/// Seeded sampler shared by the verifier and the acceptance suite.
/// Generator: std::mt19937_64; a uniform draw is (next() >> 11) * 2^-53.
/// Draws x in [0,1), y in [0.5, 4] and T in (1, tmax], resampling (up to 1000
/// times) until enumerate, rowslice and the decomposition report no ties at
/// x, -x and x + 1.
class CaseSampler {
public:
  CaseSampler(std::uint64_t seed, double tmax);

  VerifyCase next();

private:
  double uniform();

  std::mt19937_64 engine_;
  double tmax_;
};

/// Runs the invariant suite; one outcome per check.
std::vector<CheckOutcome> run_verification(const VerifyOptions& options);

}  // namespace shearcount
