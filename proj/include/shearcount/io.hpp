#pragma once

#include <iosfwd>
#include <string>

#include "shearcount/fourier.hpp"

namespace shearcount {

/// 17 significant digits, enough to round-trip a double.
std::string format_real(double value);

/// `k,c_k` rows followed by `# l2_truncation_bound=<value>`.
void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spectrum);
/// Parses what write_spectrum_csv emits; n_max is not stored and is left 0.
FourierSpectrum read_spectrum_csv(std::istream& in);

}  // namespace shearcount
