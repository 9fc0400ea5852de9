#include "shearcount/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "shearcount/error.hpp"

namespace shearcount {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spectrum) {
  out << "k,c_k\n";
  for (std::int64_t k = 1; k <= spectrum.k_max; ++k)
    out << k << ',' << format_real(spectrum.coefficient(k)) << '\n';
  out << "# l2_truncation_bound=" << format_real(spectrum.l2_truncation_bound) << '\n';
}

FourierSpectrum read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "k,c_k") throw InvalidParameter("spectrum CSV: bad header");
  std::vector<double> coeffs;
  FourierSpectrum s;
  const std::string bound_tag = "# l2_truncation_bound=";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind(bound_tag, 0) == 0) {
      s.l2_truncation_bound = std::stod(line.substr(bound_tag.size()));
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidParameter("spectrum CSV: malformed row '" + line + "'");
    const long long k = std::stoll(line.substr(0, comma));
    if (k != static_cast<long long>(coeffs.size()) + 1)
      throw InvalidParameter("spectrum CSV: rows out of order");
    coeffs.push_back(std::stod(line.substr(comma + 1)));
  }
  s.k_max = static_cast<std::int64_t>(coeffs.size());
  s.coeffs = Eigen::Map<Eigen::VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  return s;
}

}  // namespace shearcount
