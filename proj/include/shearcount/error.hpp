#pragma once

#include <stdexcept>
#include <string>

namespace shearcount {

/// Argument outside an operation's domain (T <= 0, y <= 0, M > T - 1, ...).
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input beyond the supported double-precision regime or memory budget.
class RangeExceeded : public std::range_error {
public:
  using std::range_error::range_error;
};

/// Largest supported T / sqrt(y). Fractional parts of arguments of size up to
/// sqrt(y) * T keep at least 9 significant digits below this.
inline constexpr double kMaxScaledRadius = 1e6;

}  // namespace shearcount
