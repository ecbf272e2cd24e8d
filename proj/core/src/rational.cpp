#include "crlcc/rational.hpp"

#include <cmath>

namespace crlcc {

Rational rational_from_double(double v, std::int64_t max_den) {
  for (std::int64_t d = 1; d <= max_den; ++d) {
    const double n = std::round(v * static_cast<double>(d));
    if (n / static_cast<double>(d) == v) return Rational(static_cast<std::int64_t>(n), d);
  }
  throw FormatError("value " + std::to_string(v) + " is not a small fraction");
}

}  // namespace crlcc
