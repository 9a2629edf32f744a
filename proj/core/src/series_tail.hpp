#pragma once

#include <cmath>
#include <limits>

namespace armour::detail {

// Tail of a series whose last two retained terms have magnitudes `previous`
// and `last`, `step` orders apart, assuming geometric decay from there on.
inline double geometric_tail(double previous, double last, int step) {
  if (last == 0.0) {
    return 0.0;
  }
  if (!(previous > 0.0) || step <= 0) {
    return last;
  }
  const double q = std::pow(last / previous, 1.0 / step);
  if (!(q < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  // Factor 2 covers the slow approach of the ratio to its limit.
  return 2.0 * last * q / (1.0 - q);
}

}  // namespace armour::detail
