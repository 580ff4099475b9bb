#pragma once

#include <cmath>

namespace pinball {

/// Positive quantity held as its base-2 logarithm.
struct LogValue {
  double log2 = 0.0;

  /// Underflows to 0 or overflows to inf outside the double range.
  double value() const { return std::exp2(log2); }
};

}  // namespace pinball
