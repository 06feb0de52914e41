#pragma once

#include <string>

namespace factorx {

// A positive number written as mantissa x 10^exponent, 1 <= mantissa < 10.
struct Scientific {
  std::string mantissa;
  long long exponent;
};

/// Renders exp(log_value) with the given number of significant digits.
Scientific to_scientific(long double log_value, int digits = 11);

}  // namespace factorx
