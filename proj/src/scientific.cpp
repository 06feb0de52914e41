#include "factorx/scientific.hpp"

#include <cmath>
#include <cstdio>

#include "factorx/errors.hpp"

namespace factorx {

Scientific to_scientific(long double log_value, int digits) {
  if (!std::isfinite(log_value)) throw DomainError("cannot render a non-finite logarithm");
  if (digits < 1 || digits > 18) throw DomainError("digits must be in 1..18");
  const long double log10_value = log_value / std::log(10.0L);
  long long exponent = static_cast<long long>(std::floor(log10_value));
  long double mantissa = std::pow(10.0L, log10_value - exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits - 1, mantissa);
  // Rounding can carry into a new leading digit.
  if (buf[0] == '1' && buf[1] == '0' && buf[2] == '.') {
    ++exponent;
    std::snprintf(buf, sizeof buf, "%.*Lf", digits - 1, mantissa / 10);
  }
  return {buf, exponent};
}

}  // namespace factorx
