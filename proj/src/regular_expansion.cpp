#include "factorx/regular_expansion.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "factorx/errors.hpp"

namespace factorx {

long double stirling_xi(long double N) {
  if (!(N > 0)) throw DomainError("xi(N) needs N > 0");
  if (N < 7) {
    return std::lgamma(N + 1) - (N * std::log(N) - N + 0.5L * std::log(2 * std::numbers::pi_v<long double> * N));
  }
  // Stirling series sum_k B_2k / (2k (2k-1) N^(2k-1)); at N >= 7 the first
  // omitted term is below 1e-16.
  static constexpr std::array<long double, 8> kCoeff = {
      1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680,
      1.0L / 1188, -691.0L / 360360, 1.0L / 156, -3617.0L / 122400};
  const long double inv = 1 / N;
  const long double inv2 = inv * inv;
  long double acc = 0;
  for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

RegularCorrections corrections(int n, int d) {
  if (d < 2 || d > n - 3) throw DomainError("corrections need 2 <= d <= n-3");
  const long double dn = n;
  const long double lambda = static_cast<long double>(d) / (n - 1);
  const long double eps1 = std::log1p(-1 / dn) + (dn - 1) * std::log1p(-2 / dn);
  const long double eps2 = dn * stirling_xi(dn - 1) - dn * stirling_xi(lambda * (dn - 1)) -
                           dn * stirling_xi((1 - lambda) * (dn - 1)) -
                           0.5L * dn * std::log1p(-1 / dn);
  return {eps1, eps2};
}

long double p_poly(int j, long double x, bool allow_conjectural) {
  const long double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
  switch (j) {
    case 1: return x / 4;
    case 2: return -x2 / 4;
    case 3: return (2 - 23 * x) * x2 / 24;
    case 4: return (22 - 129 * x) * x3 / 24;
    case 5: return -(3 - 115 * x + 483 * x2) * x3 / 12;
    case 6: return -(375 - 6615 * x + 22097 * x2) * x4 / 60;
    case 7: return (1046 - 87318 * x + 1002900 * x2 - 2791541 * x3) * x4 / 720;
    case 8:
    case 9:
      if (!allow_conjectural) {
        throw DomainError("p_" + std::to_string(j) + " is conjectural; enable it explicitly");
      }
      if (j == 8) return (104594 - 3726282 * x + 31805060 * x2 - 75882319 * x3) * x5 / 1680;
      return -(2235 - 329800 * x + 7204710 * x2 - 48922725 * x3 + 102061471 * x4) * x5 / 180;
    default:
      throw DomainError("p_j is only available for 1 <= j <= 9");
  }
}

RegularExpansionResult rg_log_expansion(int n, int d, int k, bool allow_conjectural) {
  const int k_max = allow_conjectural ? 9 : 7;
  if (k < 1 || k > k_max) {
    throw DomainError("k must lie in 1.." + std::to_string(k_max));
  }
  if (d < 1 || d > n - 2) throw DomainError("regular expansion needs 1 <= d <= n-2");
  RegularExpansionResult res{};
  res.k = k;
  res.conjectural = k > 7;
  if (static_cast<long long>(n) * d % 2 != 0) {
    res.log_value = -std::numeric_limits<long double>::infinity();
    return res;
  }
  const long double dn = n;
  const long double lambda = static_cast<long double>(d) / (n - 1);
  const long double Lambda = lambda * (1 - lambda);
  const long double log_binom =
      std::lgamma(dn) - std::lgamma(static_cast<long double>(d) + 1) - std::lgamma(dn - d);
  res.corrections.base_log = 0.5L * std::numbers::ln2_v<long double> +
                             dn * (dn - 1) / 2 *
                                 (lambda * std::log(lambda) + (1 - lambda) * std::log1p(-lambda)) +
                             dn * log_binom;
  if (d >= 2 && d <= n - 3) {
    const auto c = corrections(n, d);
    res.corrections.eps1 = c.eps1;
    res.corrections.eps2 = c.eps2;
  }
  long double value = res.corrections.base_log;
  long double scale = Lambda;  // Lambda^j n^(j-1)
  for (int j = 1; j <= k; ++j) {
    const long double term = p_poly(j, Lambda, allow_conjectural) / scale;
    res.terms.push_back(term);
    value += term;
    scale *= Lambda * dn;
  }
  res.log_value = value;
  return res;
}

}  // namespace factorx
