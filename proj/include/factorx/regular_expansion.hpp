#pragma once

#include <optional>
#include <vector>

namespace factorx {

/// xi(N) = ln N! - (N ln N - N + ln(2 pi N) / 2), for real N > 0.
long double stirling_xi(long double N);

struct RegularCorrections {
  long double eps1;
  long double eps2;
};

/// eps1 = ln(1 - 1/n) + (n-1) ln(1 - 2/n) and
/// eps2 = n xi(n-1) - n xi(lambda(n-1)) - n xi((1-lambda)(n-1)) - (n/2) ln(1 - 1/n),
/// with lambda = d/(n-1). Requires 2 <= d <= n-3.
RegularCorrections corrections(int n, int d);

/// The polynomials p_1..p_7 of the regular-graph expansion; p_8 and p_9 are
/// conjectural and need allow_conjectural.
long double p_poly(int j, long double x, bool allow_conjectural = false);

struct RegularExpansionResult {
  long double log_value;     // -inf when nd is odd (no regular graphs)
  std::vector<long double> terms;  // p_j(Lambda) / (Lambda^j n^(j-1)), j = 1..k
  struct Corrections {
    std::optional<long double> eps1;
    std::optional<long double> eps2;
    long double base_log;  // ln sqrt2 + C(n,2) ln(l^l (1-l)^(1-l)) + n ln C(n-1, d)
  } corrections;
  int k;
  bool conjectural;  // true iff p_8 or p_9 contributed
};

/// ln RG(n, d) truncated after k terms of the expansion in 1/(Lambda n).
RegularExpansionResult rg_log_expansion(int n, int d, int k, bool allow_conjectural = false);

}  // namespace factorx
