#pragma once

#include <optional>
#include <vector>

#include "factorx/beta.hpp"
#include "factorx/cumulants.hpp"
#include "factorx/gaussian_model.hpp"
#include "factorx/graph.hpp"

namespace factorx {

/// Natural-log estimate of N(G, d) with its itemized parts.
struct Estimate {
  double log_value = 0;
  struct Breakdown {
    double log_M = 0;
    double gaussian_prefactor = 0;  // ln 2 - (n/2) ln(2 pi Lambda n) - ln det(A) / 2
    std::vector<double> kappa;      // kappa_r(R(Y)) / r! for r = 1..r0
  } breakdown;
  struct Orders {
    int ell0 = 0;
    int r0 = 0;
    double p = 0;
    double sigma = 0;
  } orders;

  // log_M + gaussian_prefactor + sum(kappa), in that order.
  double sum_of_parts() const;
};

/// ln M(G, d) = sum_j delta_j beta_j - sum_{jk} [lambda ln lambda + (1-lambda) ln(1-lambda)].
double log_M(const Graph& g, const DegreeSequence& d, const BetaState& state);

struct TruncationOrders {
  int ell0;
  int r0;
};
TruncationOrders truncation_orders(double p, double sigma);

/// ln(m + 1) / ln n with m = min_j min(d_j, g_j - d_j), clipped to (0, 1].
double default_sigma(const Graph& g, const DegreeSequence& d);

enum class BetaSource { solve, approximate };

struct EstimateOptions {
  double p = 1.0;
  std::optional<double> sigma;
  std::optional<int> ell0;  // explicit orders override p and sigma
  std::optional<int> r0;
  BetaSource beta_source = BetaSource::solve;
  BetaSolverOptions solver;
  CumulantOptions cumulants;
};

/// Linear delta terms plus the edge terms b_l(lambda_jk) for l = 3..ell0.
MonomialSum remainder_polynomial(const Graph& g, const BetaState& state, int ell0);

/// Assembles the estimate from an already computed beta state.
Estimate estimate_from_state(const Graph& g, const BetaState& state, int ell0, int r0,
                             const CumulantOptions& opts = {});

Estimate estimate_log_count(const Graph& g, const DegreeSequence& d, const EstimateOptions& opts = {});

/// lambda_uv(beta): the estimated probability that a uniform random
/// d-factor contains uv. The relative error is
/// O((|delta|_1 + 1) / (Lambda n)).
double edge_probability_estimate(const Graph& g, const DegreeSequence& d, const BetaState& state,
                                 int u, int v);

}  // namespace factorx
