#pragma once

#include <Eigen/Dense>

#include "factorx/graph.hpp"
#include "factorx/spectral.hpp"

namespace factorx {

struct AssumptionParams {
  double sigma = 1.0;
  double B = 0.1;
  double C = 1.0;
  double tau_Q = 0.1;
  double eps = 0.01;
  double p = 1.0;

  // Throws DomainError unless all positive, sigma <= 1 and eps < sigma/16.
  void validate() const;
};

/// Literal evaluation of the five clauses on a concrete instance.
///
/// Asymptotic rates are reported as raw ratios against their rate function
/// with implied constant 1; a clause passes when each ratio is at most 1.
struct AssumptionReport {
  struct DLeG {
    bool pass;
    int worst_excess;  // max_j (d_j - g_j)
  } d_le_g;
  struct BetaSpread {
    bool pass;
    double spread;  // max_j beta_j - min_j beta_j
    double bound;
  } beta_spread;
  struct LambdaLower {
    bool pass;
    double Lambda;
    double ratio;  // Lambda / n^(sigma-1), compared with B
    double bound;
  } lambda_lower;
  struct CheegerAndQ {
    bool pass;
    CheegerBound h;
    double h_required;  // Lambda^-1 log^2 n
    double q;
    double q_required;  // tau_Q n
  } cheeger_and_q;
  struct DeltaNorms {
    bool pass;
    double inf_norm;
    double one_norm;
    double inf_ratio;  // |delta|_inf / (Lambda^1/2 n^(1/2 - sigma/2))
    double one_ratio;  // |delta|_1 / n^(1+eps)
  } delta_norms;

  bool all_pass() const {
    return d_le_g.pass && beta_spread.pass && lambda_lower.pass && cheeger_and_q.pass &&
           delta_norms.pass;
  }
};

AssumptionReport check_assumptions(const Graph& g, const DegreeSequence& d,
                                   const Eigen::VectorXd& beta, const AssumptionParams& params,
                                   int cheeger_exact_limit = kDefaultCheegerExactLimit);

}  // namespace factorx
