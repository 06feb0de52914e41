#pragma once

#include <vector>

#include <Eigen/Dense>

#include "factorx/errors.hpp"
#include "factorx/graph.hpp"

namespace factorx {

/// A vector beta together with everything derived from it on (G, d).
///
/// lambda[i] is the edge probability of G.edges()[i]; delta is the per-vertex
/// defect sum_k lambda_jk - d_j. lambda_bar and Lambda are the global density
/// sum(d)/sum(g) and its variance factor, independent of beta.
struct BetaState {
  Eigen::VectorXd beta;
  std::vector<double> lambda;
  Eigen::VectorXd delta;
  double lambda_bar = 0;
  double Lambda = 0;
  int iterations = 0;

  double delta_inf() const { return delta.size() ? delta.lpNorm<Eigen::Infinity>() : 0.0; }
  double delta_one() const { return delta.lpNorm<1>(); }
};

// e^s / (1 + e^s) without overflow.
double logistic(double s);

std::vector<double> lambda_matrix(const Graph& g, const Eigen::VectorXd& beta);

struct Residual {
  Eigen::VectorXd delta;
  double inf_norm;
  double one_norm;
};
Residual delta_residual(const Graph& g, const DegreeSequence& d, const Eigen::VectorXd& beta);

// Targets may be fractional; used when a density is prescribed directly
// instead of through an integer degree sequence.
BetaState make_beta_state(const Graph& g, const Eigen::VectorXd& targets, Eigen::VectorXd beta);
BetaState make_beta_state(const Graph& g, const DegreeSequence& d, Eigen::VectorXd beta);

/// Closed-form near solution: the constant logit of the density corrected
/// by Lambda^-1 Q(G)^-1 (d - lambda g).
Eigen::VectorXd approx_beta(const Graph& g, const DegreeSequence& d);

struct BetaSolverOptions {
  double tol = 1e-10;  // on the infinity norm of delta
  int max_iter = 100;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}
  const Eigen::VectorXd& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Eigen::VectorXd best_;
  double residual_;
};

/// Damped Newton on delta(beta) = 0 started from approx_beta.
///
/// Requires 0 < d_j < g_j for every vertex; boundary degrees force beta to
/// infinity and are rejected with DomainError.
BetaState solve_beta(const Graph& g, const DegreeSequence& d, const BetaSolverOptions& opts = {});

}  // namespace factorx
