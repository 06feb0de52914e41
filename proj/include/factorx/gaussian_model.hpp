#pragma once

#include <Eigen/Dense>

#include "factorx/beta.hpp"
#include "factorx/graph.hpp"

namespace factorx {

/// Gaussian approximation of the integrand near theta = 0.
///
/// A is defined through sum_{jk} lambda_jk (1 - lambda_jk) (theta_j + theta_k)^2
/// = Lambda n theta^T A theta, so Y with density proportional to
/// exp(-Lambda n y^T A y / 2) has covariance Sigma = (Lambda n A)^-1.
/// T is the symmetric inverse square root of A, which gives T^T A T = I.
struct GaussianModel {
  Eigen::MatrixXd A;
  double log_det_A = 0;
  Eigen::MatrixXd Sigma;
  Eigen::MatrixXd T;
  double Lambda = 0;
  int n = 0;

  // Cov(Y_j + Y_k, Y_u + Y_v), where j == k (or u == v) selects the single
  // coordinate Y_j instead of a pair sum.
  double linear_covariance(int j, int k, int u, int v) const;
};

GaussianModel build_gaussian_model(const Graph& g, const BetaState& state);

/// Cov(Y_jk, Y_uv) for the scaled pair variables Y_jk = (Lambda n)^1/2 (Y_j + Y_k).
double pairwise_covariance(const GaussianModel& model, int j, int k, int u, int v);

}  // namespace factorx
