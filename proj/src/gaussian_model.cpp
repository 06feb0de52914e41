#include "factorx/gaussian_model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "factorx/errors.hpp"

namespace factorx {

double GaussianModel::linear_covariance(int j, int k, int u, int v) const {
  const double left_u = j == k ? Sigma(j, u) : Sigma(j, u) + Sigma(k, u);
  if (u == v) return left_u;
  const double left_v = j == k ? Sigma(j, v) : Sigma(j, v) + Sigma(k, v);
  return left_u + left_v;
}

GaussianModel build_gaussian_model(const Graph& g, const BetaState& state) {
  const int n = g.order();
  if (state.lambda.size() != g.size() || state.beta.size() != n) {
    throw DomainError("beta state does not belong to this graph");
  }
  if (!(state.Lambda > 0)) throw DomainError("Lambda must be positive");
  GaussianModel m;
  m.n = n;
  m.Lambda = state.Lambda;
  const double scale = state.Lambda * n;
  m.A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto [u, v] = g.edges()[i];
    const double lam = state.lambda[i];
    if (!(lam > 0 && lam < 1)) throw DomainError("edge probability outside (0, 1)");
    const double w = lam * (1 - lam) / scale;
    m.A(u, u) += w;
    m.A(v, v) += w;
    m.A(u, v) += w;
    m.A(v, u) += w;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.A);
  const auto& ev = eig.eigenvalues();
  if (!(ev(0) >= 1e-12 * ev(n - 1))) {
    std::ostringstream msg;
    msg << "A is numerically singular: least eigenvalue " << ev(0) << ", largest " << ev(n - 1);
    throw DomainError(msg.str());
  }
  m.T = eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
        eig.eigenvectors().transpose();

  Eigen::LLT<Eigen::MatrixXd> llt(m.A);
  if (llt.info() != Eigen::Success) throw DomainError("Cholesky factorization of A failed");
  m.log_det_A = 2 * llt.matrixLLT().diagonal().array().log().sum();
  m.Sigma = llt.solve(Eigen::MatrixXd::Identity(n, n)) / scale;
  return m;
}

double pairwise_covariance(const GaussianModel& model, int j, int k, int u, int v) {
  return model.Lambda * model.n * model.linear_covariance(j, k, u, v);
}

}  // namespace factorx
