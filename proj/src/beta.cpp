#include "factorx/beta.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "factorx/spectral.hpp"

namespace factorx {

double logistic(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

namespace {

void check_beta(const Graph& g, const Eigen::VectorXd& beta) {
  if (beta.size() != g.order()) throw DomainError("beta length does not match graph order");
  if (!beta.allFinite()) throw DomainError("beta has non-finite entries");
}

Eigen::VectorXd residual_vector(const Graph& g, const Eigen::VectorXd& targets,
                                const Eigen::VectorXd& beta) {
  Eigen::VectorXd delta = -targets;
  for (const auto& e : g.edges()) {
    const double lam = logistic(beta(e.u) + beta(e.v));
    delta(e.u) += lam;
    delta(e.v) += lam;
  }
  return delta;
}

Eigen::VectorXd as_vector(const DegreeSequence& d) {
  Eigen::VectorXd v(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) v(j) = d[j];
  return v;
}

// Sum over edges of w_e (e_j + e_k)(e_j + e_k)^T with w_e = lambda(1-lambda).
Eigen::MatrixXd jacobian(const Graph& g, const Eigen::VectorXd& beta) {
  const int n = g.order();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const double s = beta(e.u) + beta(e.v);
    const double w = logistic(s) * logistic(-s);
    jac(e.u, e.u) += w;
    jac(e.v, e.v) += w;
    jac(e.u, e.v) += w;
    jac(e.v, e.u) += w;
  }
  return jac;
}

}  // namespace

std::vector<double> lambda_matrix(const Graph& g, const Eigen::VectorXd& beta) {
  check_beta(g, beta);
  std::vector<double> lam;
  lam.reserve(g.size());
  for (const auto& e : g.edges()) lam.push_back(logistic(beta(e.u) + beta(e.v)));
  return lam;
}

Residual delta_residual(const Graph& g, const DegreeSequence& d, const Eigen::VectorXd& beta) {
  check_beta(g, beta);
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  Residual r{residual_vector(g, as_vector(d), beta), 0, 0};
  r.inf_norm = r.delta.size() ? r.delta.lpNorm<Eigen::Infinity>() : 0.0;
  r.one_norm = r.delta.lpNorm<1>();
  return r;
}

BetaState make_beta_state(const Graph& g, const Eigen::VectorXd& targets, Eigen::VectorXd beta) {
  check_beta(g, beta);
  if (targets.size() != g.order()) throw DomainError("target length does not match graph order");
  if (g.size() == 0) throw DomainError("graph has no edges");
  BetaState s;
  s.lambda = lambda_matrix(g, beta);
  s.delta = residual_vector(g, targets, beta);
  s.lambda_bar = targets.sum() / (2.0 * static_cast<double>(g.size()));
  s.Lambda = s.lambda_bar * (1 - s.lambda_bar);
  s.beta = std::move(beta);
  return s;
}

BetaState make_beta_state(const Graph& g, const DegreeSequence& d, Eigen::VectorXd beta) {
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  return make_beta_state(g, as_vector(d), std::move(beta));
}

Eigen::VectorXd approx_beta(const Graph& g, const DegreeSequence& d) {
  const auto [lambda, Lambda] = density(g, d);
  if (!(lambda > 0 && lambda < 1)) throw DomainError("density must lie strictly between 0 and 1");
  const int n = g.order();
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) rhs(j) = d[j] - lambda * g.degree(j);
  Eigen::LLT<Eigen::MatrixXd> llt(signless_laplacian(g));
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
    throw DomainError("signless Laplacian is singular (G has a bipartite component)");
  }
  const Eigen::VectorXd gamma = llt.solve(rhs) / Lambda;
  return Eigen::VectorXd::Constant(n, 0.5 * std::log(lambda / (1 - lambda))) + gamma;
}

BetaState solve_beta(const Graph& g, const DegreeSequence& d, const BetaSolverOptions& opts) {
  const int n = g.order();
  if (d.size() != static_cast<std::size_t>(n)) {
    throw DomainError("degree sequence length does not match graph order");
  }
  if (!(opts.tol > 0)) throw DomainError("tolerance must be positive");
  for (int j = 0; j < n; ++j) {
    if (d[j] <= 0 || d[j] >= g.degree(j)) {
      throw DomainError("degree of vertex " + std::to_string(j + 1) +
                        " is on the boundary {0, g_j}; beta diverges");
    }
  }
  const Eigen::VectorXd targets = as_vector(d);
  Eigen::VectorXd beta = approx_beta(g, d);
  Eigen::VectorXd delta = residual_vector(g, targets, beta);
  double merit = delta.squaredNorm();
  int iter = 0;
  while (delta.lpNorm<Eigen::Infinity>() > opts.tol) {
    if (iter == opts.max_iter) {
      throw ConvergenceError("beta solver did not converge", beta, delta.lpNorm<Eigen::Infinity>());
    }
    ++iter;
    Eigen::MatrixXd jac = jacobian(g, beta);
    Eigen::LLT<Eigen::MatrixXd> llt(jac);
    if (llt.info() != Eigen::Success) {
      jac.diagonal().array() += 1e-12 * jac.diagonal().maxCoeff();
      llt.compute(jac);
      if (llt.info() != Eigen::Success) {
        throw ConvergenceError("Jacobian is not positive definite", beta,
                               delta.lpNorm<Eigen::Infinity>());
      }
    }
    const Eigen::VectorXd step = -llt.solve(delta);
    double t = 1.0;
    Eigen::VectorXd trial;
    Eigen::VectorXd trial_delta;
    bool accepted = false;
    for (int back = 0; back <= 40; ++back, t *= 0.5) {
      trial = beta + t * step;
      trial_delta = residual_vector(g, targets, trial);
      const double m = trial_delta.squaredNorm();
      if (std::isfinite(m) && m < merit) {
        accepted = true;
        merit = m;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("line search stalled", beta, delta.lpNorm<Eigen::Infinity>());
    }
    beta = std::move(trial);
    delta = std::move(trial_delta);
  }
  // Newton is quadratic here, so one more full step usually reaches rounding level.
  if (iter > 0) {
    const Eigen::VectorXd polished = beta - jacobian(g, beta).llt().solve(delta);
    const Eigen::VectorXd polished_delta = residual_vector(g, targets, polished);
    if (polished_delta.allFinite() && polished_delta.squaredNorm() < merit) {
      beta = polished;
      ++iter;
    }
  }
  BetaState s = make_beta_state(g, targets, std::move(beta));
  s.iterations = iter;
  return s;
}

}  // namespace factorx
