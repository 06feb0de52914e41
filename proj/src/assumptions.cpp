#include "factorx/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "factorx/beta.hpp"
#include "factorx/errors.hpp"

namespace factorx {

void AssumptionParams::validate() const {
  if (!(sigma > 0 && sigma <= 1)) throw DomainError("sigma must lie in (0, 1]");
  if (!(B > 0 && C > 0 && tau_Q > 0 && eps > 0 && p > 0)) {
    throw DomainError("assumption constants must be positive");
  }
  if (!(eps < sigma / 16)) throw DomainError("eps must be below sigma/16");
}

AssumptionReport check_assumptions(const Graph& g, const DegreeSequence& d,
                                   const Eigen::VectorXd& beta, const AssumptionParams& params,
                                   int cheeger_exact_limit) {
  params.validate();
  const int n = g.order();
  if (d.size() != static_cast<std::size_t>(n) || beta.size() != n) {
    throw DomainError("dimension mismatch between graph, degrees and beta");
  }
  const double dn = n;
  const auto [lambda, Lambda] = density(g, d);
  AssumptionReport r{};

  int excess = std::numeric_limits<int>::min();
  for (int j = 0; j < n; ++j) excess = std::max(excess, d[j] - g.degree(j));
  r.d_le_g = {excess <= 0, excess};

  const double spread = beta.maxCoeff() - beta.minCoeff();
  r.beta_spread = {spread <= params.C, spread, params.C};

  const double lam_ratio = Lambda / std::pow(dn, params.sigma - 1);
  r.lambda_lower = {lam_ratio >= params.B, Lambda, lam_ratio, params.B};

  const auto h = cheeger(g, cheeger_exact_limit);
  const double log_n = std::log(dn);
  const double h_req = log_n * log_n / Lambda;
  const double q = algebraic_bipartiteness(g);
  const double q_req = params.tau_Q * dn;
  r.cheeger_and_q = {h.lower_bound >= h_req && q >= q_req, h, h_req, q, q_req};

  const auto res = delta_residual(g, d, beta);
  const double inf_ratio = res.inf_norm / (std::sqrt(Lambda) * std::pow(dn, 0.5 - params.sigma / 2));
  const double one_ratio = res.one_norm / std::pow(dn, 1 + params.eps);
  r.delta_norms = {inf_ratio <= 1 && one_ratio <= 1, res.inf_norm, res.one_norm, inf_ratio,
                   one_ratio};
  return r;
}

}  // namespace factorx
