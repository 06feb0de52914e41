#include "factorx/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "factorx/errors.hpp"

namespace factorx {

double Estimate::sum_of_parts() const {
  double v = breakdown.log_M + breakdown.gaussian_prefactor;
  for (double k : breakdown.kappa) v += k;
  return v;
}

namespace {

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

void check_state(const Graph& g, const BetaState& state) {
  if (state.beta.size() != g.order() || state.lambda.size() != g.size() ||
      state.delta.size() != g.order()) {
    throw DomainError("beta state does not belong to this graph");
  }
}

// 1 - lambda is evaluated as logistic(-s) to keep it accurate near lambda = 1.
double log_M_of_state(const Graph& g, const BetaState& state) {
  double value = state.delta.dot(state.beta);
  for (const auto& e : g.edges()) {
    const double s = state.beta(e.u) + state.beta(e.v);
    value -= xlogx(logistic(s)) + xlogx(logistic(-s));
  }
  return value;
}

}  // namespace

double log_M(const Graph& g, const DegreeSequence& d, const BetaState& state) {
  check_state(g, state);
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  return log_M_of_state(g, state);
}

TruncationOrders truncation_orders(double p, double sigma) {
  if (!(p > 0)) throw DomainError("precision exponent p must be positive");
  if (!(sigma > 0 && sigma <= 1)) throw DomainError("sigma must lie in (0, 1]");
  // Guard against (1+p)/sigma landing a rounding error above an integer.
  const int k = static_cast<int>(std::ceil((1 + p) / sigma - 1e-12));
  return {2 * k, 2 * k - 2};
}

double default_sigma(const Graph& g, const DegreeSequence& d) {
  const int n = g.order();
  if (n < 2 || d.size() != static_cast<std::size_t>(n)) throw DomainError("bad instance for sigma");
  int m = d[0];
  for (int j = 0; j < n; ++j) m = std::min({m, d[j], g.degree(j) - d[j]});
  if (m <= 0) throw DomainError("a degree lies on the boundary {0, g_j}; sigma is undefined");
  return std::min(1.0, std::log(m + 1.0) / std::log(static_cast<double>(n)));
}

MonomialSum remainder_polynomial(const Graph& g, const BetaState& state, int ell0) {
  check_state(g, state);
  MonomialSum R;
  for (int j = 0; j < g.order(); ++j) {
    if (state.delta(j) != 0) R.terms.push_back({1, state.delta(j), j, j});
  }
  if (ell0 < 3) return R;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto [u, v] = g.edges()[i];
    const auto tc = taylor_coefficients(state.lambda[i], ell0);
    for (int l = 3; l <= ell0; ++l) {
      if (tc[l] != 0) R.terms.push_back({l, tc[l], u, v});
    }
  }
  return R;
}

Estimate estimate_from_state(const Graph& g, const BetaState& state, int ell0, int r0,
                             const CumulantOptions& opts) {
  if (ell0 < 1 || r0 < 0) throw DomainError("truncation orders must be positive");
  const auto model = build_gaussian_model(g, state);
  const int n = g.order();
  Estimate est;
  est.orders.ell0 = ell0;
  est.orders.r0 = r0;

  est.breakdown.log_M = log_M_of_state(g, state);
  est.breakdown.gaussian_prefactor =
      std::numbers::ln2 - 0.5 * n * std::log(2 * std::numbers::pi * state.Lambda * n) -
      0.5 * model.log_det_A;

  const auto R = remainder_polynomial(g, state, ell0);
  double r_fact = 1;
  for (int r = 1; r <= r0; ++r) {
    r_fact *= r;
    est.breakdown.kappa.push_back(cumulant_of_polynomial(R, model, r, opts) / r_fact);
  }
  est.log_value = est.sum_of_parts();
  return est;
}

Estimate estimate_log_count(const Graph& g, const DegreeSequence& d, const EstimateOptions& opts) {
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  if (d.sum() % 2 != 0) throw DomainError("degree sum is odd; there are no factors");
  double sigma = 0;
  TruncationOrders orders{};
  if (opts.ell0 && opts.r0) {
    orders = {*opts.ell0, *opts.r0};
    sigma = opts.sigma.value_or(std::numeric_limits<double>::quiet_NaN());
  } else {
    sigma = opts.sigma ? *opts.sigma : default_sigma(g, d);
    orders = truncation_orders(opts.p, sigma);
    if (opts.ell0) orders.ell0 = *opts.ell0;
    if (opts.r0) orders.r0 = *opts.r0;
  }
  const BetaState state = opts.beta_source == BetaSource::solve
                              ? solve_beta(g, d, opts.solver)
                              : make_beta_state(g, d, approx_beta(g, d));
  Estimate est = estimate_from_state(g, state, orders.ell0, orders.r0, opts.cumulants);
  est.orders.p = opts.p;
  est.orders.sigma = sigma;
  return est;
}

double edge_probability_estimate(const Graph& g, const DegreeSequence& d, const BetaState& state,
                                 int u, int v) {
  check_state(g, state);
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  const auto idx = g.edge_index(u, v);
  if (!idx) throw DomainError("edge probability requested for a non-edge");
  return state.lambda[*idx];
}

}  // namespace factorx
