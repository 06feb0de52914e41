#include "factorx/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "factorx/errors.hpp"

namespace factorx {

Eigen::MatrixXd signless_laplacian(const Graph& g) {
  const int n = g.order();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) q(j, j) = g.degree(j);
  for (const auto& e : g.edges()) {
    q(e.u, e.v) = 1;
    q(e.v, e.u) = 1;
  }
  return q;
}

double algebraic_bipartiteness(const Graph& g) {
  if (g.order() < 2) throw DomainError("algebraic bipartiteness needs n >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(signless_laplacian(g),
                                                        Eigen::EigenvaluesOnly);
  // Q is positive semidefinite; clip rounding noise below zero.
  return std::max(0.0, solver.eigenvalues()(0));
}

namespace {

double exact_cheeger(const Graph& g) {
  const int n = g.order();
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  // Gray-code walk over all subsets, updating |dU| incrementally.
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t set = 0;
  long long boundary = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const std::uint32_t bit = 1u << v;
    const int inside = std::popcount(adj[v] & set);
    if (set & bit) {
      set &= ~bit;
      boundary += 2 * inside - g.degree(v);
    } else {
      boundary += g.degree(v) - 2 * inside;
      set |= bit;
    }
    const int size = std::popcount(set);
    if (2 * size <= n) best = std::min(best, static_cast<double>(boundary) / size);
  }
  return best;
}

}  // namespace

CheegerBound cheeger(const Graph& g, int exact_limit) {
  const int n = g.order();
  if (n < 2) return {0.0, 0.0};
  if (n <= std::min(exact_limit, 30)) {
    const double h = exact_cheeger(g);
    return {h, h};
  }
  Eigen::MatrixXd lap = -signless_laplacian(g);
  for (int j = 0; j < n; ++j) lap(j, j) = g.degree(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  return {std::max(0.0, solver.eigenvalues()(1) / 2), std::nullopt};
}

}  // namespace factorx
