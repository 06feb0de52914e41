#pragma once

#include <optional>

#include <Eigen/Dense>

#include "factorx/graph.hpp"

namespace factorx {

/// Q(G) = D + A: degrees on the diagonal, 1 for each edge off it.
Eigen::MatrixXd signless_laplacian(const Graph& g);

/// Least eigenvalue of Q(G). Zero exactly when G has a bipartite component.
double algebraic_bipartiteness(const Graph& g);

struct CheegerBound {
  double lower_bound;           // certified: equals *exact when that is set
  std::optional<double> exact;  // h(G), when n <= exact_limit
};

inline constexpr int kDefaultCheegerExactLimit = 20;

/// Isoperimetric constant min |dU|/|U| over 1 <= |U| <= n/2.
///
/// Exact subset enumeration is used up to exact_limit vertices (capped at 30);
/// beyond that only the spectral bound lambda_2(L)/2 is reported.
CheegerBound cheeger(const Graph& g, int exact_limit = kDefaultCheegerExactLimit);

}  // namespace factorx
