#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

#include "factorx/graph.hpp"

namespace factorx {

using FactorCount = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

struct ExactOptions {
  // Largest number of distinct residual states allowed in one DP layer.
  std::size_t state_budget = 100'000'000;
};

/// Number of subgraphs of g with degree sequence d.
///
/// Vertices are eliminated one at a time; the state is the multiset of
/// residual degrees of the remaining vertices, where residuals of vertices
/// that are twins in the remaining induced subgraph are kept sorted. An odd
/// degree sum gives 0. Throws DomainError if some d_j > g_j and
/// BudgetExceeded if a layer outgrows opts.state_budget.
FactorCount exact_factor_count(const Graph& g, const DegreeSequence& d, const ExactOptions& opts = {});

/// RG(n, d): labelled d-regular graphs on n vertices.
FactorCount exact_regular_count(int n, int d, const ExactOptions& opts = {});

/// Probability that a uniform random d-factor of g contains the edge uv,
/// as N(G - uv, d - e_uv) / N(G, d).
ExactRational exact_edge_probability(const Graph& g, const DegreeSequence& d, int u, int v,
                                     const ExactOptions& opts = {});

}  // namespace factorx
