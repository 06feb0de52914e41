#include "oracles/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

namespace {

std::vector<int> degrees_of(const factorx::Graph& g, std::uint64_t mask) {
  std::vector<int> deg(g.order(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (mask >> i & 1) {
      ++deg[g.edges()[i].u];
      ++deg[g.edges()[i].v];
    }
  }
  return deg;
}

}  // namespace

BigInt factor_count(const factorx::Graph& g, const std::vector<int>& d) {
  if (g.size() > 30) throw std::invalid_argument("too many edges for brute force");
  BigInt count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (degrees_of(g, mask) == d) ++count;
  }
  return count;
}

std::vector<BigInt> regular_counts(int n) {
  const int m = n * (n - 1) / 2;
  if (m > 30) throw std::invalid_argument("too many edges for brute force");
  std::vector<std::uint64_t> incident(n, 0);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit) {
      incident[u] |= std::uint64_t{1} << bit;
      incident[v] |= std::uint64_t{1} << bit;
    }
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int d0 = std::popcount(mask & incident[0]);
    bool regular = true;
    for (int v = 1; v < n && regular; ++v) regular = std::popcount(mask & incident[v]) == d0;
    if (regular) ++counts[d0];
  }
  return {counts.begin(), counts.end()};
}

Rational edge_probability(const factorx::Graph& g, const std::vector<int>& d, int u, int v) {
  const auto idx = g.edge_index(u, v);
  if (!idx) throw std::invalid_argument("not an edge");
  BigInt total = 0, with = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (degrees_of(g, mask) != d) continue;
    ++total;
    if (mask >> *idx & 1) ++with;
  }
  return Rational(with, total);
}

double cheeger(const factorx::Graph& g) {
  const int n = g.order();
  double best = INFINITY;
  for (std::uint64_t set = 1; set < (std::uint64_t{1} << n); ++set) {
    const int size = std::popcount(set);
    if (2 * size > n) continue;
    int boundary = 0;
    for (const auto& e : g.edges()) boundary += ((set >> e.u) & 1) != ((set >> e.v) & 1);
    best = std::min(best, static_cast<double>(boundary) / size);
  }
  return best;
}

double moment(const std::vector<int>& slots, const std::function<double(int, int)>& cov) {
  if (slots.empty()) return 1.0;
  if (slots.size() % 2) return 0.0;
  double total = 0;
  for (std::size_t k = 1; k < slots.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t i = 1; i < slots.size(); ++i)
      if (i != k) rest.push_back(slots[i]);
    total += cov(slots[0], slots[k]) * moment(rest, cov);
  }
  return total;
}

namespace {

void partitions(int r, int next, std::vector<int>& label, int parts,
                const std::function<void(const std::vector<int>&, int)>& visit) {
  if (next == r) {
    visit(label, parts);
    return;
  }
  for (int p = 0; p <= parts; ++p) {
    label[next] = p;
    partitions(r, next + 1, label, std::max(parts, p + 1), visit);
  }
}

}  // namespace

double partition_cumulant(const std::vector<std::vector<int>>& blocks,
                          const std::function<double(int, int)>& cov) {
  const int r = static_cast<int>(blocks.size());
  std::vector<int> label(r, 0);
  double total = 0;
  partitions(r, 0, label, 0, [&](const std::vector<int>& lab, int parts) {
    double term = 1;
    for (int p = 0; p < parts; ++p) {
      std::vector<int> slots;
      for (int b = 0; b < r; ++b)
        if (lab[b] == p) slots.insert(slots.end(), blocks[b].begin(), blocks[b].end());
      term *= moment(slots, cov);
    }
    double fact = 1;
    for (int i = 2; i < parts; ++i) fact *= i;
    total += (parts % 2 == 1 ? 1 : -1) * fact * term;
  });
  return total;
}

std::vector<double> bernoulli_taylor(double lambda, int l_max) {
  // kappa_1 = x; polynomials in x stored lowest power first.
  std::vector<double> poly{0.0, 1.0};
  std::vector<double> out(l_max + 1, 0.0);
  double fact = 1;
  for (int l = 1; l <= l_max; ++l) {
    fact *= l;
    double v = 0;
    for (std::size_t k = poly.size(); k-- > 0;) v = v * lambda + poly[k];
    out[l] = v / fact;
    // next = (x - x^2) * d/dx poly
    std::vector<double> deriv(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < poly.size(); ++k) deriv[k - 1] = k * poly[k];
    std::vector<double> next(deriv.size() + 2, 0.0);
    for (std::size_t k = 0; k < deriv.size(); ++k) {
      next[k + 1] += deriv[k];
      next[k + 2] -= deriv[k];
    }
    poly = next;
  }
  return out;
}

long double log_factorial(int N) {
  BigInt f = 1;
  for (int i = 2; i <= N; ++i) f *= i;
  using Float = boost::multiprecision::cpp_bin_float_50;
  return static_cast<long double>(log(Float(f)));
}

std::uint64_t double_factorial_odd(int k_minus_1) {
  std::uint64_t v = 1;
  for (int i = k_minus_1; i > 1; i -= 2) v *= i;
  return v;
}

factorx::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<factorx::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return factorx::Graph(n, edges);
}

factorx::Graph relabel(const factorx::Graph& g, const std::vector<int>& perm) {
  std::vector<factorx::Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return factorx::Graph(g.order(), edges);
}

}  // namespace oracle
