#include "factorx/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "factorx/errors.hpp"

namespace factorx {

namespace {

using Residuals = std::vector<std::uint16_t>;

struct ResidualsHash {
  std::size_t operator()(const Residuals& r) const { return boost::hash_range(r.begin(), r.end()); }
};

using Layer = std::unordered_map<Residuals, FactorCount, ResidualsHash>;

// Greedy elimination order keeping the set of touched-but-unfinished
// vertices small.
std::vector<int> elimination_order(const Graph& g) {
  const int n = g.order();
  std::vector<bool> done(n, false), touched(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    int best_frontier = 0;
    int best_degree = 0;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      int frontier = 0;
      for (int w = 0; w < n; ++w) {
        if (w == v || done[w]) continue;
        if (touched[w] || g.adjacent(v, w)) ++frontier;
      }
      if (best < 0 || frontier < best_frontier ||
          (frontier == best_frontier && g.degree(v) < best_degree)) {
        best = v;
        best_frontier = frontier;
        best_degree = g.degree(v);
      }
    }
    done[best] = true;
    for (int w : g.neighbours(best)) touched[w] = true;
    order.push_back(best);
  }
  return order;
}

// Vertices remaining at one step of the elimination, with their twin classes.
struct Step {
  std::vector<int> vertex;                    // position -> vertex
  std::vector<int> remaining_degree;          // neighbours among later positions
  std::vector<std::vector<int>> classes;      // positions, ascending
  std::vector<int> class_of;                  // position -> class
};

Step make_step(const Graph& g, const std::vector<int>& order, int t) {
  Step s;
  const int m = g.order() - t;
  s.vertex.assign(order.begin() + t, order.end());
  s.remaining_degree.assign(m, 0);
  std::vector<std::vector<bool>> open(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      if (g.adjacent(s.vertex[i], s.vertex[k])) {
        open[i][k] = true;
        ++s.remaining_degree[i];
      }
    }
  }
  // True twins share a closed neighbourhood, false twins an open one; a
  // vertex cannot have both kinds of twin.
  s.class_of.assign(m, -1);
  std::map<std::vector<bool>, std::vector<int>> by_closed, by_open;
  for (int i = 0; i < m; ++i) {
    auto closed = open[i];
    closed[i] = true;
    by_closed[closed].push_back(i);
  }
  for (auto& [key, members] : by_closed) {
    if (members.size() < 2) {
      by_open[open[members[0]]].push_back(members[0]);
      continue;
    }
    for (int i : members) s.class_of[i] = static_cast<int>(s.classes.size());
    s.classes.push_back(members);
  }
  for (auto& [key, members] : by_open) {
    for (int i : members) s.class_of[i] = static_cast<int>(s.classes.size());
    s.classes.push_back(members);
  }
  for (auto& c : s.classes) std::sort(c.begin(), c.end());
  return s;
}

void canonicalize(Residuals& r, const Step& step) {
  std::vector<std::uint16_t> buf;
  for (const auto& cls : step.classes) {
    if (cls.size() < 2) continue;
    buf.clear();
    for (int i : cls) buf.push_back(r[i]);
    std::sort(buf.begin(), buf.end(), std::greater<>());
    for (std::size_t k = 0; k < cls.size(); ++k) r[cls[k]] = buf[k];
  }
}

struct Group {
  std::vector<int> positions;  // positions in the next step's numbering
  std::uint16_t value;
};

// Chooses how many vertices of each neighbour group lose one unit of residual.
void expand(const std::vector<Group>& groups, std::size_t gi, int need, Residuals& next,
            FactorCount weight, const Step& after, Layer& out) {
  if (gi == groups.size()) {
    if (need != 0) return;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (next[i] > after.remaining_degree[i]) return;
    }
    Residuals key = next;
    canonicalize(key, after);
    out[std::move(key)] += weight;
    return;
  }
  const auto& grp = groups[gi];
  int avail = 0;
  for (std::size_t k = gi; k < groups.size(); ++k) {
    if (groups[k].value > 0) avail += static_cast<int>(groups[k].positions.size());
  }
  if (avail < need) return;
  const int m = static_cast<int>(grp.positions.size());
  const int top = grp.value == 0 ? 0 : std::min(m, need);
  FactorCount w = weight;
  for (int c = 0; c <= top; ++c) {
    if (c > 0) {
      next[grp.positions[c - 1]] -= 1;
      w = w * (m - c + 1) / c;
    }
    expand(groups, gi + 1, need - c, next, w, after, out);
  }
  for (int c = 1; c <= top; ++c) next[grp.positions[c - 1]] += 1;
}

}  // namespace

FactorCount exact_factor_count(const Graph& g, const DegreeSequence& d, const ExactOptions& opts) {
  const int n = g.order();
  if (d.size() != static_cast<std::size_t>(n)) {
    throw DomainError("degree sequence length does not match graph order");
  }
  for (int j = 0; j < n; ++j) {
    if (d[j] > g.degree(j)) {
      throw DomainError("d_" + std::to_string(j + 1) + " exceeds the degree of the vertex in G");
    }
  }
  if (d.sum() % 2 != 0) return 0;
  if (n == 0) return 1;

  const auto order = elimination_order(g);
  Step current = make_step(g, order, 0);
  Residuals start(n);
  for (int i = 0; i < n; ++i) start[i] = static_cast<std::uint16_t>(d[current.vertex[i]]);
  canonicalize(start, current);
  Layer layer;
  layer.emplace(std::move(start), FactorCount(1));

  for (int t = 0; t < n; ++t) {
    const bool last = t + 1 == n;
    Step after = last ? Step{} : make_step(g, order, t + 1);
    Layer next_layer;
    const int v = current.vertex[0];
    for (const auto& [state, count] : layer) {
      // Neighbour positions of v, grouped by twin class and residual value;
      // in the next step position i becomes i - 1.
      std::vector<Group> groups;
      std::map<std::pair<int, int>, std::size_t> slot;
      for (std::size_t i = 1; i < state.size(); ++i) {
        if (!g.adjacent(v, current.vertex[i])) continue;
        const auto key = std::make_pair(current.class_of[i], static_cast<int>(state[i]));
        auto [it, fresh] = slot.try_emplace(key, groups.size());
        if (fresh) groups.push_back({{}, state[i]});
        groups[it->second].positions.push_back(static_cast<int>(i) - 1);
      }
      Residuals next(state.begin() + 1, state.end());
      expand(groups, 0, state[0], next, count, after, next_layer);
    }
    if (next_layer.size() > opts.state_budget) {
      throw BudgetExceeded("exact DP layer has " + std::to_string(next_layer.size()) +
                               " states, above the budget of " + std::to_string(opts.state_budget),
                           static_cast<double>(next_layer.size()));
    }
    layer = std::move(next_layer);
    current = std::move(after);
    if (layer.empty()) return 0;
  }
  const auto it = layer.find(Residuals{});
  return it == layer.end() ? FactorCount(0) : it->second;
}

FactorCount exact_regular_count(int n, int d, const ExactOptions& opts) {
  if (n < 1 || d < 0 || d > n - 1) throw DomainError("regular count needs 0 <= d <= n-1");
  if (n == 1) return 1;
  return exact_factor_count(complete_graph(n), DegreeSequence::regular(n, d), opts);
}

ExactRational exact_edge_probability(const Graph& g, const DegreeSequence& d, int u, int v,
                                     const ExactOptions& opts) {
  if (!g.adjacent(u, v)) throw DomainError("edge probability requested for a non-edge");
  const FactorCount total = exact_factor_count(g, d, opts);
  if (total == 0) throw DomainError("graph has no factor with the given degrees");
  if (d[u] == 0 || d[v] == 0) return ExactRational(0);
  auto reduced = d.values();
  --reduced[u];
  --reduced[v];
  const FactorCount with = exact_factor_count(g.without_edge(u, v), DegreeSequence(reduced), opts);
  return ExactRational(with, total);
}

}  // namespace factorx
