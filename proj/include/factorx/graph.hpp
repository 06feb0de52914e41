#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace factorx {

// Undirected edge between 0-based vertices, normalized so that u < v.
struct Edge {
  int u;
  int v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected labelled graph with dense adjacency lookup.
///
/// Vertices are 0-based internally; the text formats use 1-based indices.
/// Edges are stored sorted, so two graphs with the same edge set compare equal.
class Graph {
 public:
  Graph() = default;
  /// Throws DomainError on self-loops, duplicates or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int v) const { return degrees_[v]; }

  bool adjacent(int u, int v) const;
  // Index into edges(), if uv is an edge.
  std::optional<std::size_t> edge_index(int u, int v) const;
  std::vector<int> neighbours(int v) const;

  Graph without_edge(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<int> index_;  // n*n, -1 where absent
};

/// Target degrees of a factor, one entry per vertex.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int> d);
  static DegreeSequence regular(int n, int d);

  std::size_t size() const { return d_.size(); }
  int operator[](std::size_t j) const { return d_[j]; }
  const std::vector<int>& values() const { return d_; }
  long long sum() const;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<int> d_;
};

// Global edge density lambda = sum(d)/sum(g) and Lambda = lambda(1-lambda).
struct Density {
  double lambda;
  double Lambda;
};
Density density(const Graph& g, const DegreeSequence& d);

Graph complete_graph(int n);

/// Parses "j k" lines of 1-based indices with an optional leading "n=<int>"
/// header. Blank lines and lines starting with '#' are skipped.
Graph parse_edge_list(std::string_view text);
/// Canonical form: "n=<n>" header followed by sorted 1-based pairs.
std::string to_edge_list(const Graph& g);

Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

/// Whitespace- or comma-separated non-negative integers.
DegreeSequence parse_degrees(std::string_view text);

}  // namespace factorx
