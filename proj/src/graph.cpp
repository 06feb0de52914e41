#include "factorx/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "factorx/errors.hpp"

namespace factorx {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw DomainError("graph order must be non-negative");
  degrees_.assign(n, 0);
  index_.assign(static_cast<std::size_t>(n) * n, -1);
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("self-loop at vertex " + std::to_string(e.u + 1));
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    if (index_[u * n + v] >= 0) {
      throw DomainError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    }
    index_[u * n + v] = index_[v * n + u] = static_cast<int>(i);
    ++degrees_[u];
    ++degrees_[v];
  }
}

bool Graph::adjacent(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return index_[static_cast<std::size_t>(u) * n_ + v] >= 0;
}

std::optional<std::size_t> Graph::edge_index(int u, int v) const {
  if (!adjacent(u, v)) return std::nullopt;
  return static_cast<std::size_t>(index_[static_cast<std::size_t>(u) * n_ + v]);
}

std::vector<int> Graph::neighbours(int v) const {
  std::vector<int> out;
  out.reserve(degrees_[v]);
  for (int w = 0; w < n_; ++w) {
    if (index_[static_cast<std::size_t>(v) * n_ + w] >= 0) out.push_back(w);
  }
  return out;
}

Graph Graph::without_edge(int u, int v) const {
  const auto idx = edge_index(u, v);
  if (!idx) throw DomainError("not an edge: " + std::to_string(u + 1) + " " + std::to_string(v + 1));
  std::vector<Edge> rest;
  rest.reserve(edges_.size() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i != *idx) rest.push_back(edges_[i]);
  }
  return Graph(n_, std::move(rest));
}

DegreeSequence::DegreeSequence(std::vector<int> d) : d_(std::move(d)) {
  for (int x : d_) {
    if (x < 0) throw DomainError("degrees must be non-negative");
  }
}

DegreeSequence DegreeSequence::regular(int n, int d) {
  if (n < 0) throw DomainError("negative vertex count");
  return DegreeSequence(std::vector<int>(n, d));
}

long long DegreeSequence::sum() const {
  return std::accumulate(d_.begin(), d_.end(), 0LL);
}

Density density(const Graph& g, const DegreeSequence& d) {
  if (d.size() != static_cast<std::size_t>(g.order())) {
    throw DomainError("degree sequence length does not match graph order");
  }
  const double total = 2.0 * static_cast<double>(g.size());
  if (total == 0) throw DomainError("graph has no edges");
  const double lambda = static_cast<double>(d.sum()) / total;
  return {lambda, lambda * (1 - lambda)};
}

Graph complete_graph(int n) {
  if (n < 2) throw DomainError("complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

long long parse_int(std::string_view tok, int line) {
  long long value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, "not an integer: '" + std::string(tok) + "'");
  }
  return value;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::optional<long long> header_n;
  long long max_index = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_line;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("n=")) {
      if (header_n || !edges.empty()) throw ParseError(lineno, "header must come first");
      header_n = parse_int(trim(line.substr(2)), lineno);
      if (*header_n < 0) throw ParseError(lineno, "negative vertex count");
      continue;
    }
    const auto toks = tokens(line);
    if (toks.size() != 2) throw ParseError(lineno, "expected two vertex indices");
    const long long a = parse_int(toks[0], lineno);
    const long long b = parse_int(toks[1], lineno);
    if (a < 1 || b < 1) throw ParseError(lineno, "vertex indices are 1-based");
    if (a == b) throw ParseError(lineno, "self-loop at vertex " + std::to_string(a));
    if (header_n && (a > *header_n || b > *header_n)) {
      throw ParseError(lineno, "vertex index exceeds header n");
    }
    max_index = std::max({max_index, a, b});
    edges.push_back({static_cast<int>(std::min(a, b) - 1), static_cast<int>(std::max(a, b) - 1)});
    edge_line.push_back(lineno);
  }
  // Report duplicates with the line of the second occurrence.
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      throw ParseError(edge_line[order[i]], "duplicate edge");
    }
  }
  const long long n = header_n.value_or(max_index);
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.order() << '\n';
  for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

Graph parse_graph6(std::string_view text) {
  text = trim(text);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n')) text.remove_suffix(1);
  for (char c : text) {
    if (c < 63 || c > 126) throw ParseError(1, "invalid graph6 character");
  }
  std::size_t pos = 0;
  auto next = [&]() -> long long {
    if (pos >= text.size()) throw ParseError(1, "truncated graph6 string");
    return text[pos++] - 63;
  };
  long long n = 0;
  if (text.empty()) throw ParseError(1, "empty graph6 string");
  if (text[0] != 126) {
    n = next();
  } else {
    ++pos;
    int groups = 3;
    if (pos < text.size() && text[pos] == 126) {
      ++pos;
      groups = 6;
    }
    for (int i = 0; i < groups; ++i) n = (n << 6) | next();
  }
  std::vector<Edge> edges;
  int bit = 0;
  long long chunk = 0;
  for (long long v = 1; v < n; ++v) {
    for (long long u = 0; u < v; ++u) {
      if (bit == 0) {
        chunk = next();
        bit = 6;
      }
      --bit;
      if ((chunk >> bit) & 1) edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
  }
  if (pos != text.size()) throw ParseError(1, "trailing data after graph6 string");
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_graph6(const Graph& g) {
  std::string out;
  const long long n = g.order();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.append(2, static_cast<char>(126));
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int bit = 6;
  int chunk = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      --bit;
      if (g.adjacent(u, v)) chunk |= 1 << bit;
      if (bit == 0) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        bit = 6;
      }
    }
  }
  if (bit != 6) out.push_back(static_cast<char>(chunk + 63));
  return out;
}

DegreeSequence parse_degrees(std::string_view text) {
  std::vector<int> d;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    for (auto tok : tokens(line)) {
      const long long x = parse_int(tok, static_cast<int>(i) + 1);
      if (x < 0) throw ParseError(static_cast<int>(i) + 1, "negative degree");
      d.push_back(static_cast<int>(x));
    }
  }
  return DegreeSequence(std::move(d));
}

}  // namespace factorx
