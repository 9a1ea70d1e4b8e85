#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eidolon/error.hpp"
#include "eidolon/rng.hpp"

namespace eidolon {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

/// Undirected edge, normalised so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) { return os << '(' << e.u << ',' << e.v << ')'; }

/// Simple undirected graph on vertices 0..n-1 with a canonical sorted edge list.
class Graph {
 public:
  Graph() = default;

  /// Accepts edges in any order and orientation; duplicates are dropped.
  Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw Error(ErrorCode::parameter_range, "graph needs at least one vertex");
    for (auto& e : edges_) {
      if (e.u == e.v) throw Error(ErrorCode::parameter_range, "self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n_) throw Error(ErrorCode::index_out_of_range, "edge endpoint " + std::to_string(e.v) + " >= n");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    adjacency_.assign(n_, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  }

  std::uint32_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a == b || a >= n_ || b >= n_) return false;
    const auto& row = adjacency_[a];
    return std::binary_search(row.begin(), row.end(), b);
  }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Vertex -> color map with colors in 0..k-1.
struct Coloring {
  std::vector<Color> colors;
  std::uint32_t k = 0;

  Coloring() = default;
  Coloring(std::vector<Color> c, std::uint32_t num_colors) : colors(std::move(c)), k(num_colors) {
    for (std::size_t v = 0; v < colors.size(); ++v) {
      if (colors[v] >= k) {
        throw Error(ErrorCode::parameter_range,
                    "color " + std::to_string(colors[v]) + " of vertex " + std::to_string(v) + " is not below k");
      }
    }
  }

  std::size_t size() const { return colors.size(); }
  Color operator[](std::size_t v) const { return colors[v]; }

  /// Number of distinct colors actually used.
  std::uint32_t colors_used() const {
    std::vector<bool> seen(k, false);
    std::uint32_t used = 0;
    for (auto c : colors) {
      if (!seen[c]) {
        seen[c] = true;
        ++used;
      }
    }
    return used;
  }

  bool operator==(const Coloring&) const = default;
};

/// Sizes of the k color classes of a planted instance.
struct PartitionSpec {
  std::vector<std::uint32_t> sizes;

  std::uint32_t total() const { return std::accumulate(sizes.begin(), sizes.end(), std::uint32_t{0}); }
  std::uint32_t k() const { return static_cast<std::uint32_t>(sizes.size()); }

  /// First n mod k classes get ceil(n/k), the rest floor(n/k).
  static PartitionSpec balanced(std::uint32_t n, std::uint32_t k) {
    if (k == 0 || k > n) throw Error(ErrorCode::parameter_range, "balanced partition needs 1 <= k <= n");
    PartitionSpec spec;
    for (std::uint32_t j = 0; j < k; ++j) spec.sizes.push_back(n / k + (j < n % k ? 1 : 0));
    return spec;
  }
};

inline std::uint64_t pairs(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline Graph generate_er(std::uint32_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_probability, "p must lie in [0,1]");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

/// Cross-class edge probability giving an expected edge count of s * C(n,2).
inline double adjusted_edge_probability(std::uint32_t n, const PartitionSpec& spec, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::invalid_probability, "density must lie in [0,1]");
  if (spec.total() != n) throw Error(ErrorCode::parameter_range, "partition sizes do not sum to n");
  std::uint64_t forbidden = 0;
  for (auto size : spec.sizes) {
    if (size == 0) throw Error(ErrorCode::parameter_range, "partition sizes must be positive");
    forbidden += pairs(size);
  }
  const std::uint64_t total = pairs(n);
  if (forbidden >= total) throw Error(ErrorCode::density_infeasible, "no cross-class pairs available");
  const double allowed = static_cast<double>(total - forbidden);
  const double p = s * static_cast<double>(total) / allowed;
  if (p > 1.0 + 1e-12) {
    throw Error(ErrorCode::density_infeasible, "adjusted probability " + std::to_string(p) + " exceeds 1");
  }
  return std::min(p, 1.0);
}

struct PlantedInstance {
  Graph graph;
  Coloring coloring;
  double p_adj = 0.0;
};

/// Planted k-partite graph: class j occupies a consecutive vertex block and gets color j.
inline PlantedInstance generate_planted(const PartitionSpec& spec, double s, Rng& rng) {
  const std::uint32_t n = spec.total();
  const double p = adjusted_edge_probability(n, spec, s);
  std::vector<Color> colors;
  colors.reserve(n);
  for (std::uint32_t j = 0; j < spec.k(); ++j) colors.insert(colors.end(), spec.sizes[j], j);

  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (colors[u] != colors[v] && rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return {Graph(n, std::move(edges)), Coloring(std::move(colors), spec.k()), p};
}

struct ColoringCheck {
  bool valid = false;
  std::vector<Edge> conflicts;
};

inline ColoringCheck is_valid_coloring(const Graph& g, const Coloring& c) {
  if (c.size() != g.n()) {
    throw Error(ErrorCode::length_mismatch,
                "coloring has " + std::to_string(c.size()) + " entries for " + std::to_string(g.n()) + " vertices");
  }
  ColoringCheck out;
  for (const auto& e : g.edges()) {
    if (c[e.u] == c[e.v]) out.conflicts.push_back(e);
  }
  out.valid = out.conflicts.empty();
  return out;
}

// Text formats shared with external tooling:
//   graph:    "n m k" then m lines "u v" (u < v, sorted)
//   coloring: one color per line, line i = vertex i

inline void write_graph_text(std::ostream& os, const Graph& g, std::uint32_t k) {
  os << g.n() << ' ' << g.m() << ' ' << k << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

struct GraphFile {
  Graph graph;
  std::uint32_t k = 0;
};

inline GraphFile read_graph_text(std::istream& is) {
  std::uint64_t n = 0, m = 0, k = 0;
  if (!(is >> n >> m >> k)) throw Error(ErrorCode::malformed_input, "graph header 'n m k' expected on line 1");
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::malformed_input, "vertex count out of range");
  }
  std::vector<Edge> edges;
  edges.reserve(std::min<std::uint64_t>(m, 1u << 20));
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    if (!(is >> u >> v)) throw Error(ErrorCode::malformed_input, "edge line " + std::to_string(i + 2) + " missing");
    if (u >= v || v >= n) {
      throw Error(ErrorCode::malformed_input, "edge line " + std::to_string(i + 2) + " needs u < v < n");
    }
    Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty() && !(edges.back() < e)) {
      throw Error(ErrorCode::malformed_input, "edge line " + std::to_string(i + 2) + " out of lexicographic order");
    }
    edges.push_back(e);
  }
  return {Graph(static_cast<std::uint32_t>(n), std::move(edges)), static_cast<std::uint32_t>(k)};
}

inline void write_coloring_text(std::ostream& os, const Coloring& c) {
  for (auto color : c.colors) os << color << '\n';
}

/// k is taken as max color + 1.
inline Coloring read_coloring_text(std::istream& is) {
  std::vector<Color> colors;
  std::uint64_t c = 0;
  Color max_color = 0;
  while (is >> c) {
    if (c > std::numeric_limits<Color>::max() - 1) throw Error(ErrorCode::malformed_input, "color out of range");
    colors.push_back(static_cast<Color>(c));
    max_color = std::max(max_color, static_cast<Color>(c));
  }
  if (!is.eof()) throw Error(ErrorCode::malformed_input, "non-integer entry in coloring file");
  const std::uint32_t k = colors.empty() ? 0 : max_color + 1;
  return Coloring(std::move(colors), k);
}

}  // namespace eidolon
