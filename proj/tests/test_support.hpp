#pragma once

// Test-only oracles. None of these reuse the library code paths they check.

#include <boost/math/distributions/chi_squared.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "eidolon/bytes.hpp"
#include "eidolon/graph.hpp"

namespace eidolon::oracle {

inline std::string golden_path(const std::string& name) { return std::string(EIDOLON_GOLDEN_DIR) + "/" + name; }

inline std::string read_text(const std::string& name) {
  std::ifstream in(golden_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Bytes read_golden_hex(const std::string& name) { return from_hex(read_text(name)); }

inline std::vector<std::uint64_t> parse_numbers(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::uint64_t> out;
  std::uint64_t v;
  while (is >> v) out.push_back(v);
  return out;
}

/// Upper-tail p-value of Pearson's statistic against equal expected counts.
inline double chi_square_uniform_p(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Does any assignment in k^n colour g properly? Plain odometer enumeration.
inline bool brute_force_colorable(const Graph& g, std::uint32_t k) {
  const std::uint32_t n = g.n();
  std::vector<std::uint32_t> a(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto& e : g.edges()) {
      if (a[e.u] == a[e.v]) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    std::uint32_t i = 0;
    while (i < n && ++a[i] == k) a[i++] = 0;
    if (i == n) return false;
  }
}

inline std::uint32_t brute_force_chromatic(const Graph& g) {
  for (std::uint32_t k = 1;; ++k) {
    if (brute_force_colorable(g, k)) return k;
  }
}

/// BFS 2-colouring; nullopt if the graph has an odd cycle.
inline std::optional<std::vector<std::uint32_t>> bfs_two_coloring(const Graph& g) {
  std::vector<int> side(g.n(), -1);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          q.push(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return std::vector<std::uint32_t>(side.begin(), side.end());
}

inline Graph complete_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

inline Graph cycle_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph(n, edges);
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer cycle
    edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
    edges.push_back({i, 5 + i});                // spokes
  }
  return Graph(10, edges);
}

/// Byte-level reader of the Fiat-Shamir context layout, written from the
/// layout description rather than from the encoder.
struct DecodedContext {
  std::string tag;
  std::uint64_t n = 0, k = 0, m_header = 0, m_edges = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::uint64_t t = 0;
  std::vector<Bytes> payloads;
  Bytes message;
};

inline DecodedContext decode_context(const Bytes& data, std::size_t payload_bytes) {
  std::size_t pos = 0;
  auto take = [&](std::size_t count) {
    if (pos + count > data.size()) throw std::runtime_error("decode overrun");
    Bytes out(data.begin() + static_cast<std::ptrdiff_t>(pos), data.begin() + static_cast<std::ptrdiff_t>(pos + count));
    pos += count;
    return out;
  };
  auto uint_be = [&](std::size_t bytes) {
    std::uint64_t v = 0;
    for (auto b : take(bytes)) v = (v << 8) | b;
    return v;
  };
  DecodedContext d;
  auto tag = take(13);
  d.tag.assign(tag.begin(), tag.end());
  d.n = uint_be(8);
  d.k = uint_be(4);
  d.m_header = uint_be(8);
  d.m_edges = uint_be(8);
  std::uint64_t w = 0;
  while ((std::uint64_t{1} << w) < d.n) ++w;
  const std::size_t edge_bytes = (d.m_edges * 2 * w + 7) / 8;
  const Bytes packed = take(edge_bytes);
  std::string bits;
  for (auto b : packed)
    for (int i = 7; i >= 0; --i) bits.push_back(((b >> i) & 1) ? '1' : '0');
  for (std::uint64_t e = 0; e < d.m_edges; ++e) {
    auto field = [&](std::size_t off) { return w == 0 ? 0ull : std::stoull(bits.substr(off, w), nullptr, 2); };
    d.edges.emplace_back(field(2 * w * e), field(2 * w * e + w));
  }
  d.t = uint_be(4);
  for (std::uint64_t i = 0; i < d.t; ++i) d.payloads.push_back(take(payload_bytes));
  const std::uint64_t len = uint_be(8);
  d.message = take(len);
  if (pos != data.size()) throw std::runtime_error("trailing bytes");
  return d;
}

}  // namespace eidolon::oracle
