#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "eidolon/bytes.hpp"
#include "eidolon/graph.hpp"

namespace eidolon {

/// Domain-separation tag leading every Fiat-Shamir input (raw ASCII, no length prefix).
inline constexpr std::string_view kContextTag = "FS-GkColor-v1";

/// Fixed-width big-endian field.
struct BitField {
  std::uint64_t value = 0;
  unsigned width = 0;

  std::string to_string() const {
    std::string s;
    for (unsigned i = width; i-- > 0;) s.push_back(((value >> i) & 1u) ? '1' : '0');
    return s;
  }
};

inline unsigned vertex_width(std::uint32_t n) { return ceil_log2(n); }

inline BitField encode_vertex(Vertex v, std::uint32_t n) {
  if (n < 2) throw Error(ErrorCode::parameter_range, "vertex encoding needs n >= 2");
  if (v >= n) throw Error(ErrorCode::index_out_of_range, "vertex " + std::to_string(v) + " >= n");
  return {v, vertex_width(n)};
}

inline void append_edges(BitWriter& w, const Graph& g) {
  const unsigned width = vertex_width(g.n());
  w.write_u64(g.m());
  for (const auto& e : g.edges()) {
    w.write(e.u, width);
    w.write(e.v, width);
  }
  w.align();
}

/// <m>_64 followed by the bit-packed (u,v) pairs, zero-padded to a byte boundary.
inline Bytes encode_edges(const Graph& g) {
  BitWriter w;
  append_edges(w, g);
  return std::move(w).finish();
}

/// TAG || <n>_64 || <k>_32 || <m>_64 || Edges(E) || <t>_32 || X_0..X_{t-1} || <|M|>_64 || M
inline Bytes encode_context(const Graph& g, std::uint64_t k, const std::vector<Bytes>& payloads, ByteView message) {
  if (k > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorCode::overflow, "k exceeds 32 bits");
  if (payloads.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::overflow, "payload count exceeds 32 bits");
  }
  BitWriter w;
  w.write_bytes(kContextTag);
  w.write_u64(g.n());
  w.write_u32(static_cast<std::uint32_t>(k));
  w.write_u64(g.m());
  append_edges(w, g);
  w.write_u32(static_cast<std::uint32_t>(payloads.size()));
  for (const auto& x : payloads) w.write_bytes(x);
  w.write_u64(message.size());
  w.write_bytes(message);
  return std::move(w).finish();
}

}  // namespace eidolon
