#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "eidolon/bytes.hpp"
#include "eidolon/graph.hpp"
#include "eidolon/hash.hpp"

namespace eidolon {

inline constexpr std::string_view kEdgeDeriveTag = "EdgeDerive-v1";

struct ChallengeSet {
  std::vector<Edge> edges;
  std::vector<std::uint64_t> indices;
  std::vector<std::uint32_t> rejection_counts;  // rejected blocks per challenge index
};

namespace detail {

inline Digest edge_block(const Digest& h, std::uint32_t i, std::uint32_t j) {
  std::uint8_t buf[kEdgeDeriveTag.size() + kDigestBytes + 8];
  std::size_t len = 0;
  for (char c : kEdgeDeriveTag) buf[len++] = static_cast<std::uint8_t>(c);
  for (auto b : h) buf[len++] = b;
  for (int s = 24; s >= 0; s -= 8) buf[len++] = static_cast<std::uint8_t>(i >> s);
  for (int s = 24; s >= 0; s -= 8) buf[len++] = static_cast<std::uint8_t>(j >> s);
  return core_hash(ByteView(buf, len));
}

inline std::uint64_t load_be64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

/// Rejection test and reduction for a 256-bit block against modulus m.
/// Accepts iff x < floor(2^256/m)*m = 2^256 - (2^256 mod m).
inline bool reduce_block_256(const Digest& block, std::uint64_t m, std::uint64_t& index) {
  using u128 = unsigned __int128;
  const std::uint64_t two64_mod = static_cast<std::uint64_t>((u128{1} << 64) % m);
  std::uint64_t r = 1 % m;
  for (int i = 0; i < 4; ++i) r = static_cast<std::uint64_t>(u128{r} * two64_mod % m);

  std::uint64_t limbs[4];
  for (int i = 0; i < 4; ++i) limbs[i] = load_be64(block.data() + 8 * i);
  if (r != 0) {
    const std::uint64_t all = ~std::uint64_t{0};
    if (limbs[0] == all && limbs[1] == all && limbs[2] == all && limbs[3] > all - r) return false;
  }
  u128 acc = 0;
  for (auto limb : limbs) acc = ((acc << 64) | limb) % m;
  index = static_cast<std::uint64_t>(acc);
  return true;
}

/// Reduced-width variant: x is the top `bits` bits of the block (1 <= bits <= 63).
/// Only used to exercise the rejection loop with small moduli.
inline bool reduce_block_narrow(const Digest& block, std::uint64_t m, unsigned bits, std::uint64_t& index) {
  const std::uint64_t x = load_be64(block.data()) >> (64 - bits);
  const std::uint64_t range = std::uint64_t{1} << bits;
  const std::uint64_t limit = range / m * m;
  if (x >= limit) return false;
  index = x % m;
  return true;
}

/// Index for challenge i with the block width set to `bits` (256 in the scheme).
inline std::uint64_t derive_index(const Digest& h, std::uint32_t i, std::uint64_t m, unsigned bits,
                                  std::uint32_t& rejections) {
  if (bits != 256 && (bits == 0 || bits > 63)) throw Error(ErrorCode::parameter_range, "unsupported block width");
  if (bits != 256 && m > (std::uint64_t{1} << bits)) throw Error(ErrorCode::parameter_range, "modulus wider than block");
  rejections = 0;
  for (std::uint32_t j = 0;; ++j) {
    const Digest block = edge_block(h, i, j);
    std::uint64_t index = 0;
    const bool ok = bits == 256 ? reduce_block_256(block, m, index) : reduce_block_narrow(block, m, bits, index);
    if (ok) return index;
    ++rejections;
  }
}

}  // namespace detail

/// Derives t challenge edges (with replacement) from the Fiat-Shamir digest h.
inline ChallengeSet hash_to_edges(const Digest& h, std::uint32_t t, const Graph& g, unsigned block_bits = 256) {
  const std::uint64_t m = g.m();
  if (m == 0) throw Error(ErrorCode::empty_edge_set, "cannot derive challenges from a graph without edges");
  if (t == 0) throw Error(ErrorCode::parameter_range, "round count must be positive");
  ChallengeSet out;
  out.edges.reserve(t);
  out.indices.reserve(t);
  out.rejection_counts.reserve(t);
  for (std::uint32_t i = 0; i < t; ++i) {
    std::uint32_t rejected = 0;
    const std::uint64_t idx = detail::derive_index(h, i, m, block_bits, rejected);
    out.indices.push_back(idx);
    out.edges.push_back(g.edges()[idx]);
    out.rejection_counts.push_back(rejected);
  }
  return out;
}

}  // namespace eidolon
