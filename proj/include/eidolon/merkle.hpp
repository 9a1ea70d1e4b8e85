#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eidolon/bytes.hpp"
#include "eidolon/encoding.hpp"
#include "eidolon/hash.hpp"

namespace eidolon {

inline constexpr std::uint8_t kLeafPrefix = 0x00;
inline constexpr std::uint8_t kNodePrefix = 0x01;
inline constexpr std::uint8_t kPadPrefix = 0x02;

/// CoreHash(0x00 || enc(v) as ceil(w/8) big-endian bytes || c)
inline Digest leaf_hash(Vertex v, std::uint32_t n, const Digest& commitment) {
  const unsigned width = vertex_width(n);
  const unsigned index_bytes = (width + 7) / 8;
  std::uint8_t buf[1 + 4 + kDigestBytes];
  std::size_t len = 0;
  buf[len++] = kLeafPrefix;
  for (unsigned i = index_bytes; i-- > 0;) buf[len++] = static_cast<std::uint8_t>(v >> (8 * i));
  std::copy(commitment.begin(), commitment.end(), buf + len);
  len += kDigestBytes;
  return core_hash(ByteView(buf, len));
}

inline Digest node_hash(const Digest& left, const Digest& right) {
  std::uint8_t buf[1 + 2 * kDigestBytes];
  buf[0] = kNodePrefix;
  std::copy(left.begin(), left.end(), buf + 1);
  std::copy(right.begin(), right.end(), buf + 1 + kDigestBytes);
  return core_hash(ByteView(buf, sizeof buf));
}

inline const Digest& pad_leaf() {
  static const Digest pad = [] {
    const std::uint8_t buf[4] = {kPadPrefix, 'p', 'a', 'd'};
    return core_hash(ByteView(buf, 4));
  }();
  return pad;
}

/// Sibling hashes from the leaf level upwards; left/right order comes from the bits of leaf_index.
struct AuthPath {
  Vertex leaf_index = 0;
  std::vector<Digest> siblings;

  bool operator==(const AuthPath&) const = default;
};

/// Lowest tree level at which the ancestors of leaves a and b coincide.
inline unsigned lca_level(Vertex a, Vertex b) {
  unsigned level = 0;
  while ((a >> level) != (b >> level)) ++level;
  return level;
}

/// Two authentication paths with the common part above the LCA stored once.
///
/// `u_siblings` is u's full path. `v_low` holds v's siblings below the LCA
/// level L; at and above it v's siblings equal u's. shared_count = depth - L.
struct SharedPath {
  Vertex u = 0;
  Vertex v = 0;
  std::vector<Digest> u_siblings;
  std::vector<Digest> v_low;
  unsigned shared_count = 0;

  std::size_t hash_count() const { return u_siblings.size() + v_low.size(); }

  std::pair<AuthPath, AuthPath> expand() const {
    AuthPath pu{u, u_siblings};
    AuthPath pv{v, v_low};
    for (std::size_t level = v_low.size(); level < u_siblings.size(); ++level) pv.siblings.push_back(u_siblings[level]);
    return {std::move(pu), std::move(pv)};
  }
};

/// Binary Merkle tree over per-vertex commitments, padded to a power of two.
class MerkleTree {
 public:
  static MerkleTree build(std::span<const Digest> commitments) {
    if (commitments.size() < 2) throw Error(ErrorCode::too_few_leaves, "a tree needs at least two leaves");
    if (commitments.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::overflow, "too many leaves");
    }
    MerkleTree tree;
    tree.leaf_count_ = static_cast<std::uint32_t>(commitments.size());
    tree.depth_ = ceil_log2(tree.leaf_count_);
    std::vector<Digest> level(std::size_t{1} << tree.depth_, pad_leaf());
    for (std::uint32_t v = 0; v < tree.leaf_count_; ++v) level[v] = leaf_hash(v, tree.leaf_count_, commitments[v]);
    tree.levels_.push_back(std::move(level));
    while (tree.levels_.back().size() > 1) {
      const auto& below = tree.levels_.back();
      std::vector<Digest> above(below.size() / 2);
      for (std::size_t i = 0; i < above.size(); ++i) above[i] = node_hash(below[2 * i], below[2 * i + 1]);
      tree.levels_.push_back(std::move(above));
    }
    return tree;
  }

  std::uint32_t leaf_count() const { return leaf_count_; }
  unsigned depth() const { return depth_; }
  const Digest& root() const { return levels_.back().front(); }
  const std::vector<std::vector<Digest>>& levels() const { return levels_; }

  AuthPath open(Vertex v) const {
    if (v >= leaf_count_) throw Error(ErrorCode::index_out_of_range, "leaf " + std::to_string(v) + " out of range");
    AuthPath path{v, {}};
    path.siblings.reserve(depth_);
    for (unsigned level = 0; level < depth_; ++level) path.siblings.push_back(levels_[level][(v >> level) ^ 1u]);
    return path;
  }

  SharedPath shared_open(Vertex u, Vertex v) const {
    if (u == v) throw Error(ErrorCode::identical_indices, "shared opening needs two distinct leaves");
    AuthPath pu = open(u);
    AuthPath pv = open(v);
    const unsigned lca = lca_level(u, v);
    SharedPath shared{u, v, std::move(pu.siblings), {}, depth_ - lca};
    shared.v_low.assign(pv.siblings.begin(), pv.siblings.begin() + lca);
    return shared;
  }

 private:
  std::uint32_t leaf_count_ = 0;
  unsigned depth_ = 0;
  std::vector<std::vector<Digest>> levels_;
};

/// Root reached by folding `siblings` upwards from the leaf of (v, commitment).
inline Digest fold_path(Vertex v, std::uint32_t n, const Digest& commitment, std::span<const Digest> siblings) {
  Digest node = leaf_hash(v, n, commitment);
  for (std::size_t level = 0; level < siblings.size(); ++level) {
    node = ((v >> level) & 1u) ? node_hash(siblings[level], node) : node_hash(node, siblings[level]);
  }
  return node;
}

inline bool verify_path(const Digest& root, Vertex v, std::uint32_t n, const Digest& commitment, const AuthPath& path) {
  if (n < 2 || v >= n || path.leaf_index != v) return false;
  if (path.siblings.size() != ceil_log2(n)) return false;
  return fold_path(v, n, commitment, path.siblings) == root;
}

}  // namespace eidolon
