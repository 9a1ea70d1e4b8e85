#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "eidolon/challenge.hpp"
#include "eidolon/commitment.hpp"
#include "eidolon/encoding.hpp"
#include "eidolon/graph.hpp"
#include "eidolon/merkle.hpp"
#include "eidolon/protocol.hpp"
#include "eidolon/rng.hpp"

namespace eidolon {

/// Wire parameters. |alpha| = 8 bits caps k at 256.
struct SchemeParams {
  static constexpr unsigned lambda_bits = 256;
  static constexpr unsigned s_bits = 256;
  static constexpr unsigned r_bits = 128;
  static constexpr unsigned alpha_bits = 8;
  static constexpr std::uint32_t max_k = 1u << alpha_bits;
  static constexpr std::size_t r_bytes = r_bits / 8;
  static constexpr std::size_t nonce_bytes = 16;
};

using MasterSeed = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, SchemeParams::nonce_bytes>;

struct PublicKey {
  Graph graph;
  std::uint32_t k = 0;

  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  Coloring coloring;
  MasterSeed master_seed{};

  bool operator==(const SecretKey&) const = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
  PartitionSpec spec;
};

/// Balanced planted instance; redraws while the graph comes out edgeless.
inline KeyPair keygen(std::uint32_t n, std::uint32_t k, double density, Rng& rng) {
  if (k < 3 || k > n) throw Error(ErrorCode::parameter_range, "need n >= k >= 3");
  if (k > SchemeParams::max_k) throw Error(ErrorCode::parameter_range, "k must not exceed 256");
  if (!(density > 0.0 && density <= 1.0)) throw Error(ErrorCode::parameter_range, "density must lie in (0,1]");
  const PartitionSpec spec = PartitionSpec::balanced(n, k);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PlantedInstance inst = generate_planted(spec, density, rng);
    if (inst.graph.m() == 0) continue;
    KeyPair kp{PublicKey{std::move(inst.graph), k}, SecretKey{std::move(inst.coloring), {}}, spec};
    rng.fill(kp.sk.master_seed);
    return kp;
  }
  throw Error(ErrorCode::parameter_range, "density too low to obtain a graph with edges");
}

/// Colors sorted by HMAC(master_seed, nonce || <i>_32 || <c>_32)[0..16), ties by color.
/// Returns perm with perm[j] = j-th color in that order.
inline Permutation derive_round_permutation(const MasterSeed& master_seed, const Nonce& nonce, std::uint32_t round,
                                            std::uint32_t k) {
  struct Keyed {
    std::array<std::uint8_t, 16> tag;
    Color color;
  };
  std::vector<Keyed> keyed(k);
  std::uint8_t msg[SchemeParams::nonce_bytes + 8];
  std::copy(nonce.begin(), nonce.end(), msg);
  for (int s = 0; s < 4; ++s) msg[16 + s] = static_cast<std::uint8_t>(round >> (24 - 8 * s));
  for (Color c = 0; c < k; ++c) {
    for (int s = 0; s < 4; ++s) msg[20 + s] = static_cast<std::uint8_t>(c >> (24 - 8 * s));
    const Digest mac = hmac_sha256(master_seed, ByteView(msg, sizeof msg));
    std::copy_n(mac.begin(), 16, keyed[c].tag.begin());
    keyed[c].color = c;
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const Keyed& a, const Keyed& b) { return std::tie(a.tag, a.color) < std::tie(b.tag, b.color); });
  Permutation perm(k);
  for (std::uint32_t j = 0; j < k; ++j) perm[j] = keyed[j].color;
  return perm;
}

struct OpeningPair {
  Opening u;
  Opening v;

  bool operator==(const OpeningPair&) const = default;
};

enum class Variant : std::uint8_t { plain = 0, merkle = 1, merkle_shared = 2 };

constexpr std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::merkle: return "merkle";
    case Variant::merkle_shared: return "merkle-shared";
  }
  return "unknown";
}

/// Every round ships its full commitment list.
struct SignaturePlain {
  Nonce nonce{};
  std::vector<std::vector<Digest>> commitments;  // [round][vertex]
  std::vector<OpeningPair> openings;             // [round]

  std::uint32_t rounds() const { return static_cast<std::uint32_t>(openings.size()); }
  bool operator==(const SignaturePlain&) const = default;
};

/// Roots only; openings are authenticated by Merkle paths.
///
/// `path_hashes` concatenates, round by round, u's sibling list followed by
/// v's. In the shared variant v contributes only its siblings below the LCA
/// of (u,v); that count depends on the challenge edge, so the flat list is
/// split up during verification.
struct SignatureMerkle {
  Variant variant = Variant::merkle;
  Nonce nonce{};
  std::uint32_t n = 0;
  std::vector<Digest> roots;
  std::vector<OpeningPair> openings;
  std::vector<Digest> path_hashes;

  std::uint32_t rounds() const { return static_cast<std::uint32_t>(roots.size()); }
  bool operator==(const SignatureMerkle&) const = default;
};

enum class SigReason { accepted, malformed, bad_edge, bad_opening, bad_path, color_range, monochromatic };

constexpr std::string_view to_string(SigReason r) {
  switch (r) {
    case SigReason::accepted: return "accepted";
    case SigReason::malformed: return "malformed";
    case SigReason::bad_edge: return "bad-edge";
    case SigReason::bad_opening: return "bad-opening";
    case SigReason::bad_path: return "bad-path";
    case SigReason::color_range: return "color-range";
    case SigReason::monochromatic: return "monochromatic";
  }
  return "unknown";
}

struct Verdict {
  SigReason reason = SigReason::accepted;
  std::optional<std::uint32_t> round;  // first failing round, when applicable

  bool accepted() const { return reason == SigReason::accepted; }
};

namespace detail {

inline void check_signing_inputs(const PublicKey& pk, const SecretKey& sk, std::uint32_t t) {
  if (t == 0) throw Error(ErrorCode::parameter_range, "round count t must be positive");
  if (pk.k < 1 || pk.k > SchemeParams::max_k) throw Error(ErrorCode::parameter_range, "k out of range");
  if (pk.graph.m() == 0) throw Error(ErrorCode::parameter_range, "public graph has no edges");
  if (pk.graph.n() < 2) throw Error(ErrorCode::parameter_range, "public graph needs two vertices");
  if (sk.coloring.size() != pk.graph.n()) throw Error(ErrorCode::parameter_range, "secret coloring length differs from n");
  for (auto c : sk.coloring.colors) {
    if (c >= pk.k) throw Error(ErrorCode::parameter_range, "secret coloring uses a color >= k");
  }
}

inline Digest challenge_digest(const PublicKey& pk, const std::vector<Bytes>& payloads, ByteView message,
                               const Nonce& nonce) {
  Bytes input = encode_context(pk.graph, pk.k, payloads, message);
  input.insert(input.end(), nonce.begin(), nonce.end());
  return core_hash(input);
}

struct RoundSecrets {
  std::vector<Color> alpha;
  std::vector<Bytes> randomness;
  std::vector<Digest> commitments;
};

inline RoundSecrets commit_signing_round(const PublicKey& pk, const SecretKey& sk, const Nonce& nonce,
                                         std::uint32_t round, Rng& rng) {
  const std::uint32_t n = pk.graph.n();
  const Permutation perm = derive_round_permutation(sk.master_seed, nonce, round, pk.k);
  RoundSecrets out;
  out.alpha.resize(n);
  out.randomness.assign(n, Bytes(SchemeParams::r_bytes));
  out.commitments.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    out.alpha[v] = perm[sk.coloring[v]];
    rng.fill(out.randomness[v]);
    out.commitments[v] = commit(out.alpha[v], out.randomness[v]);
  }
  return out;
}

inline OpeningPair open_edge(const RoundSecrets& round, Edge e) {
  return {Opening{round.alpha[e.u], round.randomness[e.u]}, Opening{round.alpha[e.v], round.randomness[e.v]}};
}

inline SigReason check_colors(const OpeningPair& pair, std::uint32_t k) {
  if (pair.u.alpha >= k || pair.v.alpha >= k) return SigReason::color_range;
  if (pair.u.alpha == pair.v.alpha) return SigReason::monochromatic;
  return SigReason::accepted;
}

}  // namespace detail

inline SignaturePlain sign_plain(const PublicKey& pk, const SecretKey& sk, ByteView message, std::uint32_t t,
                                 Rng& rng) {
  detail::check_signing_inputs(pk, sk, t);
  SignaturePlain sig;
  rng.fill(sig.nonce);
  std::vector<detail::RoundSecrets> rounds;
  std::vector<Bytes> payloads;
  rounds.reserve(t);
  payloads.reserve(t);
  for (std::uint32_t i = 0; i < t; ++i) {
    rounds.push_back(detail::commit_signing_round(pk, sk, sig.nonce, i, rng));
    Bytes x;
    x.reserve(pk.graph.n() * kDigestBytes);
    for (const auto& c : rounds.back().commitments) x.insert(x.end(), c.begin(), c.end());
    payloads.push_back(std::move(x));
  }
  const Digest h = detail::challenge_digest(pk, payloads, message, sig.nonce);
  const ChallengeSet challenges = hash_to_edges(h, t, pk.graph);
  for (std::uint32_t i = 0; i < t; ++i) {
    sig.openings.push_back(detail::open_edge(rounds[i], challenges.edges[i]));
    sig.commitments.push_back(std::move(rounds[i].commitments));
  }
  return sig;
}

inline Verdict verify_plain(const PublicKey& pk, ByteView message, const SignaturePlain& sig) {
  const std::uint32_t t = sig.rounds();
  if (t == 0 || sig.commitments.size() != t || pk.graph.m() == 0) return {SigReason::malformed, std::nullopt};
  std::vector<Bytes> payloads;
  payloads.reserve(t);
  for (const auto& round : sig.commitments) {
    if (round.size() != pk.graph.n()) return {SigReason::malformed, std::nullopt};
    Bytes x;
    x.reserve(round.size() * kDigestBytes);
    for (const auto& c : round) x.insert(x.end(), c.begin(), c.end());
    payloads.push_back(std::move(x));
  }
  const Digest h = detail::challenge_digest(pk, payloads, message, sig.nonce);
  const ChallengeSet challenges = hash_to_edges(h, t, pk.graph);
  for (std::uint32_t i = 0; i < t; ++i) {
    const Edge e = challenges.edges[i];
    if (!pk.graph.has_edge(e.u, e.v)) return {SigReason::bad_edge, i};
    const auto& pair = sig.openings[i];
    if (!verify_opening(sig.commitments[i][e.u], pair.u) || !verify_opening(sig.commitments[i][e.v], pair.v)) {
      return {SigReason::bad_opening, i};
    }
    if (auto r = detail::check_colors(pair, pk.k); r != SigReason::accepted) return {r, i};
  }
  return {};
}

inline SignatureMerkle sign_merkle(const PublicKey& pk, const SecretKey& sk, ByteView message, std::uint32_t t,
                                   Rng& rng, bool shared_paths = false) {
  detail::check_signing_inputs(pk, sk, t);
  SignatureMerkle sig;
  sig.variant = shared_paths ? Variant::merkle_shared : Variant::merkle;
  sig.n = pk.graph.n();
  rng.fill(sig.nonce);
  std::vector<detail::RoundSecrets> rounds;
  std::vector<MerkleTree> trees;
  std::vector<Bytes> payloads;
  for (std::uint32_t i = 0; i < t; ++i) {
    rounds.push_back(detail::commit_signing_round(pk, sk, sig.nonce, i, rng));
    trees.push_back(MerkleTree::build(rounds.back().commitments));
    sig.roots.push_back(trees.back().root());
    payloads.emplace_back(sig.roots.back().begin(), sig.roots.back().end());
  }
  const Digest h = detail::challenge_digest(pk, payloads, message, sig.nonce);
  const ChallengeSet challenges = hash_to_edges(h, t, pk.graph);
  for (std::uint32_t i = 0; i < t; ++i) {
    const Edge e = challenges.edges[i];
    sig.openings.push_back(detail::open_edge(rounds[i], e));
    if (shared_paths) {
      const SharedPath sp = trees[i].shared_open(e.u, e.v);
      sig.path_hashes.insert(sig.path_hashes.end(), sp.u_siblings.begin(), sp.u_siblings.end());
      sig.path_hashes.insert(sig.path_hashes.end(), sp.v_low.begin(), sp.v_low.end());
    } else {
      const AuthPath pu = trees[i].open(e.u);
      const AuthPath pv = trees[i].open(e.v);
      sig.path_hashes.insert(sig.path_hashes.end(), pu.siblings.begin(), pu.siblings.end());
      sig.path_hashes.insert(sig.path_hashes.end(), pv.siblings.begin(), pv.siblings.end());
    }
  }
  return sig;
}

/// Number of path hashes a round transmits for challenge edge e.
inline std::size_t round_path_hashes(Variant variant, std::uint32_t n, Edge e) {
  const unsigned depth = ceil_log2(n);
  return variant == Variant::merkle_shared ? depth + lca_level(e.u, e.v) : 2 * std::size_t{depth};
}

inline Verdict verify_merkle(const PublicKey& pk, ByteView message, const SignatureMerkle& sig) {
  const std::uint32_t t = sig.rounds();
  const std::uint32_t n = pk.graph.n();
  if (t == 0 || sig.openings.size() != t || sig.n != n || n < 2 || pk.graph.m() == 0 ||
      sig.variant == Variant::plain) {
    return {SigReason::malformed, std::nullopt};
  }
  std::vector<Bytes> payloads;
  payloads.reserve(t);
  for (const auto& r : sig.roots) payloads.emplace_back(r.begin(), r.end());
  const Digest h = detail::challenge_digest(pk, payloads, message, sig.nonce);
  const ChallengeSet challenges = hash_to_edges(h, t, pk.graph);

  const unsigned depth = ceil_log2(n);
  std::size_t cursor = 0;
  std::vector<Digest> v_path(depth);
  for (std::uint32_t i = 0; i < t; ++i) {
    const Edge e = challenges.edges[i];
    if (!pk.graph.has_edge(e.u, e.v)) return {SigReason::bad_edge, i};
    const std::size_t need = round_path_hashes(sig.variant, n, e);
    if (sig.path_hashes.size() - cursor < need) return {SigReason::malformed, i};
    const std::span<const Digest> u_path(sig.path_hashes.data() + cursor, depth);
    const std::size_t v_own = need - depth;
    for (std::size_t level = 0; level < depth; ++level) {
      v_path[level] = level < v_own ? sig.path_hashes[cursor + depth + level] : u_path[level];
    }
    cursor += need;

    const auto& pair = sig.openings[i];
    if (pair.u.randomness.size() != SchemeParams::r_bytes || pair.v.randomness.size() != SchemeParams::r_bytes) {
      return {SigReason::malformed, i};
    }
    const Digest cu = commit(pair.u.alpha, pair.u.randomness);
    const Digest cv = commit(pair.v.alpha, pair.v.randomness);
    if (fold_path(e.u, n, cu, u_path) != sig.roots[i] || fold_path(e.v, n, cv, v_path) != sig.roots[i]) {
      return {SigReason::bad_path, i};
    }
    if (auto r = detail::check_colors(pair, pk.k); r != SigReason::accepted) return {r, i};
  }
  if (cursor != sig.path_hashes.size()) return {SigReason::malformed, std::nullopt};
  return {};
}

/// Shared sibling hashes per round, summed: sum over rounds of (depth - LCA level).
inline std::uint64_t total_shared_hashes(const SignatureMerkle& sig, const PublicKey& pk, ByteView message) {
  std::vector<Bytes> payloads;
  for (const auto& r : sig.roots) payloads.emplace_back(r.begin(), r.end());
  const Digest h = detail::challenge_digest(pk, payloads, message, sig.nonce);
  const ChallengeSet challenges = hash_to_edges(h, sig.rounds(), pk.graph);
  const unsigned depth = ceil_log2(pk.graph.n());
  std::uint64_t total = 0;
  for (const auto& e : challenges.edges) total += depth - lca_level(e.u, e.v);
  return total;
}

struct SizeParams {
  std::uint64_t lambda = SchemeParams::lambda_bits;
  std::uint64_t s = SchemeParams::s_bits;
  std::uint64_t r = SchemeParams::r_bits;
  std::uint64_t alpha = SchemeParams::alpha_bits;
};

/// Signature body size in bits.
///   plain:         t*n*s + 2t(alpha + r)
///   merkle:        t*lambda + 2t(alpha + r + lambda*ceil(log2 n))
///   merkle-shared: t*lambda + 2t(alpha + r) + t*lambda*(2*ceil(log2 n) - s_bar)
/// The shared form is rounded to the nearest bit when t*s_bar is fractional.
inline std::uint64_t signature_size_bits(std::uint64_t n, std::uint64_t t, Variant variant, double s_bar = 0.0,
                                         const SizeParams& p = {}) {
  const std::uint64_t depth = ceil_log2(n);
  switch (variant) {
    case Variant::plain: return t * n * p.s + 2 * t * (p.alpha + p.r);
    case Variant::merkle: return t * p.lambda + 2 * t * (p.alpha + p.r + p.lambda * depth);
    case Variant::merkle_shared: {
      const double path_bits = static_cast<double>(t * p.lambda) * (2.0 * static_cast<double>(depth) - s_bar);
      return t * p.lambda + 2 * t * (p.alpha + p.r) + static_cast<std::uint64_t>(std::llround(path_bits));
    }
  }
  return 0;
}

/// Exact shared-path size from the summed per-round shared counts.
inline std::uint64_t shared_size_bits(std::uint64_t n, std::uint64_t t, std::uint64_t total_shared,
                                      const SizeParams& p = {}) {
  const std::uint64_t depth = ceil_log2(n);
  return t * p.lambda + 2 * t * (p.alpha + p.r) + p.lambda * (2 * t * depth - total_shared);
}

}  // namespace eidolon
