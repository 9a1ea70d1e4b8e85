#pragma once

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <variant>

#include "eidolon/sigscheme.hpp"

namespace eidolon {

// Key file:       "EIDK" | version | kind | <n>_64 | <k>_32 | ...
//   public  (1):  Edges(E)
//   secret  (2):  n one-byte colors | 32-byte master seed
// Signature file: "EIDS" | version | variant | <t>_32 | <n>_32 | alpha bits | r bytes   (16-byte header)
//                 | 16-byte nonce | body
//   plain body:   per round: n commitments, then (alpha_u, r_u, alpha_v, r_v)
//   merkle body:  t roots | t opening pairs | path hashes in round order
// All integers big-endian.

inline constexpr std::string_view kKeyMagic = "EIDK";
inline constexpr std::string_view kSigMagic = "EIDS";
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kPublicKind = 1;
inline constexpr std::uint8_t kSecretKind = 2;
inline constexpr std::size_t kSignatureHeaderBytes = 16;

namespace detail {

inline void expect_magic(BitReader& r, std::string_view magic) {
  for (char c : magic) {
    if (r.read_u8("magic") != static_cast<std::uint8_t>(c)) {
      throw Error(ErrorCode::malformed_input, "wrong magic, expected " + std::string(magic));
    }
  }
}

inline void expect_end(const BitReader& r) {
  if (!r.at_end()) r.fail("end of input", "trailing bytes");
}

inline void write_opening(BitWriter& w, const Opening& o) {
  w.write(o.alpha, SchemeParams::alpha_bits);
  w.write_bytes(o.randomness);
}

inline Opening read_opening(BitReader& r) {
  Opening o;
  o.alpha = static_cast<std::uint32_t>(r.read(SchemeParams::alpha_bits, "opening color"));
  o.randomness.resize(SchemeParams::r_bytes);
  r.read_bytes(o.randomness, "opening randomness");
  return o;
}

inline std::uint32_t read_key_header(BitReader& r, std::uint8_t kind, std::uint64_t& n) {
  expect_magic(r, kKeyMagic);
  if (r.read_u8("version") != kFormatVersion) r.fail("version", "unsupported version");
  if (r.read_u8("kind") != kind) r.fail("kind", "wrong key kind");
  n = r.read_u64("n");
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) r.fail("n", "vertex count out of range");
  const std::uint32_t k = r.read_u32("k");
  if (k == 0 || k > SchemeParams::max_k) r.fail("k", "color count out of range");
  return k;
}

}  // namespace detail

inline Bytes serialize(const PublicKey& pk) {
  BitWriter w;
  w.write_bytes(kKeyMagic);
  w.write_u8(kFormatVersion);
  w.write_u8(kPublicKind);
  w.write_u64(pk.graph.n());
  w.write_u32(pk.k);
  append_edges(w, pk.graph);
  return std::move(w).finish();
}

inline PublicKey deserialize_public_key(ByteView data) {
  BitReader r(data);
  std::uint64_t n = 0;
  const std::uint32_t k = detail::read_key_header(r, kPublicKind, n);
  const std::uint64_t m = r.read_u64("m");
  const unsigned width = vertex_width(static_cast<std::uint32_t>(n));
  if (m > pairs(n) || r.remaining_bits() < m * 2 * width) r.fail("edges", "edge count inconsistent with input size");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    Edge e{static_cast<Vertex>(r.read(width, "edge")), static_cast<Vertex>(r.read(width, "edge"))};
    if (e.u >= e.v || e.v >= n) r.fail("edge", "edge endpoints not u < v < n");
    if (!edges.empty() && !(edges.back() < e)) r.fail("edge", "edges not strictly increasing");
    edges.push_back(e);
  }
  r.align();
  detail::expect_end(r);
  return PublicKey{Graph(static_cast<std::uint32_t>(n), std::move(edges)), k};
}

inline Bytes serialize(const SecretKey& sk) {
  BitWriter w;
  w.write_bytes(kKeyMagic);
  w.write_u8(kFormatVersion);
  w.write_u8(kSecretKind);
  w.write_u64(sk.coloring.size());
  w.write_u32(sk.coloring.k);
  for (auto c : sk.coloring.colors) w.write(c, SchemeParams::alpha_bits);
  w.write_bytes(sk.master_seed);
  return std::move(w).finish();
}

inline SecretKey deserialize_secret_key(ByteView data) {
  BitReader r(data);
  std::uint64_t n = 0;
  const std::uint32_t k = detail::read_key_header(r, kSecretKind, n);
  if (r.remaining_bytes() != n + 32) r.fail("colors", "length does not match n");
  std::vector<Color> colors(n);
  for (auto& c : colors) {
    c = r.read_u8("color");
    if (c >= k) r.fail("color", "color >= k");
  }
  SecretKey sk{Coloring(std::move(colors), k), {}};
  r.read_bytes(sk.master_seed, "master seed");
  detail::expect_end(r);
  return sk;
}

namespace detail {

inline void write_signature_header(BitWriter& w, Variant variant, std::uint32_t t, std::uint32_t n, const Nonce& nonce) {
  w.write_bytes(kSigMagic);
  w.write_u8(kFormatVersion);
  w.write_u8(static_cast<std::uint8_t>(variant));
  w.write_u32(t);
  w.write_u32(n);
  w.write_u8(SchemeParams::alpha_bits);
  w.write_u8(SchemeParams::r_bytes);
  w.write_bytes(nonce);
}

}  // namespace detail

inline Bytes serialize(const SignaturePlain& sig) {
  const std::uint32_t t = sig.rounds();
  const std::uint32_t n = t == 0 ? 0 : static_cast<std::uint32_t>(sig.commitments.front().size());
  BitWriter w;
  detail::write_signature_header(w, Variant::plain, t, n, sig.nonce);
  for (std::uint32_t i = 0; i < t; ++i) {
    if (sig.commitments[i].size() != n) throw Error(ErrorCode::parameter_range, "ragged commitment lists");
    for (const auto& c : sig.commitments[i]) w.write_bytes(c);
    detail::write_opening(w, sig.openings[i].u);
    detail::write_opening(w, sig.openings[i].v);
  }
  return std::move(w).finish();
}

inline Bytes serialize(const SignatureMerkle& sig) {
  BitWriter w;
  detail::write_signature_header(w, sig.variant, sig.rounds(), sig.n, sig.nonce);
  for (const auto& root : sig.roots) w.write_bytes(root);
  for (const auto& pair : sig.openings) {
    detail::write_opening(w, pair.u);
    detail::write_opening(w, pair.v);
  }
  for (const auto& h : sig.path_hashes) w.write_bytes(h);
  return std::move(w).finish();
}

using Signature = std::variant<SignaturePlain, SignatureMerkle>;

inline Bytes serialize(const Signature& sig) {
  return std::visit([](const auto& s) { return serialize(s); }, sig);
}

inline Signature deserialize_signature(ByteView data) {
  BitReader r(data);
  detail::expect_magic(r, kSigMagic);
  if (r.read_u8("version") != kFormatVersion) r.fail("version", "unsupported version");
  const std::uint8_t variant_byte = r.read_u8("variant");
  if (variant_byte > 2) r.fail("variant", "unknown variant");
  const auto variant = static_cast<Variant>(variant_byte);
  const std::uint32_t t = r.read_u32("t");
  const std::uint32_t n = r.read_u32("n");
  if (r.read_u8("alpha bits") != SchemeParams::alpha_bits) r.fail("alpha bits", "unsupported color width");
  if (r.read_u8("r bytes") != SchemeParams::r_bytes) r.fail("r bytes", "unsupported randomness width");
  if (t == 0) r.fail("t", "round count must be positive");
  if (n < 2) r.fail("n", "vertex count must be at least 2");
  Nonce nonce{};
  r.read_bytes(nonce, "nonce");

  const std::uint64_t opening_bytes = 2 * (SchemeParams::alpha_bits / 8 + SchemeParams::r_bytes);
  const std::uint64_t remaining = r.remaining_bytes();
  if (variant == Variant::plain) {
    const std::uint64_t expected = std::uint64_t{t} * (std::uint64_t{n} * kDigestBytes + opening_bytes);
    if (remaining != expected) {
      r.fail("body", "expected " + std::to_string(expected) + " body bytes, found " + std::to_string(remaining));
    }
    SignaturePlain sig;
    sig.nonce = nonce;
    sig.commitments.resize(t);
    for (std::uint32_t i = 0; i < t; ++i) {
      sig.commitments[i].resize(n);
      for (auto& c : sig.commitments[i]) r.read_bytes(c, "commitment");
      sig.openings.push_back({detail::read_opening(r), detail::read_opening(r)});
    }
    detail::expect_end(r);
    return sig;
  }

  const std::uint64_t depth = ceil_log2(n);
  const std::uint64_t fixed = std::uint64_t{t} * (kDigestBytes + opening_bytes);
  if (remaining < fixed || (remaining - fixed) % kDigestBytes != 0) r.fail("body", "body length inconsistent with t");
  const std::uint64_t hashes = (remaining - fixed) / kDigestBytes;
  const std::uint64_t min_hashes = variant == Variant::merkle ? 2 * t * depth : t * (depth + 1);
  const std::uint64_t max_hashes = 2 * t * depth;
  if (hashes < min_hashes || hashes > max_hashes) r.fail("paths", "path hash count out of range");

  SignatureMerkle sig;
  sig.variant = variant;
  sig.nonce = nonce;
  sig.n = n;
  sig.roots.resize(t);
  for (auto& root : sig.roots) r.read_bytes(root, "root");
  for (std::uint32_t i = 0; i < t; ++i) sig.openings.push_back({detail::read_opening(r), detail::read_opening(r)});
  sig.path_hashes.resize(hashes);
  for (auto& h : sig.path_hashes) r.read_bytes(h, "path hash");
  detail::expect_end(r);
  return sig;
}

inline Verdict verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  if (const auto* plain = std::get_if<SignaturePlain>(&sig)) return verify_plain(pk, message, *plain);
  return verify_merkle(pk, message, std::get<SignatureMerkle>(sig));
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Secret files are created owner-only (0600) before any byte is written.
inline void write_file(const std::filesystem::path& path, ByteView data, bool secret = false) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, secret ? 0600 : 0644);
  if (fd < 0) throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  if (secret) ::fchmod(fd, 0600);  // an existing file keeps its old mode otherwise
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t wrote = ::write(fd, data.data() + done, data.size() - done);
    if (wrote < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw Error(ErrorCode::io_error, "write to " + path.string() + " failed");
    }
    done += static_cast<std::size_t>(wrote);
  }
  if (::close(fd) != 0) throw Error(ErrorCode::io_error, "closing " + path.string() + " failed");
}

}  // namespace eidolon
