#pragma once

#include <cstdint>
#include <string_view>

#include "eidolon/bytes.hpp"
#include "eidolon/hash.hpp"

namespace eidolon {

inline constexpr std::string_view kCommitTag = "Commit-v1";

/// Randomness and digest lengths of the hash commitment. The digest width is
/// pinned to the 256-bit CoreHash output.
struct CommitmentParams {
  unsigned r_bits = 128;
  unsigned s_bits = 256;

  void validate() const {
    if (r_bits == 0 || r_bits % 8 != 0) throw Error(ErrorCode::parameter_range, "r_bits must be a positive multiple of 8");
    if (s_bits != 8 * kDigestBytes) throw Error(ErrorCode::parameter_range, "s_bits must equal the 256-bit hash width");
  }
  std::size_t r_bytes() const { return r_bits / 8; }
};

/// Revealed (color, randomness) pair.
struct Opening {
  std::uint32_t alpha = 0;
  Bytes randomness;

  bool operator==(const Opening&) const = default;
};

/// CoreHash("Commit-v1" || <alpha>_32 || randomness)
inline Digest commit(std::uint32_t alpha, ByteView randomness, const CommitmentParams& params = {}) {
  if (randomness.size() != params.r_bytes()) {
    throw Error(ErrorCode::bad_randomness_length, "expected " + std::to_string(params.r_bytes()) + " bytes, got " +
                                                      std::to_string(randomness.size()));
  }
  std::uint8_t buf[64];
  std::size_t len = 0;
  if (kCommitTag.size() + 4 + randomness.size() <= sizeof buf) {
    std::copy(kCommitTag.begin(), kCommitTag.end(), buf);
    len = kCommitTag.size();
    for (int i = 3; i >= 0; --i) buf[len++] = static_cast<std::uint8_t>(alpha >> (8 * i));
    std::copy(randomness.begin(), randomness.end(), buf + len);
    len += randomness.size();
    return core_hash(ByteView(buf, len));
  }
  return Sha256().update(kCommitTag).update_u32(alpha).update(randomness).finish();
}

inline bool verify_opening(const Digest& digest, const Opening& opening, const CommitmentParams& params = {}) {
  if (opening.randomness.size() != params.r_bytes()) return false;
  return commit(opening.alpha, opening.randomness, params) == digest;
}

}  // namespace eidolon
