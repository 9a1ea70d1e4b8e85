#pragma once

#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <span>

#include "eidolon/hash.hpp"

namespace eidolon {

/// Deterministic byte stream: block j = SHA-256(key || <j>_64).
///
/// Identical seeds give identical streams on every platform, which the
/// standard distributions do not guarantee. `from_entropy` keys the stream
/// from the OS random device for production use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    BitWriter w;
    w.write_bytes(std::string_view("eidolon-rng-v1"));
    w.write_u64(seed);
    key_ = core_hash(std::move(w).finish());
  }

  explicit Rng(const Digest& key) : key_(key) {}

  static Rng from_entropy() {
    std::random_device rd;
    Digest key{};
    for (std::size_t i = 0; i < key.size(); i += 4) {
      std::uint32_t v = rd();
      std::memcpy(key.data() + i, &v, 4);
    }
    return Rng(key);
  }

  /// Independent child stream; the parent is not advanced.
  Rng split(std::uint64_t stream) const {
    BitWriter w;
    w.write_bytes(std::string_view("split"));
    w.write_bytes(key_);
    w.write_u64(stream);
    return Rng(core_hash(std::move(w).finish()));
  }

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
      if (used_ == block_.size()) refill();
      b = block_[used_++];
    }
  }

  std::uint64_t next_u64() {
    std::uint8_t b[8];
    fill(b);
    std::uint64_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    return v;
  }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    for (;;) {
      std::uint64_t x = next_u64();
      if (x <= limit) return x % bound;
    }
  }

  /// Uniform double in [0,1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  // UniformRandomBitGenerator
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  void refill() {
    std::uint8_t input[kDigestBytes + 8];
    std::memcpy(input, key_.data(), kDigestBytes);
    for (int i = 0; i < 8; ++i) input[kDigestBytes + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
    ++counter_;
    block_ = core_hash(ByteView(input, sizeof input));
    used_ = 0;
  }

  Digest key_{};
  Digest block_{};
  std::size_t used_ = kDigestBytes;
  std::uint64_t counter_ = 0;
};

}  // namespace eidolon
