#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eidolon/error.hpp"

namespace eidolon {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kDigestBytes = 32;
using Digest = std::array<std::uint8_t, kDigestBytes>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  int hi = -1;
  for (char c : hex) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    int v = nibble(c);
    if (v < 0) throw Error(ErrorCode::malformed_input, "invalid hex digit");
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
      hi = -1;
    }
  }
  if (hi >= 0) throw Error(ErrorCode::malformed_input, "odd number of hex digits");
  return out;
}

/// Smallest w with 2^w >= n; 0 for n <= 1.
constexpr unsigned ceil_log2(std::uint64_t n) {
  unsigned w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < n) ++w;
  return w;
}

/// MSB-first bit writer. Byte-level writes on an aligned stream append directly.
class BitWriter {
 public:
  void write(std::uint64_t value, unsigned width) {
    if (width < 64 && (value >> width) != 0) {
      throw Error(ErrorCode::overflow,
                  "value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
    }
    for (unsigned i = width; i-- > 0;) put_bit(((value >> i) & 1u) != 0);
  }

  void write_u8(std::uint8_t v) { write(v, 8); }
  void write_u32(std::uint32_t v) { write(v, 32); }
  void write_u64(std::uint64_t v) { write(v, 64); }

  void write_bytes(ByteView bytes) {
    if (bit_ == 0) {
      buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
      return;
    }
    for (auto b : bytes) write(b, 8);
  }

  void write_bytes(std::string_view s) { write_bytes(as_bytes(s)); }

  /// Zero-pads to the next byte boundary.
  void align() { bit_ = 0; }

  std::size_t bit_size() const { return buffer_.size() * 8 - (bit_ == 0 ? 0 : 8 - bit_); }

  Bytes finish() && {
    align();
    return std::move(buffer_);
  }

 private:
  void put_bit(bool bit) {
    if (bit_ == 0) buffer_.push_back(0);
    if (bit) buffer_.back() |= static_cast<std::uint8_t>(0x80u >> bit_);
    bit_ = (bit_ + 1) % 8;
  }

  Bytes buffer_;
  unsigned bit_ = 0;  // bits already used in buffer_.back()
};

/// MSB-first reader over a byte buffer; every failure reports the bit/byte position.
class BitReader {
 public:
  explicit BitReader(ByteView data) : data_(data) {}

  std::uint64_t read(unsigned width, std::string_view field = "field") {
    if (remaining_bits() < width) fail(field, "truncated input");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      std::size_t byte = pos_ / 8;
      unsigned bit = 7 - static_cast<unsigned>(pos_ % 8);
      v = (v << 1) | ((data_[byte] >> bit) & 1u);
      ++pos_;
    }
    return v;
  }

  std::uint8_t read_u8(std::string_view field = "u8") { return static_cast<std::uint8_t>(read(8, field)); }
  std::uint32_t read_u32(std::string_view field = "u32") { return static_cast<std::uint32_t>(read(32, field)); }
  std::uint64_t read_u64(std::string_view field = "u64") { return read(64, field); }

  void read_bytes(std::span<std::uint8_t> out, std::string_view field = "bytes") {
    if (remaining_bits() < out.size() * 8) fail(field, "truncated input");
    if (pos_ % 8 == 0) {
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_ / 8), out.size(), out.begin());
      pos_ += out.size() * 8;
      return;
    }
    for (auto& b : out) b = read_u8(field);
  }

  Digest read_digest(std::string_view field = "digest") {
    Digest d{};
    read_bytes(d, field);
    return d;
  }

  void align() { pos_ = (pos_ + 7) / 8 * 8; }

  std::size_t remaining_bits() const { return data_.size() * 8 - pos_; }
  std::size_t remaining_bytes() const { return remaining_bits() / 8; }
  std::size_t byte_offset() const { return pos_ / 8; }
  bool at_end() const { return pos_ >= data_.size() * 8; }

  [[noreturn]] void fail(std::string_view field, std::string_view why) const {
    throw Error(ErrorCode::malformed_input, std::string(why) + " while reading " + std::string(field) +
                                                " at byte offset " + std::to_string(pos_ / 8) + " (bit " +
                                                std::to_string(pos_) + ")");
  }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace eidolon
