#pragma once

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <memory>
#include <string_view>

#include "eidolon/bytes.hpp"

namespace eidolon {

namespace detail {

inline const EVP_MD* sha256_md() {
  static const EVP_MD* md = EVP_sha256();
  return md;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

}  // namespace detail

/// CoreHash: SHA-256, used for both the tree hash and the Fiat-Shamir oracle.
class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), detail::sha256_md(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 initialisation failed");
    }
  }

  Sha256& update(ByteView data) {
    EVP_DigestUpdate(ctx_.get(), data.data(), data.size());
    return *this;
  }
  Sha256& update(std::string_view s) { return update(as_bytes(s)); }
  Sha256& update_u8(std::uint8_t v) { return update(ByteView(&v, 1)); }
  Sha256& update_u32(std::uint32_t v) {
    const std::uint8_t b[4] = {std::uint8_t(v >> 24), std::uint8_t(v >> 16), std::uint8_t(v >> 8), std::uint8_t(v)};
    return update(ByteView(b, 4));
  }

  Digest finish() {
    Digest out{};
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx_.get(), out.data(), &len);
    EVP_DigestInit_ex(ctx_.get(), detail::sha256_md(), nullptr);
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, detail::MdCtxDeleter> ctx_;
};

inline Digest core_hash(ByteView data) {
  Digest out{};
  unsigned len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, detail::sha256_md(), nullptr);
  return out;
}

inline Digest hmac_sha256(ByteView key, ByteView data) {
  Digest out{};
  unsigned len = 0;
  HMAC(detail::sha256_md(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len);
  return out;
}

}  // namespace eidolon
