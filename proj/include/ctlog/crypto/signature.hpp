// Copyright 2026 The ctlog Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Ed25519 signing for tree heads and certificate timestamps.

#ifndef CTLOG_CRYPTO_SIGNATURE_HPP_
#define CTLOG_CRYPTO_SIGNATURE_HPP_

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace ctlog::crypto {

inline constexpr std::size_t kSignatureSize = 64;
using PublicKeyBytes = std::array<uint8_t, 32>;

namespace detail {
struct PkeyFree {
  void operator()(EVP_PKEY* k) const { EVP_PKEY_free(k); }
};
struct MdCtxFree {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::shared_ptr<EVP_PKEY>;
}  // namespace detail

class VerifyKey {
 public:
  VerifyKey() = default;
  explicit VerifyKey(const PublicKeyBytes& raw) : raw_(raw) {
    EVP_PKEY* k = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, raw.data(), raw.size());
    if (k == nullptr) throw std::invalid_argument("invalid Ed25519 public key");
    key_ = detail::PkeyPtr(k, detail::PkeyFree{});
  }

  const PublicKeyBytes& bytes() const { return raw_; }
  bool valid() const { return key_ != nullptr; }
  bool operator==(const VerifyKey& o) const { return raw_ == o.raw_; }

  bool verify(std::span<const uint8_t> message, std::span<const uint8_t> signature) const {
    if (!key_ || signature.size() != kSignatureSize) return false;
    std::unique_ptr<EVP_MD_CTX, detail::MdCtxFree> ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key_.get()) != 1) {
      return false;
    }
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(),
                            message.size()) == 1;
  }

 private:
  PublicKeyBytes raw_{};
  detail::PkeyPtr key_;
};

class SigningKey {
 public:
  /// Deterministic key from a 32-byte seed.
  explicit SigningKey(std::span<const uint8_t, 32> seed) {
    std::copy(seed.begin(), seed.end(), seed_.begin());
    EVP_PKEY* k = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), 32);
    if (k == nullptr) throw std::runtime_error("Ed25519 key construction failed");
    key_ = detail::PkeyPtr(k, detail::PkeyFree{});
    PublicKeyBytes pub{};
    std::size_t len = pub.size();
    EVP_PKEY_get_raw_public_key(key_.get(), pub.data(), &len);
    verify_key_ = VerifyKey(pub);
  }

  const std::array<uint8_t, 32>& seed() const { return seed_; }
  const VerifyKey& verify_key() const { return verify_key_; }

  std::vector<uint8_t> sign(std::span<const uint8_t> message) const {
    std::unique_ptr<EVP_MD_CTX, detail::MdCtxFree> ctx(EVP_MD_CTX_new());
    std::vector<uint8_t> sig(kSignatureSize);
    std::size_t len = sig.size();
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key_.get()) != 1 ||
        EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1) {
      throw std::runtime_error("Ed25519 signing failed");
    }
    return sig;
  }

 private:
  std::array<uint8_t, 32> seed_{};
  detail::PkeyPtr key_;
  VerifyKey verify_key_;
};

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_SIGNATURE_HPP_
