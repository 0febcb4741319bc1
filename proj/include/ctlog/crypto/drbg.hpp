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

#ifndef CTLOG_CRYPTO_DRBG_HPP_
#define CTLOG_CRYPTO_DRBG_HPP_

#include <openssl/rand.h>

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

#include "ctlog/crypto/hash.hpp"
#include "ctlog/crypto/tower.hpp"

namespace ctlog::crypto {

/// SHA-256 counter-mode generator. Seeded explicitly for reproducible
/// setups, or from the OS via `from_os()`. Satisfies
/// UniformRandomBitGenerator so it plugs into <random> and <algorithm>.
class Drbg {
 public:
  using Seed = std::array<uint8_t, 32>;
  using result_type = uint64_t;

  explicit Drbg(const Seed& seed) : seed_(seed) {}

  static Drbg from_u64(uint64_t v) {
    Seed s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(v >> (8 * i));
    return Drbg(sha256(s));
  }

  static Drbg from_os() {
    Seed s{};
    if (RAND_bytes(s.data(), static_cast<int>(s.size())) != 1) {
      throw std::runtime_error("OS randomness unavailable");
    }
    return Drbg(s);
  }

  void fill(std::span<uint8_t> out) {
    std::size_t off = 0;
    while (off < out.size()) {
      if (pos_ == block_.size()) refill();
      std::size_t n = std::min(out.size() - off, block_.size() - pos_);
      std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out.begin() + static_cast<std::ptrdiff_t>(off));
      pos_ += n;
      off += n;
    }
  }

  Seed bytes32() {
    Seed s{};
    fill(s);
    return s;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::array<uint8_t, 8> b{};
    fill(b);
    result_type v = 0;
    for (uint8_t x : b) v = (v << 8) | x;
    return v;
  }

  /// Uniform nonzero scalar by rejection sampling.
  Fr nonzero_scalar() {
    for (;;) {
      Seed b = bytes32();
      b[0] &= 0x3F;
      auto f = Fr::from_be_bytes(b);
      if (f && !f->is_zero()) return *f;
    }
  }

 private:
  void refill() {
    Sha256 h;
    h.update(seed_);
    std::array<uint8_t, 8> ctr{};
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
    h.update(ctr);
    block_ = h.finish();
    ++counter_;
    pos_ = 0;
  }

  Seed seed_;
  uint64_t counter_ = 0;
  Digest block_{};
  std::size_t pos_ = 32;
};

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_DRBG_HPP_
