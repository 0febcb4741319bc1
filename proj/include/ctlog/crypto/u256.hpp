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

#ifndef CTLOG_CRYPTO_U256_HPP_
#define CTLOG_CRYPTO_U256_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ctlog::crypto {

using u128 = unsigned __int128;

// Fixed-width 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
  std::array<uint64_t, 4> limb{};

  constexpr bool operator==(const U256&) const = default;

  constexpr bool is_zero() const {
    return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
  }

  constexpr bool bit(std::size_t i) const {
    return (limb[i / 64] >> (i % 64)) & 1;
  }

  constexpr std::size_t bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) {
        uint64_t w = limb[i];
        std::size_t n = 0;
        while (w != 0) {
          w >>= 1;
          ++n;
        }
        return static_cast<std::size_t>(i) * 64 + n;
      }
    }
    return 0;
  }

  static constexpr U256 from_u64(uint64_t v) { return U256{{v, 0, 0, 0}}; }

  // Parses a hex literal (optional "0x" prefix). Used for curve constants.
  static constexpr U256 from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
      hex.remove_prefix(2);
    }
    U256 out;
    std::size_t nibble = 0;
    for (std::size_t i = hex.size(); i-- > 0;) {
      char c = hex[i];
      uint64_t d = 0;
      if (c >= '0' && c <= '9') {
        d = static_cast<uint64_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        d = static_cast<uint64_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        d = static_cast<uint64_t>(c - 'A' + 10);
      } else {
        continue;
      }
      out.limb[nibble / 16] |= d << (4 * (nibble % 16));
      ++nibble;
    }
    return out;
  }

  static constexpr U256 from_be_bytes(std::span<const uint8_t, 32> in) {
    U256 out;
    for (std::size_t i = 0; i < 32; ++i) {
      out.limb[3 - i / 8] |= static_cast<uint64_t>(in[i]) << (8 * (7 - i % 8));
    }
    return out;
  }

  constexpr std::array<uint8_t, 32> to_be_bytes() const {
    std::array<uint8_t, 32> out{};
    for (std::size_t i = 0; i < 32; ++i) {
      out[i] = static_cast<uint8_t>(limb[3 - i / 8] >> (8 * (7 - i % 8)));
    }
    return out;
  }
};

constexpr int compare(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

constexpr bool operator<(const U256& a, const U256& b) { return compare(a, b) < 0; }
constexpr bool operator>=(const U256& a, const U256& b) { return compare(a, b) >= 0; }

// a + b, returning the carry out.
constexpr uint64_t add_to(U256& a, const U256& b) {
  u128 carry = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a.limb[i]) + b.limb[i] + carry;
    a.limb[i] = static_cast<uint64_t>(s);
    carry = s >> 64;
  }
  return static_cast<uint64_t>(carry);
}

// a - b, returning the borrow out.
constexpr uint64_t sub_from(U256& a, const U256& b) {
  uint64_t borrow = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    uint64_t bi = b.limb[i];
    uint64_t d = a.limb[i] - bi - borrow;
    borrow = (a.limb[i] < bi || (a.limb[i] == bi && borrow)) ? 1 : 0;
    a.limb[i] = d;
  }
  return borrow;
}

constexpr U256 shr1(U256 a) {
  for (std::size_t i = 0; i < 4; ++i) {
    a.limb[i] >>= 1;
    if (i < 3) a.limb[i] |= a.limb[i + 1] << 63;
  }
  return a;
}

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_U256_HPP_
