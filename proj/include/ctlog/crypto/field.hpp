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

#ifndef CTLOG_CRYPTO_FIELD_HPP_
#define CTLOG_CRYPTO_FIELD_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>

#include <x86intrin.h>

#include "ctlog/crypto/u256.hpp"

namespace ctlog::crypto {

/// Prime field element in Montgomery form over a modulus below 2^255.
///
/// `Params` supplies `static constexpr U256 kModulus`. All derived
/// constants (R mod p, R^2 mod p, -p^-1 mod 2^64) are computed at compile
/// time from the modulus.
template <class Params>
class MontField {
 public:
  static constexpr U256 kModulus = Params::kModulus;

 private:
  static constexpr uint64_t compute_inv() {
    // Newton iteration for p^-1 mod 2^64, then negate.
    uint64_t inv = 1;
    for (int i = 0; i < 7; ++i) inv *= 2 - kModulus.limb[0] * inv;
    return ~inv + 1;
  }

  static constexpr U256 double_mod(U256 a) {
    U256 b = a;
    add_to(a, b);
    if (a >= kModulus) sub_from(a, kModulus);
    return a;
  }

  static constexpr U256 compute_r(int doublings) {
    U256 r = U256::from_u64(1);
    for (int i = 0; i < doublings; ++i) r = double_mod(r);
    return r;
  }

  static constexpr uint64_t kInv = compute_inv();
  static constexpr U256 kR = compute_r(256);
  static constexpr U256 kR2 = compute_r(512);

  static_assert(kModulus.limb[3] >> 63 == 0, "modulus must leave a spare top bit");

  static constexpr U256 mont_mul(const U256& a, const U256& b) {
    uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
      u128 carry = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        u128 cur = static_cast<u128>(a.limb[j]) * b.limb[i] + t[j] + carry;
        t[j] = static_cast<uint64_t>(cur);
        carry = cur >> 64;
      }
      u128 cur = static_cast<u128>(t[4]) + carry;
      t[4] = static_cast<uint64_t>(cur);
      t[5] = static_cast<uint64_t>(cur >> 64);

      uint64_t m = t[0] * kInv;
      cur = static_cast<u128>(m) * kModulus.limb[0] + t[0];
      carry = cur >> 64;
      for (std::size_t j = 1; j < 4; ++j) {
        cur = static_cast<u128>(m) * kModulus.limb[j] + t[j] + carry;
        t[j - 1] = static_cast<uint64_t>(cur);
        carry = cur >> 64;
      }
      cur = static_cast<u128>(t[4]) + carry;
      t[3] = static_cast<uint64_t>(cur);
      t[4] = t[5] + static_cast<uint64_t>(cur >> 64);
    }
    U256 out{{t[0], t[1], t[2], t[3]}};
    if (t[4] != 0 || out >= kModulus) sub_from(out, kModulus);
    return out;
  }

  // Unrolled runtime path of mont_mul.
  static U256 mont_mul_rt(const U256& a, const U256& b) {
    const uint64_t* p = kModulus.limb.data();
    uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const uint64_t bi = b.limb[i];
      u128 c = static_cast<u128>(a.limb[0]) * bi + t0;
      t0 = static_cast<uint64_t>(c);
      c = static_cast<u128>(a.limb[1]) * bi + t1 + static_cast<uint64_t>(c >> 64);
      t1 = static_cast<uint64_t>(c);
      c = static_cast<u128>(a.limb[2]) * bi + t2 + static_cast<uint64_t>(c >> 64);
      t2 = static_cast<uint64_t>(c);
      c = static_cast<u128>(a.limb[3]) * bi + t3 + static_cast<uint64_t>(c >> 64);
      t3 = static_cast<uint64_t>(c);
      c = static_cast<u128>(t4) + static_cast<uint64_t>(c >> 64);
      t4 = static_cast<uint64_t>(c);
      const uint64_t t5 = static_cast<uint64_t>(c >> 64);
      const uint64_t m = t0 * kInv;
      c = static_cast<u128>(m) * p[0] + t0;
      c = static_cast<u128>(m) * p[1] + t1 + static_cast<uint64_t>(c >> 64);
      t0 = static_cast<uint64_t>(c);
      c = static_cast<u128>(m) * p[2] + t2 + static_cast<uint64_t>(c >> 64);
      t1 = static_cast<uint64_t>(c);
      c = static_cast<u128>(m) * p[3] + t3 + static_cast<uint64_t>(c >> 64);
      t2 = static_cast<uint64_t>(c);
      c = static_cast<u128>(t4) + static_cast<uint64_t>(c >> 64);
      t3 = static_cast<uint64_t>(c);
      t4 = t5 + static_cast<uint64_t>(c >> 64);
    }
    return reduce_once(t0, t1, t2, t3, t4);
  }

  // Subtracts the modulus once if (hi:t) >= p.
  static U256 reduce_once(uint64_t t0, uint64_t t1, uint64_t t2, uint64_t t3, uint64_t hi) {
    unsigned long long s0, s1, s2, s3;
    unsigned char br = _subborrow_u64(0, t0, kModulus.limb[0], &s0);
    br = _subborrow_u64(br, t1, kModulus.limb[1], &s1);
    br = _subborrow_u64(br, t2, kModulus.limb[2], &s2);
    br = _subborrow_u64(br, t3, kModulus.limb[3], &s3);
    if (hi != 0 || br == 0) return U256{{s0, s1, s2, s3}};
    return U256{{t0, t1, t2, t3}};
  }

  static U256 add_rt(const U256& a, const U256& b) {
    unsigned long long r0, r1, r2, r3;
    unsigned char c = _addcarry_u64(0, a.limb[0], b.limb[0], &r0);
    c = _addcarry_u64(c, a.limb[1], b.limb[1], &r1);
    c = _addcarry_u64(c, a.limb[2], b.limb[2], &r2);
    c = _addcarry_u64(c, a.limb[3], b.limb[3], &r3);
    return reduce_once(r0, r1, r2, r3, c);
  }

  static U256 sub_rt(const U256& a, const U256& b) {
    unsigned long long r0, r1, r2, r3;
    unsigned char br = _subborrow_u64(0, a.limb[0], b.limb[0], &r0);
    br = _subborrow_u64(br, a.limb[1], b.limb[1], &r1);
    br = _subborrow_u64(br, a.limb[2], b.limb[2], &r2);
    br = _subborrow_u64(br, a.limb[3], b.limb[3], &r3);
    if (br != 0) {
      unsigned char c = _addcarry_u64(0, r0, kModulus.limb[0], &r0);
      c = _addcarry_u64(c, r1, kModulus.limb[1], &r1);
      c = _addcarry_u64(c, r2, kModulus.limb[2], &r2);
      _addcarry_u64(c, r3, kModulus.limb[3], &r3);
    }
    return U256{{r0, r1, r2, r3}};
  }

  U256 mont_{};

  struct RawTag {};
  constexpr MontField(RawTag, const U256& mont) : mont_(mont) {}

 public:
  constexpr MontField() = default;

  static constexpr MontField zero() { return MontField(); }
  static constexpr MontField one() { return MontField(RawTag{}, kR); }

  static constexpr MontField from_u64(uint64_t v) {
    return MontField(RawTag{}, mont_mul(U256::from_u64(v), kR2));
  }

  /// Canonical value must already be below the modulus.
  static constexpr std::optional<MontField> from_canonical(const U256& v) {
    if (v >= kModulus) return std::nullopt;
    return MontField(RawTag{}, mont_mul(v, kR2));
  }

  /// Reduces an arbitrary 256-bit value modulo the field prime.
  static constexpr MontField from_u256_reduce(U256 v) {
    while (v >= kModulus) sub_from(v, kModulus);
    return MontField(RawTag{}, mont_mul(v, kR2));
  }

  static std::optional<MontField> from_be_bytes(std::span<const uint8_t, 32> in) {
    return from_canonical(U256::from_be_bytes(in));
  }

  constexpr U256 to_u256() const { return mont_mul(mont_, U256::from_u64(1)); }
  std::array<uint8_t, 32> to_be_bytes() const { return to_u256().to_be_bytes(); }

  constexpr bool is_zero() const { return mont_.is_zero(); }
  constexpr bool operator==(const MontField&) const = default;

  constexpr MontField operator+(const MontField& o) const {
    if (!std::is_constant_evaluated()) return MontField(RawTag{}, add_rt(mont_, o.mont_));
    U256 r = mont_;
    add_to(r, o.mont_);
    if (r >= kModulus) sub_from(r, kModulus);
    return MontField(RawTag{}, r);
  }

  constexpr MontField operator-(const MontField& o) const {
    if (!std::is_constant_evaluated()) return MontField(RawTag{}, sub_rt(mont_, o.mont_));
    U256 r = mont_;
    if (sub_from(r, o.mont_)) add_to(r, kModulus);
    return MontField(RawTag{}, r);
  }

  constexpr MontField operator-() const { return zero() - *this; }

  constexpr MontField operator*(const MontField& o) const {
    if (!std::is_constant_evaluated()) return MontField(RawTag{}, mont_mul_rt(mont_, o.mont_));
    return MontField(RawTag{}, mont_mul(mont_, o.mont_));
  }

  constexpr MontField& operator+=(const MontField& o) { return *this = *this + o; }
  constexpr MontField& operator-=(const MontField& o) { return *this = *this - o; }
  constexpr MontField& operator*=(const MontField& o) { return *this = *this * o; }

  constexpr MontField square() const { return *this * *this; }
  constexpr MontField dbl() const { return *this + *this; }

  constexpr MontField pow(const U256& e) const {
    MontField acc = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      acc = acc.square();
      if (e.bit(i)) acc *= *this;
    }
    return acc;
  }

  /// Multiplicative inverse; zero maps to zero.
  MontField inverse() const {
    // Binary extended Euclid on canonical values, then back to Montgomery.
    if (is_zero()) return zero();
    U256 u = to_u256();
    U256 v = kModulus;
    U256 x1 = U256::from_u64(1);
    U256 x2{};
    auto halve_mod = [](U256& x) {
      if (x.limb[0] & 1) {
        uint64_t carry = add_to(x, kModulus);
        x = shr1(x);
        x.limb[3] |= carry << 63;
      } else {
        x = shr1(x);
      }
    };
    auto sub_mod = [](U256& a, const U256& b) {
      if (sub_from(a, b)) add_to(a, kModulus);
    };
    const U256 one_val = U256::from_u64(1);
    while (!(u == one_val) && !(v == one_val)) {
      while ((u.limb[0] & 1) == 0) {
        u = shr1(u);
        halve_mod(x1);
      }
      while ((v.limb[0] & 1) == 0) {
        v = shr1(v);
        halve_mod(x2);
      }
      if (u >= v) {
        sub_from(u, v);
        sub_mod(x1, x2);
      } else {
        sub_from(v, u);
        sub_mod(x2, x1);
      }
    }
    U256 r = (u == one_val) ? x1 : x2;
    return MontField(RawTag{}, mont_mul(r, kR2));
  }

  /// Square root for moduli congruent to 3 mod 4.
  std::optional<MontField> sqrt() const {
    static_assert((kModulus.limb[0] & 3) == 3, "sqrt requires p = 3 mod 4");
    U256 e = kModulus;
    add_to(e, U256::from_u64(1));
    e = shr1(shr1(e));
    MontField r = pow(e);
    if (r.square() == *this) return r;
    return std::nullopt;
  }

  /// True when the canonical value is odd; used as the compressed-point sign.
  bool is_odd() const { return to_u256().limb[0] & 1; }
};

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_FIELD_HPP_
