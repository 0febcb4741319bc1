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

// BN254 base field, scalar field and the Fp2 / Fp6 / Fp12 extension tower.
//
//   Fp2  = Fp[i]  / (i^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 9 + i
//   Fp12 = Fp6[w] / (w^2 - v)

#ifndef CTLOG_CRYPTO_TOWER_HPP_
#define CTLOG_CRYPTO_TOWER_HPP_

#include <array>
#include <cstdint>

#include "ctlog/crypto/field.hpp"
#include "ctlog/crypto/u256.hpp"

namespace ctlog::crypto {

struct BaseFieldParams {
  static constexpr U256 kModulus = U256::from_hex(
      "30644e72e131a029b85045b68181585d97816a916871ca8d3c208c16d87cfd47");
};

struct ScalarFieldParams {
  static constexpr U256 kModulus = U256::from_hex(
      "30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001");
};

using Fp = MontField<BaseFieldParams>;
using Fr = MontField<ScalarFieldParams>;

// BN parameter u; the optimal ate loop runs over 6u + 2.
inline constexpr uint64_t kBnU = 4965661367192848881ULL;

struct Fp2 {
  Fp c0, c1;

  static constexpr Fp2 zero() { return {}; }
  static constexpr Fp2 one() { return {Fp::one(), Fp::zero()}; }
  static constexpr Fp2 xi() { return {Fp::from_u64(9), Fp::one()}; }

  constexpr bool operator==(const Fp2&) const = default;
  constexpr bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  constexpr Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  constexpr Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  constexpr Fp2 operator-() const { return {-c0, -c1}; }

  constexpr Fp2 operator*(const Fp2& o) const {
    Fp t0 = c0 * o.c0;
    Fp t1 = c1 * o.c1;
    return {t0 - t1, (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  constexpr Fp2 operator*(const Fp& k) const { return {c0 * k, c1 * k}; }

  constexpr Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  constexpr Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  constexpr Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  constexpr Fp2 square() const {
    Fp t = c0 * c1;
    return {(c0 + c1) * (c0 - c1), t + t};
  }
  constexpr Fp2 dbl() const { return *this + *this; }
  constexpr Fp2 conj() const { return {c0, -c1}; }

  // (c0 + c1 i)(9 + i)
  constexpr Fp2 mul_by_xi() const {
    Fp nine_c0 = c0.dbl().dbl().dbl() + c0;
    Fp nine_c1 = c1.dbl().dbl().dbl() + c1;
    return {nine_c0 - c1, c0 + nine_c1};
  }

  Fp2 inverse() const {
    Fp t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  Fp2 pow(const U256& e) const {
    Fp2 acc = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      acc = acc.square();
      if (e.bit(i)) acc *= *this;
    }
    return acc;
  }
};

struct Fp6 {
  Fp2 c0, c1, c2;

  static constexpr Fp6 zero() { return {}; }
  static constexpr Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  constexpr bool operator==(const Fp6&) const = default;
  constexpr bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

  constexpr Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  constexpr Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  constexpr Fp6 operator-() const { return {-c0, -c1, -c2}; }

  constexpr Fp6 operator*(const Fp6& o) const {
    Fp2 t0 = c0 * o.c0;
    Fp2 t1 = c1 * o.c1;
    Fp2 t2 = c2 * o.c2;
    return {
        t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi(),
        (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi(),
        (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1,
    };
  }

  constexpr Fp6 square() const { return *this * *this; }

  // Multiplication by v.
  constexpr Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

  Fp6 inverse() const {
    Fp2 a = c0.square() - (c1 * c2).mul_by_xi();
    Fp2 b = c2.square().mul_by_xi() - c0 * c1;
    Fp2 c = c1.square() - c0 * c2;
    Fp2 f = c0 * a + (c2 * b + c1 * c).mul_by_xi();
    Fp2 fi = f.inverse();
    return {a * fi, b * fi, c * fi};
  }
};

namespace detail {

constexpr U256 div_small(U256 a, uint64_t d) {
  U256 q;
  u128 rem = 0;
  for (int i = 3; i >= 0; --i) {
    u128 cur = (rem << 64) | a.limb[i];
    q.limb[i] = static_cast<uint64_t>(cur / d);
    rem = cur % d;
  }
  return q;
}

// gamma[k] = xi^(k (p - 1) / 6), the Frobenius twist constants.
struct FrobeniusConstants {
  std::array<Fp2, 6> gamma;

  FrobeniusConstants() {
    U256 pm1 = BaseFieldParams::kModulus;
    sub_from(pm1, U256::from_u64(1));
    Fp2 g1 = Fp2::xi().pow(div_small(pm1, 6));
    gamma[0] = Fp2::one();
    for (std::size_t k = 1; k < 6; ++k) gamma[k] = gamma[k - 1] * g1;
  }
};

inline const FrobeniusConstants& frobenius_constants() {
  static const FrobeniusConstants kConstants;
  return kConstants;
}

}  // namespace detail

struct Fp12 {
  Fp6 c0, c1;

  static constexpr Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  constexpr bool operator==(const Fp12&) const = default;
  constexpr bool is_one() const { return *this == one(); }

  constexpr Fp12 operator*(const Fp12& o) const {
    Fp6 t0 = c0 * o.c0;
    Fp6 t1 = c1 * o.c1;
    return {t0 + t1.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  constexpr Fp12& operator*=(const Fp12& o) { return *this = *this * o; }

  constexpr Fp12 square() const {
    Fp6 t = c0 * c1;
    Fp6 c0n = (c0 + c1) * (c0 + c1.mul_by_v()) - t - t.mul_by_v();
    return {c0n, t + t};
  }

  // Frobenius^6, which is the inverse on the cyclotomic subgroup.
  constexpr Fp12 conj() const { return {c0, -c1}; }

  Fp12 inverse() const {
    Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  // x -> x^p. Coefficients sit on the basis w^0, w^2, w^4 (c0) and
  // w^1, w^3, w^5 (c1); conj(a) w^(kp) = conj(a) gamma[k] w^k.
  Fp12 frobenius() const {
    const auto& g = detail::frobenius_constants().gamma;
    return {
        {c0.c0.conj(), c0.c1.conj() * g[2], c0.c2.conj() * g[4]},
        {c1.c0.conj() * g[1], c1.c1.conj() * g[3], c1.c2.conj() * g[5]},
    };
  }

  Fp12 pow_u64(uint64_t e) const {
    Fp12 acc = one();
    for (int i = 63; i >= 0; --i) {
      acc = acc.square();
      if ((e >> i) & 1) acc *= *this;
    }
    return acc;
  }
};

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_TOWER_HPP_
