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

// Optimal ate pairing on BN254: e: G1 x G2 -> GT (subgroup of Fp12^*).

#ifndef CTLOG_CRYPTO_PAIRING_HPP_
#define CTLOG_CRYPTO_PAIRING_HPP_

#include <cstdint>

#include "ctlog/crypto/curve.hpp"
#include "ctlog/crypto/tower.hpp"

namespace ctlog::crypto {

using Gt = Fp12;

namespace detail {

inline uint64_t& pairing_counter() {
  thread_local uint64_t count = 0;
  return count;
}

// 6u + 2 does not fit in 64 bits.
inline constexpr u128 kAteLoop = static_cast<u128>(kBnU) * 6 + 2;

struct TwistAffine {
  Fp2 x, y;
};

// Homogeneous projective point (X / Z, Y / Z) on the twist.
struct TwistProjective {
  Fp2 x, y, z;
};

// Sparse line value: c0 + c3 w + c4 w^3, with c0, c3 already scaled by the
// G1 coordinates. Projective line formulas yield the affine line times an
// Fp2 factor, which the final exponentiation removes.
struct LineValue {
  Fp2 c0, c3, c4;
};

inline Fp2 scale(const Fp2& a, const Fp& k) { return a * k; }

inline LineValue double_step(TwistProjective& r, const G1::Affine& p) {
  static const Fp kTwoInv = Fp::from_u64(2).inverse();
  Fp2 a = scale(r.x * r.y, kTwoInv);
  Fp2 b = r.y.square();
  Fp2 c = r.z.square();
  Fp2 e = G2Curve::b() * (c.dbl() + c);
  Fp2 f = e.dbl() + e;
  Fp2 g = scale(b + f, kTwoInv);
  Fp2 h = (r.y + r.z).square() - (b + c);
  Fp2 i = e - b;
  Fp2 j = r.x.square();
  Fp2 e_sq = e.square();
  r.x = a * (b - f);
  r.y = g.square() - (e_sq.dbl() + e_sq);
  r.z = b * h;
  return {scale(-h, p.y), scale(j.dbl() + j, p.x), i};
}

inline LineValue add_step(TwistProjective& r, const TwistAffine& q, const G1::Affine& p) {
  Fp2 theta = r.y - q.y * r.z;
  Fp2 lambda = r.x - q.x * r.z;
  Fp2 c = theta.square();
  Fp2 d = lambda.square();
  Fp2 e = lambda * d;
  Fp2 f = r.z * c;
  Fp2 g = r.x * d;
  Fp2 h = e + f - g.dbl();
  r.x = lambda * h;
  r.y = theta * (g - h) - e * r.y;
  r.z = r.z * e;
  Fp2 j = theta * q.x - lambda * q.y;
  return {scale(lambda, p.y), scale(-theta, p.x), j};
}

// (x0 + x1 v + x2 v^2)(b0 + b1 v)
inline Fp6 mul_by_01(const Fp6& x, const Fp2& b0, const Fp2& b1) {
  Fp2 aa = x.c0 * b0;
  Fp2 bb = x.c1 * b1;
  return {
      (x.c2 * b1).mul_by_xi() + aa,
      (b0 + b1) * (x.c0 + x.c1) - aa - bb,
      x.c2 * b0 + bb,
  };
}

inline Fp12 mul_by_line(const Fp12& f, const LineValue& l) {
  Fp6 a{f.c0.c0 * l.c0, f.c0.c1 * l.c0, f.c0.c2 * l.c0};
  Fp6 b = mul_by_01(f.c1, l.c3, l.c4);
  Fp6 e = mul_by_01(f.c0 + f.c1, l.c0 + l.c3, l.c4);
  return {b.mul_by_v() + a, e - (a + b)};
}

// Frobenius endomorphism on the twist.
inline TwistAffine twist_frobenius(const TwistAffine& q) {
  const auto& g = frobenius_constants().gamma;
  return {q.x.conj() * g[2], q.y.conj() * g[3]};
}

inline Fp12 miller_loop(const G1::Affine& p, const G2::Affine& q_aff) {
  const TwistAffine q{q_aff.x, q_aff.y};
  TwistProjective t{q.x, q.y, Fp2::one()};
  Fp12 f = Fp12::one();
  int top = 127;
  while (((kAteLoop >> top) & 1) == 0) --top;
  for (int i = top - 1; i >= 0; --i) {
    f = mul_by_line(f.square(), double_step(t, p));
    if ((kAteLoop >> i) & 1) f = mul_by_line(f, add_step(t, q, p));
  }
  TwistAffine q1 = twist_frobenius(q);
  TwistAffine q2 = twist_frobenius(q1);
  q2.y = -q2.y;
  f = mul_by_line(f, add_step(t, q1, p));
  f = mul_by_line(f, add_step(t, q2, p));
  return f;
}

}  // namespace detail

/// f^((p^12 - 1) / r). The hard part uses the u-based addition chain for
/// (p^4 - p^2 + 1) / r.
inline Fp12 final_exponentiation(const Fp12& f) {
  Fp12 t1 = f.conj() * f.inverse();
  t1 = t1.frobenius().frobenius() * t1;

  Fp12 fp = t1.frobenius();
  Fp12 fp2 = fp.frobenius();
  Fp12 fp3 = fp2.frobenius();

  Fp12 fu = t1.pow_u64(kBnU);
  Fp12 fu2 = fu.pow_u64(kBnU);
  Fp12 fu3 = fu2.pow_u64(kBnU);

  Fp12 y3 = fu.frobenius();
  Fp12 fu2p = fu2.frobenius();
  Fp12 fu3p = fu3.frobenius();
  Fp12 y2 = fu2p.frobenius();

  Fp12 y0 = fp * fp2 * fp3;
  Fp12 y1 = t1.conj();
  Fp12 y5 = fu2.conj();
  y3 = y3.conj();
  Fp12 y4 = (fu * fu2p).conj();
  Fp12 y6 = (fu3 * fu3p).conj();

  Fp12 t0 = y6.square() * y4 * y5;
  t1 = y3 * y5 * t0;
  t0 = t0 * y2;
  t1 = t1.square() * t0;
  t1 = t1.square();
  t0 = t1 * y1;
  t1 = t1 * y0;
  t0 = t0.square();
  return t0 * t1;
}

/// Number of pairings evaluated on the calling thread.
inline uint64_t pairing_count() { return detail::pairing_counter(); }

inline Gt pairing(const G1& p, const G2& q) {
  ++detail::pairing_counter();
  if (p.is_identity() || q.is_identity()) return Gt::one();
  return final_exponentiation(detail::miller_loop(p.to_affine(), q.to_affine()));
}

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_PAIRING_HPP_
