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

#ifndef CTLOG_CRYPTO_CURVE_HPP_
#define CTLOG_CRYPTO_CURVE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctlog/crypto/tower.hpp"

namespace ctlog::crypto {

// y^2 = x^3 + 3 over Fp.
struct G1Curve {
  using Field = Fp;
  static Field b() { return Fp::from_u64(3); }
  static Field generator_x() { return Fp::from_u64(1); }
  static Field generator_y() { return Fp::from_u64(2); }
};

// Sextic D-type twist y^2 = x^3 + 3 / xi over Fp2.
struct G2Curve {
  using Field = Fp2;
  static Field b() {
    static const Fp2 kB = Fp2{Fp::from_u64(3), Fp::zero()} * Fp2::xi().inverse();
    return kB;
  }
  static Field generator_x() {
    return {*Fp::from_canonical(U256::from_hex(
                "1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed")),
            *Fp::from_canonical(U256::from_hex(
                "198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2"))};
  }
  static Field generator_y() {
    return {*Fp::from_canonical(U256::from_hex(
                "12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa")),
            *Fp::from_canonical(U256::from_hex(
                "090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b"))};
  }
};

/// Point on a short Weierstrass curve with a = 0, in Jacobian coordinates
/// (X / Z^2, Y / Z^3). Z = 0 is the point at infinity.
template <class Curve>
class JacobianPoint {
 public:
  using Field = typename Curve::Field;

  struct Affine {
    Field x, y;
    bool infinity = true;
  };

  constexpr JacobianPoint() : x_(Field::one()), y_(Field::one()), z_(Field::zero()) {}
  JacobianPoint(const Field& x, const Field& y) : x_(x), y_(y), z_(Field::one()) {}

  static JacobianPoint identity() { return JacobianPoint(); }
  static JacobianPoint generator() {
    static const JacobianPoint kGen(Curve::generator_x(), Curve::generator_y());
    return kGen;
  }
  static JacobianPoint from_affine(const Affine& a) {
    return a.infinity ? JacobianPoint() : JacobianPoint(a.x, a.y);
  }

  bool is_identity() const { return z_.is_zero(); }

  static bool on_curve(const Field& x, const Field& y) {
    return y.square() == x.square() * x + Curve::b();
  }

  bool is_on_curve() const {
    if (is_identity()) return true;
    Affine a = to_affine();
    return on_curve(a.x, a.y);
  }

  Affine to_affine() const {
    if (is_identity()) return Affine{};
    Field zi = z_.inverse();
    Field zi2 = zi.square();
    return Affine{x_ * zi2, y_ * zi2 * zi, false};
  }

  bool operator==(const JacobianPoint& o) const {
    if (is_identity() || o.is_identity()) return is_identity() && o.is_identity();
    Field z1z1 = z_.square();
    Field z2z2 = o.z_.square();
    if (!(x_ * z2z2 == o.x_ * z1z1)) return false;
    return y_ * z2z2 * o.z_ == o.y_ * z1z1 * z_;
  }

  JacobianPoint operator-() const {
    JacobianPoint r = *this;
    r.y_ = -r.y_;
    return r;
  }

  JacobianPoint dbl() const {
    if (is_identity()) return *this;
    Field a = x_.square();
    Field b = y_.square();
    Field c = b.square();
    Field d = ((x_ + b).square() - a - c).dbl();
    Field e = a.dbl() + a;
    Field f = e.square();
    JacobianPoint r;
    r.x_ = f - d.dbl();
    r.y_ = e * (d - r.x_) - c.dbl().dbl().dbl();
    r.z_ = (y_ * z_).dbl();
    return r;
  }

  JacobianPoint operator+(const JacobianPoint& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    Field z1z1 = z_.square();
    Field z2z2 = o.z_.square();
    Field u1 = x_ * z2z2;
    Field u2 = o.x_ * z1z1;
    Field s1 = y_ * o.z_ * z2z2;
    Field s2 = o.y_ * z_ * z1z1;
    Field h = u2 - u1;
    Field rr = (s2 - s1).dbl();
    if (h.is_zero()) {
      if (rr.is_zero()) return dbl();
      return JacobianPoint();
    }
    Field i = h.dbl().square();
    Field j = h * i;
    Field v = u1 * i;
    JacobianPoint r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (s1 * j).dbl();
    r.z_ = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    return r;
  }

  JacobianPoint operator-(const JacobianPoint& o) const { return *this + (-o); }
  JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }

  /// Scalar multiplication with a 4-bit fixed window.
  JacobianPoint mul(const U256& k) const {
    std::array<JacobianPoint, 16> table;
    table[1] = *this;
    for (std::size_t i = 2; i < 16; ++i) table[i] = table[i - 1] + *this;
    JacobianPoint acc;
    std::size_t nibbles = (k.bit_length() + 3) / 4;
    for (std::size_t n = nibbles; n-- > 0;) {
      acc = acc.dbl().dbl().dbl().dbl();
      unsigned idx = static_cast<unsigned>((k.limb[n / 16] >> (4 * (n % 16))) & 0xF);
      if (idx != 0) acc += table[idx];
    }
    return acc;
  }

  JacobianPoint mul(const Fr& k) const { return mul(k.to_u256()); }

 private:
  Field x_, y_, z_;
};

using G1 = JacobianPoint<G1Curve>;
using G2 = JacobianPoint<G2Curve>;

/// Precomputed multiples j * 16^i * base for fixed-base multiplication:
/// 64 additions per product and no doublings.
template <class Curve>
class FixedBase {
 public:
  using Point = JacobianPoint<Curve>;

  explicit FixedBase(const Point& base) : windows_(64) {
    Point step = base;
    for (auto& w : windows_) {
      w[0] = Point::identity();
      for (std::size_t j = 1; j < 16; ++j) w[j] = w[j - 1] + step;
      step = w[15] + step;
    }
  }

  Point mul(const U256& k) const {
    Point acc;
    for (std::size_t n = 0; n < 64; ++n) {
      unsigned idx = static_cast<unsigned>((k.limb[n / 16] >> (4 * (n % 16))) & 0xF);
      if (idx != 0) acc += windows_[n][idx];
    }
    return acc;
  }
  Point mul(const Fr& k) const { return mul(k.to_u256()); }

 private:
  std::vector<std::array<Point, 16>> windows_;
};

inline constexpr std::size_t kG1CompressedSize = 32;
inline constexpr std::size_t kG2UncompressedSize = 128;

// Compressed G1: big-endian x with two flag bits in the first byte
// (0x80 = y is odd, 0x40 = point at infinity; p < 2^254 leaves them free).
inline std::array<uint8_t, kG1CompressedSize> g1_compress(const G1& p) {
  std::array<uint8_t, kG1CompressedSize> out{};
  if (p.is_identity()) {
    out[0] = 0x40;
    return out;
  }
  G1::Affine a = p.to_affine();
  out = a.x.to_be_bytes();
  if (a.y.is_odd()) out[0] |= 0x80;
  return out;
}

/// Rejects non-canonical encodings, so decode(encode(x)) and
/// encode(decode(b)) are both identities.
inline std::optional<G1> g1_decompress(std::span<const uint8_t> in) {
  if (in.size() != kG1CompressedSize) return std::nullopt;
  std::array<uint8_t, 32> buf{};
  std::copy(in.begin(), in.end(), buf.begin());
  const uint8_t flags = buf[0] & 0xC0;
  buf[0] &= 0x3F;
  if (flags & 0x40) {
    if (flags & 0x80) return std::nullopt;
    for (uint8_t b : buf) {
      if (b != 0) return std::nullopt;
    }
    return G1::identity();
  }
  auto x = Fp::from_be_bytes(buf);
  if (!x) return std::nullopt;
  auto y = (x->square() * *x + G1Curve::b()).sqrt();
  if (!y) return std::nullopt;
  bool want_odd = (flags & 0x80) != 0;
  if (y->is_odd() != want_odd) *y = -*y;
  // y = 0 has no odd representative; the flag must then be clear.
  if (y->is_odd() != want_odd) return std::nullopt;
  return G1(*x, *y);
}

// Uncompressed G2: x.c0 || x.c1 || y.c0 || y.c1, all big-endian; the
// point at infinity is all zeros (0, 0 is not on the twist).
inline std::array<uint8_t, kG2UncompressedSize> g2_encode(const G2& p) {
  std::array<uint8_t, kG2UncompressedSize> out{};
  if (p.is_identity()) return out;
  G2::Affine a = p.to_affine();
  const std::array<Fp, 4> parts = {a.x.c0, a.x.c1, a.y.c0, a.y.c1};
  for (std::size_t i = 0; i < 4; ++i) {
    auto b = parts[i].to_be_bytes();
    std::copy(b.begin(), b.end(), out.begin() + 32 * i);
  }
  return out;
}

bool g2_in_subgroup(const G2& p);

inline std::optional<G2> g2_decode(std::span<const uint8_t> in) {
  if (in.size() != kG2UncompressedSize) return std::nullopt;
  bool all_zero = true;
  for (uint8_t b : in) all_zero = all_zero && b == 0;
  if (all_zero) return G2::identity();
  std::array<Fp, 4> parts;
  for (std::size_t i = 0; i < 4; ++i) {
    auto f = Fp::from_be_bytes(std::span<const uint8_t, 32>(in.data() + 32 * i, 32));
    if (!f) return std::nullopt;
    parts[i] = *f;
  }
  Fp2 x{parts[0], parts[1]};
  Fp2 y{parts[2], parts[3]};
  if (!G2::on_curve(x, y)) return std::nullopt;
  G2 p(x, y);
  if (!g2_in_subgroup(p)) return std::nullopt;
  return p;
}

// The twist has a non-trivial cofactor, so on-curve is not enough.
inline bool g2_in_subgroup(const G2& p) {
  return p.mul(ScalarFieldParams::kModulus).is_identity();
}

}  // namespace ctlog::crypto

#endif  // CTLOG_CRYPTO_CURVE_HPP_
