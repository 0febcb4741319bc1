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

// Dynamic bilinear-map accumulator over a set X of nonzero scalars.
//
//   A(X)                = g1^(prod_{x in X} (x + s))
//   membership     w_c  = A^(1 / (c + s))
//                  check e(w_c, g2^c g2^s) == e(A, g2)
//   non-membership v_y  = -prod_{x in X} (x - y),
//                  w_y  = g1^((prod (x + s) + v_y) / (y + s))
//                  check e(w_y, g2^y g2^s) == e(A g1^v_y, g2)
//
// The log maintainer holds the trapdoor s, so every update is a single
// exponent computation in Z_r. Accumulation values and witnesses live in
// G1; g2 and g2^s are published in G2 for the pairing checks.

#ifndef CTLOG_ACCUMULATOR_HPP_
#define CTLOG_ACCUMULATOR_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ctlog/crypto/curve.hpp"
#include "ctlog/crypto/drbg.hpp"
#include "ctlog/crypto/hash.hpp"
#include "ctlog/crypto/pairing.hpp"
#include "ctlog/errors.hpp"
#include "ctlog/wire.hpp"

namespace ctlog::accumulator {

using crypto::Fr;
using crypto::G1;
using crypto::G2;

/// The pairing group every deployment uses (BN254, 128-bit setting).
struct PairingGroupDescriptor {
  static constexpr std::string_view kName = "bn254";
  static constexpr unsigned kSecurityBits = 128;
  static constexpr crypto::U256 kOrder = crypto::ScalarFieldParams::kModulus;
  static constexpr std::size_t kG1Bytes = crypto::kG1CompressedSize;
  static constexpr std::size_t kG2Bytes = crypto::kG2UncompressedSize;
  static constexpr std::size_t kScalarBytes = 32;

  static G1 g1() { return G1::generator(); }
  static G2 g2() { return G2::generator(); }
};

// Secret. Deliberately has no wire encoding alongside the public types.
struct Trapdoor {
  Fr s;
};

struct AccElement {
  Fr value;
  bool operator==(const AccElement&) const = default;
};

struct AccumulationValue {
  G1 point;
  bool operator==(const AccumulationValue& o) const { return point == o.point; }
  std::array<uint8_t, 32> bytes() const { return crypto::g1_compress(point); }
};

struct MembershipWitness {
  G1 w;
  bool operator==(const MembershipWitness& o) const { return w == o.w; }
};

struct NonMembershipWitness {
  G1 w;
  Fr v;
  bool operator==(const NonMembershipWitness& o) const { return w == o.w && v == o.v; }
};

enum class Direction { kAdded, kRemoved };

inline constexpr std::array<uint8_t, 4> kParamsMagic = {'C', 'T', 'A', 'C'};
inline constexpr uint32_t kMaxCapacity = 1u << 24;
inline constexpr uint32_t kDefaultCapacity = 1u << 16;

/// {g1^(s^i)} for 0 <= i <= q, plus g2 and g2^s.
class PublicParams {
 public:
  PublicParams(std::vector<G1> powers, G2 g2, G2 g2_s)
      : powers_(std::move(powers)),
        g2_(g2),
        g2_s_(g2_s),
        g1_table_(std::make_shared<crypto::FixedBase<crypto::G1Curve>>(powers_.at(0))),
        g2_table_(std::make_shared<crypto::FixedBase<crypto::G2Curve>>(g2_)) {}

  uint32_t capacity() const { return static_cast<uint32_t>(powers_.size() - 1); }
  const std::vector<G1>& powers() const { return powers_; }
  const G1& g1() const { return powers_[0]; }
  const G1& g1_s() const { return powers_[1]; }
  const G2& g2() const { return g2_; }
  const G2& g2_s() const { return g2_s_; }

  G1 g1_mul(const Fr& k) const { return g1_table_->mul(k); }
  G2 g2_mul(const Fr& k) const { return g2_table_->mul(k); }

  bool operator==(const PublicParams& o) const {
    return powers_ == o.powers_ && g2_ == o.g2_ && g2_s_ == o.g2_s_;
  }

  /// Parameter self-check without the trapdoor: fixed generators, and
  /// e(powers[i], g2^s) == e(powers[i+1], g2) for all i, batched as one
  /// random linear combination (two pairings).
  bool self_check(crypto::Drbg& rng) const {
    if (!generators_ok()) return false;
    G1 lhs, rhs;
    for (std::size_t i = 0; i + 1 < powers_.size(); ++i) {
      crypto::U256 rho = crypto::U256::from_u64(rng() | 1);
      lhs += powers_[i].mul(rho);
      rhs += powers_[i + 1].mul(rho);
    }
    return crypto::pairing(lhs, g2_s_) == crypto::pairing(rhs, g2_);
  }

  /// Checks every adjacent pair individually (2q pairings).
  bool self_check_exhaustive() const {
    if (!generators_ok()) return false;
    for (std::size_t i = 0; i + 1 < powers_.size(); ++i) {
      if (!(crypto::pairing(powers_[i], g2_s_) == crypto::pairing(powers_[i + 1], g2_))) {
        return false;
      }
    }
    return true;
  }

  // "CTAC" || version u8 || q u32 || (q+1) compressed G1 || g2 || g2^s
  Bytes encode() const {
    ByteWriter w;
    w.raw(kParamsMagic).u8(kWireVersion).u32(capacity());
    for (const G1& p : powers_) w.g1(p);
    w.g2(g2_).g2(g2_s_);
    return std::move(w).take();
  }

  static PublicParams decode(std::span<const uint8_t> in) {
    return decode_all(in, "params", [](ByteReader& r) {
      std::size_t at = r.offset();
      if (r.fixed<4>("params.magic") != kParamsMagic) {
        ByteReader::fail(at, "params.magic", "bad magic");
      }
      r.expect_version("params.version");
      at = r.offset();
      uint32_t q = r.u32("params.capacity");
      if (q == 0 || q > kMaxCapacity) ByteReader::fail(at, "params.capacity", "out of range");
      const std::size_t need = (static_cast<std::size_t>(q) + 1) * crypto::kG1CompressedSize +
                               2 * crypto::kG2UncompressedSize;
      if (r.remaining() != need) ByteReader::fail(r.offset(), "params.powers", "length mismatch");
      std::vector<G1> powers;
      powers.reserve(q + 1);
      for (uint32_t i = 0; i <= q; ++i) powers.push_back(r.g1("params.powers"));
      G2 g2 = r.g2("params.g2");
      G2 g2_s = r.g2("params.g2_s");
      return PublicParams(std::move(powers), g2, g2_s);
    });
  }

 private:
  bool generators_ok() const {
    return powers_.size() >= 2 && powers_[0] == PairingGroupDescriptor::g1() &&
           g2_ == PairingGroupDescriptor::g2();
  }

  std::vector<G1> powers_;
  G2 g2_, g2_s_;
  std::shared_ptr<const crypto::FixedBase<crypto::G1Curve>> g1_table_;
  std::shared_ptr<const crypto::FixedBase<crypto::G2Curve>> g2_table_;
};

/// Maintainer-side accumulator: trapdoor, published parameters, the current
/// value and |X|.
struct AccumulatorState {
  Trapdoor trapdoor;
  std::shared_ptr<const PublicParams> params;
  AccumulationValue value;
  std::size_t size = 0;
};

namespace detail {

inline Fr shifted(const AccElement& c, const Trapdoor& td) {
  Fr k = c.value + td.s;
  if (k.is_zero()) throw Error(Errc::kTrapdoorCollision, "element + trapdoor = 0 mod r");
  return k;
}

}  // namespace detail

/// Public parameters for a given trapdoor; O(q) scalar multiplications.
inline PublicParams make_public_params(const Trapdoor& td, uint32_t q) {
  std::vector<G1> powers;
  powers.reserve(static_cast<std::size_t>(q) + 1);
  const crypto::FixedBase<crypto::G1Curve> g1(PairingGroupDescriptor::g1());
  Fr si = Fr::one();
  for (uint32_t i = 0; i <= q; ++i) {
    powers.push_back(g1.mul(si));
    si *= td.s;
  }
  G2 g2 = PairingGroupDescriptor::g2();
  return PublicParams(std::move(powers), g2, g2.mul(td.s));
}

inline AccumulatorState setup(unsigned lambda, uint32_t q, crypto::Drbg& rng) {
  if (q == 0) throw Error(Errc::kInvalidArgument, "capacity must be at least 1");
  if (q > kMaxCapacity) throw Error(Errc::kInvalidArgument, "capacity too large");
  if (lambda > PairingGroupDescriptor::kSecurityBits) {
    throw Error(Errc::kUnsupported, "security level above 128 bits needs a larger curve");
  }
  AccumulatorState st;
  st.trapdoor.s = rng.nonzero_scalar();
  st.params = std::make_shared<const PublicParams>(make_public_params(st.trapdoor, q));
  st.value.point = st.params->g1();
  st.size = 0;
  return st;
}

inline AccumulationValue add(const AccumulationValue& a, const AccElement& c, const Trapdoor& td) {
  return {a.point.mul(detail::shifted(c, td))};
}

inline AccumulationValue remove(const AccumulationValue& a, const AccElement& c,
                                const Trapdoor& td) {
  return {a.point.mul(detail::shifted(c, td).inverse())};
}

/// add() with the |X| <= q bound; duplicate detection is the caller's job.
inline AccumulatorState added(const AccumulatorState& st, const AccElement& c) {
  if (st.size + 1 > st.params->capacity()) {
    throw Error(Errc::kCapacityExceeded, "accumulator holds q elements");
  }
  AccumulatorState out = st;
  out.value = add(st.value, c, st.trapdoor);
  out.size = st.size + 1;
  return out;
}

inline AccumulatorState removed(const AccumulatorState& st, const AccElement& c) {
  if (st.size == 0) throw Error(Errc::kNotAMember, "accumulator is empty");
  AccumulatorState out = st;
  out.value = remove(st.value, c, st.trapdoor);
  out.size = st.size - 1;
  return out;
}

inline MembershipWitness membership_witness(std::span<const AccElement> set, const AccElement& c,
                                            const Trapdoor& td, const PublicParams& pp) {
  if (std::find(set.begin(), set.end(), c) == set.end()) {
    throw Error(Errc::kNotAMember, "element not in set");
  }
  Fr e = Fr::one();
  for (const AccElement& x : set) {
    if (!(x == c)) e *= detail::shifted(x, td);
  }
  return {pp.g1_mul(e)};
}

inline MembershipWitness update_membership_witness(const MembershipWitness& w,
                                                   const AccElement& changed, Direction dir,
                                                   const Trapdoor& td) {
  Fr k = detail::shifted(changed, td);
  return {w.w.mul(dir == Direction::kAdded ? k : k.inverse())};
}

/// O(|X|) scalar multiplications and one fixed-base exponentiation.
inline NonMembershipWitness nonmembership_witness(std::span<const AccElement> set,
                                                  const AccElement& y, const Trapdoor& td,
                                                  const PublicParams& pp) {
  Fr at_s = Fr::one();       // prod (x + s)
  Fr at_minus_y = Fr::one();  // prod (x - y)
  for (const AccElement& x : set) {
    at_s *= detail::shifted(x, td);
    at_minus_y *= x.value - y.value;
  }
  Fr v = -at_minus_y;
  if (v.is_zero()) throw Error(Errc::kIsAMember, "element is a member");
  Fr exponent = (at_s + v) * detail::shifted(y, td).inverse();
  return {pp.g1_mul(exponent), v};
}

/// Exactly two pairing evaluations.
inline bool verify_membership(const MembershipWitness& w, const AccElement& c,
                              const AccumulationValue& a, const PublicParams& pp) {
  G2 shifted = pp.g2_mul(c.value) + pp.g2_s();
  return crypto::pairing(w.w, shifted) == crypto::pairing(a.point, pp.g2());
}

/// Exactly two pairing evaluations; v = 0 would turn the equation into the
/// membership check and is rejected.
inline bool verify_nonmembership(const NonMembershipWitness& wit, const AccElement& y,
                                 const AccumulationValue& a, const PublicParams& pp) {
  G2 shifted = pp.g2_mul(y.value) + pp.g2_s();
  bool eq = crypto::pairing(wit.w, shifted) == crypto::pairing(a.point + pp.g1_mul(wit.v), pp.g2());
  return eq && !wit.v.is_zero();
}

/// value = SHA-256(ctr || cert) mod r for ctr = 0x01, 0x02, ... until nonzero.
inline AccElement encode_certificate(std::span<const uint8_t> canonical_cert) {
  for (unsigned ctr = 1; ctr < 256; ++ctr) {
    Digest d = crypto::Sha256().update(static_cast<uint8_t>(ctr)).update(canonical_cert).finish();
    Fr v = Fr::from_u256_reduce(crypto::U256::from_be_bytes(d));
    if (!v.is_zero()) return {v};
  }
  throw Error(Errc::kTrapdoorCollision, "no nonzero encoding");  // unreachable in practice
}

// Wire forms: witnesses are one compressed G1 element (32 bytes), the
// non-membership witness adds one 32-byte scalar.
inline Bytes encode(const MembershipWitness& w) { return ByteWriter().g1(w.w).data(); }

inline Bytes encode(const NonMembershipWitness& w) {
  ByteWriter out;
  out.g1(w.w).scalar(w.v);
  return std::move(out).take();
}

inline MembershipWitness decode_membership_witness(std::span<const uint8_t> in) {
  return decode_all(in, "membership witness",
                    [](ByteReader& r) { return MembershipWitness{r.g1("witness.w")}; });
}

inline NonMembershipWitness decode_nonmembership_witness(std::span<const uint8_t> in) {
  return decode_all(in, "non-membership witness", [](ByteReader& r) {
    NonMembershipWitness w;
    w.w = r.g1("witness.w");
    w.v = r.scalar("witness.v");
    return w;
  });
}

}  // namespace ctlog::accumulator

#endif  // CTLOG_ACCUMULATOR_HPP_
