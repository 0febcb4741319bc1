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

// Canonical byte encodings. All integers are big-endian and every
// variable-length field carries a u32 length prefix. Readers are strict:
// any trailing byte, out-of-range flag or non-canonical element is an
// error, so each valid structure has exactly one encoding.

#ifndef CTLOG_WIRE_HPP_
#define CTLOG_WIRE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctlog/crypto/curve.hpp"
#include "ctlog/crypto/hash.hpp"
#include "ctlog/errors.hpp"

namespace ctlog {

using Bytes = std::vector<uint8_t>;
using crypto::Digest;

// Domain-separation prefixes for the single hash function.
inline constexpr uint8_t kPrefixChronLeaf = 0x00;
inline constexpr uint8_t kPrefixChronNode = 0x01;
inline constexpr uint8_t kPrefixSearchNode = 0x02;
inline constexpr uint8_t kPrefixSigned = 0x03;

// Leading version byte of every top-level message.
inline constexpr uint8_t kWireVersion = 1;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string to_string(std::span<const uint8_t> b) { return std::string(b.begin(), b.end()); }

inline std::string to_hex(std::span<const uint8_t> b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (uint8_t x : b) {
    out.push_back(kDigits[x >> 4]);
    out.push_back(kDigits[x & 0xF]);
  }
  return out;
}

inline std::optional<Bytes> from_hex(std::string_view s) {
  if (s.size() % 2 != 0) return std::nullopt;
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nib(s[2 * i]);
    int lo = nib(s[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

class ByteWriter {
 public:
  ByteWriter& u8(uint8_t v) {
    buf_.push_back(v);
    return *this;
  }
  ByteWriter& u16(uint16_t v) { return be(v, 2); }
  ByteWriter& u32(uint32_t v) { return be(v, 4); }
  ByteWriter& u64(uint64_t v) { return be(v, 8); }

  ByteWriter& raw(std::span<const uint8_t> b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
    return *this;
  }

  ByteWriter& bytes(std::span<const uint8_t> b) {
    if (b.size() > UINT32_MAX) throw Error(Errc::kInvalidArgument, "field exceeds u32 length");
    u32(static_cast<uint32_t>(b.size()));
    return raw(b);
  }
  ByteWriter& bytes(std::string_view s) {
    return bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }

  ByteWriter& g1(const crypto::G1& p) { return raw(crypto::g1_compress(p)); }
  ByteWriter& g2(const crypto::G2& p) { return raw(crypto::g2_encode(p)); }
  ByteWriter& scalar(const crypto::Fr& f) { return raw(f.to_be_bytes()); }

  const Bytes& data() const& { return buf_; }
  Bytes take() && { return std::move(buf_); }

 private:
  ByteWriter& be(uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    return *this;
  }

  Bytes buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  std::size_t offset() const { return off_; }
  std::size_t remaining() const { return in_.size() - off_; }
  bool done() const { return off_ == in_.size(); }

  uint8_t u8(std::string_view field) { return static_cast<uint8_t>(be(1, field)); }
  uint16_t u16(std::string_view field) { return static_cast<uint16_t>(be(2, field)); }
  uint32_t u32(std::string_view field) { return static_cast<uint32_t>(be(4, field)); }
  uint64_t u64(std::string_view field) { return be(8, field); }

  bool flag(std::string_view field) {
    std::size_t at = off_;
    uint8_t v = u8(field);
    if (v > 1) fail(at, field, "flag must be 0 or 1");
    return v == 1;
  }

  std::span<const uint8_t> raw(std::size_t n, std::string_view field) {
    if (remaining() < n) fail(off_, field, "truncated");
    auto out = in_.subspan(off_, n);
    off_ += n;
    return out;
  }

  template <std::size_t N>
  std::array<uint8_t, N> fixed(std::string_view field) {
    auto s = raw(N, field);
    std::array<uint8_t, N> out{};
    std::copy(s.begin(), s.end(), out.begin());
    return out;
  }

  Bytes bytes(std::string_view field) {
    std::size_t at = off_;
    uint32_t n = u32(field);
    if (remaining() < n) fail(at, field, "length prefix exceeds input");
    auto s = raw(n, field);
    return Bytes(s.begin(), s.end());
  }

  void expect_version(std::string_view field) {
    std::size_t at = off_;
    if (u8(field) != kWireVersion) fail(at, field, "unsupported version");
  }

  crypto::G1 g1(std::string_view field) {
    std::size_t at = off_;
    auto p = crypto::g1_decompress(raw(crypto::kG1CompressedSize, field));
    if (!p) fail(at, field, "invalid G1 element");
    return *p;
  }

  crypto::G2 g2(std::string_view field) {
    std::size_t at = off_;
    auto p = crypto::g2_decode(raw(crypto::kG2UncompressedSize, field));
    if (!p) fail(at, field, "invalid G2 element");
    return *p;
  }

  crypto::Fr scalar(std::string_view field) {
    std::size_t at = off_;
    auto f = crypto::Fr::from_be_bytes(fixed<32>(field));
    if (!f) fail(at, field, "scalar not reduced");
    return *f;
  }

  void expect_end(std::string_view what) {
    if (!done()) fail(off_, std::string(what), "trailing bytes");
  }

  [[noreturn]] static void fail(std::size_t at, std::string_view field, const std::string& why) {
    throw DecodeError(at, std::string(field), why);
  }

 private:
  uint64_t be(int n, std::string_view field) {
    auto s = raw(static_cast<std::size_t>(n), field);
    uint64_t v = 0;
    for (uint8_t b : s) v = (v << 8) | b;
    return v;
  }

  std::span<const uint8_t> in_;
  std::size_t off_ = 0;
};

/// Runs `parse` over the whole input and rejects trailing bytes.
template <class F>
auto decode_all(std::span<const uint8_t> in, std::string_view what, F&& parse) {
  ByteReader r(in);
  auto out = parse(r);
  r.expect_end(what);
  return out;
}

}  // namespace ctlog

#endif  // CTLOG_WIRE_HPP_
