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

#ifndef CTLOG_CERTIFICATE_HPP_
#define CTLOG_CERTIFICATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "ctlog/accumulator.hpp"
#include "ctlog/wire.hpp"

namespace ctlog {

/// A signed (domain, public key) pair. The issuer fields are opaque to the
/// log; a missing key marks a revocation entry cert(u, null).
struct Certificate {
  Bytes domain;
  std::optional<Bytes> public_key;
  Bytes issuer;
  uint64_t issued_at = 0;
  Bytes signature;

  bool operator==(const Certificate&) const = default;

  bool is_revocation() const { return !public_key.has_value(); }

  static Certificate make(std::string_view domain, std::string_view pk, std::string_view issuer = {},
                          uint64_t issued_at = 0) {
    return Certificate{to_bytes(domain), to_bytes(pk), to_bytes(issuer), issued_at, {}};
  }

  static Certificate revocation(std::span<const uint8_t> domain, uint64_t issued_at) {
    return Certificate{Bytes(domain.begin(), domain.end()), std::nullopt, {}, issued_at, {}};
  }

  void validate() const {
    if (domain.empty()) throw Error(Errc::kMalformed, "certificate domain is empty");
    if (public_key && public_key->empty()) {
      throw Error(Errc::kMalformed, "certificate public key is empty");
    }
  }

  // u32-len domain || u8 null-flag || u32-len key || u32-len issuer ||
  // u64 timestamp || u32-len signature
  void write(ByteWriter& w) const {
    w.bytes(domain).u8(public_key ? 0 : 1).bytes(public_key ? *public_key : Bytes{});
    w.bytes(issuer).u64(issued_at).bytes(signature);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static Certificate read(ByteReader& r) {
    Certificate c;
    c.domain = r.bytes("cert.domain");
    if (c.domain.empty()) ByteReader::fail(r.offset(), "cert.domain", "empty domain");
    const bool null_key = r.flag("cert.null_flag");
    std::size_t at = r.offset();
    Bytes key = r.bytes("cert.public_key");
    if (null_key) {
      if (!key.empty()) ByteReader::fail(at, "cert.public_key", "null-marked key must be empty");
    } else {
      if (key.empty()) ByteReader::fail(at, "cert.public_key", "empty key");
      c.public_key = std::move(key);
    }
    c.issuer = r.bytes("cert.issuer");
    c.issued_at = r.u64("cert.issued_at");
    c.signature = r.bytes("cert.signature");
    return c;
  }

  static Certificate decode(std::span<const uint8_t> in) {
    return decode_all(in, "certificate", [](ByteReader& r) { return read(r); });
  }

  Digest hash() const { return crypto::sha256(encode()); }
};

/// Canonical bytes of the binding projection (domain, pk): issuer metadata
/// cleared, so any party holding (domain, pk) derives the same element.
inline Bytes binding_bytes(std::span<const uint8_t> domain, std::span<const uint8_t> pk) {
  return Certificate{Bytes(domain.begin(), domain.end()), Bytes(pk.begin(), pk.end()), {}, 0, {}}
      .encode();
}

inline accumulator::AccElement element_of(std::span<const uint8_t> domain,
                                          std::span<const uint8_t> pk) {
  return accumulator::encode_certificate(binding_bytes(domain, pk));
}

inline accumulator::AccElement element_of(const Certificate& c) {
  if (c.is_revocation()) throw Error(Errc::kInvalidArgument, "revocation entries are not accumulated");
  return element_of(c.domain, *c.public_key);
}

}  // namespace ctlog

#endif  // CTLOG_CERTIFICATE_HPP_
