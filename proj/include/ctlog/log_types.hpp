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

// Messages exchanged between the log, its clients and auditors.

#ifndef CTLOG_LOG_TYPES_HPP_
#define CTLOG_LOG_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/certificate.hpp"
#include "ctlog/chrontree.hpp"
#include "ctlog/crypto/signature.hpp"
#include "ctlog/searchtree.hpp"
#include "ctlog/wire.hpp"

namespace ctlog {

using chron::ExtensionProof;
using chron::TreeDigest;
using search::AbsenceOfOwnerProof;
using search::PresenceProof;

// Second byte of every signing input, after kPrefixSigned.
inline constexpr uint8_t kSignedSct = 0x00;
inline constexpr uint8_t kSignedSth = 0x01;

using LogId = Digest;

inline LogId log_id_of(const crypto::VerifyKey& key) { return crypto::sha256(key.bytes()); }

/// Submission: a new certificate, or revocation of a domain's active key.
struct Request {
  enum class Kind : uint8_t { kInsert = 1, kRevoke = 2 };

  Kind kind = Kind::kInsert;
  Certificate cert;  // kInsert
  Bytes domain;      // kRevoke
  Bytes public_key;  // kRevoke: the key being revoked

  bool operator==(const Request&) const = default;

  static Request insert(Certificate c) { return {Kind::kInsert, std::move(c), {}, {}}; }
  static Request revoke(std::span<const uint8_t> domain, std::span<const uint8_t> pk) {
    return {Kind::kRevoke, {}, Bytes(domain.begin(), domain.end()), Bytes(pk.begin(), pk.end())};
  }

  void validate() const {
    if (kind == Kind::kInsert) {
      cert.validate();
      if (cert.is_revocation()) throw Error(Errc::kMalformed, "insert of a null-key certificate");
    } else {
      if (domain.empty()) throw Error(Errc::kMalformed, "revocation without domain");
      if (public_key.empty()) throw Error(Errc::kMalformed, "revocation without key");
    }
  }

  // ver || kind || (cert | u32-len domain || u32-len key)
  Bytes encode() const {
    ByteWriter w;
    w.u8(kWireVersion).u8(static_cast<uint8_t>(kind));
    if (kind == Kind::kInsert) {
      cert.write(w);
    } else {
      w.bytes(domain).bytes(public_key);
    }
    return std::move(w).take();
  }

  static Request decode(std::span<const uint8_t> in) {
    return decode_all(in, "request", [](ByteReader& r) {
      r.expect_version("request.version");
      std::size_t at = r.offset();
      uint8_t k = r.u8("request.kind");
      Request q;
      if (k == static_cast<uint8_t>(Kind::kInsert)) {
        q.kind = Kind::kInsert;
        q.cert = Certificate::read(r);
      } else if (k == static_cast<uint8_t>(Kind::kRevoke)) {
        q.kind = Kind::kRevoke;
        q.domain = r.bytes("request.domain");
        q.public_key = r.bytes("request.public_key");
      } else {
        ByteReader::fail(at, "request.kind", "unknown kind");
      }
      return q;
    });
  }
};

struct SignedCertificateTimestamp {
  Digest cert_hash{};
  uint64_t timestamp = 0;
  Bytes log_id;
  Bytes signature;

  bool operator==(const SignedCertificateTimestamp&) const = default;

  Bytes signing_input() const {
    ByteWriter w;
    w.u8(kPrefixSigned).u8(kSignedSct).raw(cert_hash).u64(timestamp).bytes(log_id);
    return std::move(w).take();
  }

  bool verify(const crypto::VerifyKey& key) const { return key.verify(signing_input(), signature); }

  // ver || cert_hash || ts || u32-len log_id || u32-len sig
  Bytes encode() const {
    ByteWriter w;
    w.u8(kWireVersion).raw(cert_hash).u64(timestamp).bytes(log_id).bytes(signature);
    return std::move(w).take();
  }

  static SignedCertificateTimestamp decode(std::span<const uint8_t> in) {
    return decode_all(in, "sct", [](ByteReader& r) {
      r.expect_version("sct.version");
      SignedCertificateTimestamp s;
      s.cert_hash = r.fixed<32>("sct.cert_hash");
      s.timestamp = r.u64("sct.timestamp");
      s.log_id = r.bytes("sct.log_id");
      s.signature = r.bytes("sct.signature");
      return s;
    });
  }
};

struct SignedTreeHead {
  TreeDigest dig_ct;
  Digest dig_st{};
  accumulator::AccumulationValue acc_value;
  uint64_t epoch = 0;
  uint64_t timestamp = 0;
  Bytes signature;

  bool operator==(const SignedTreeHead&) const = default;

  void write_body(ByteWriter& w) const {
    w.raw(dig_ct.hash).u64(dig_ct.size).raw(dig_st).g1(acc_value.point).u64(epoch).u64(timestamp);
  }

  Bytes signing_input() const {
    ByteWriter w;
    w.u8(kPrefixSigned).u8(kSignedSth);
    write_body(w);
    return std::move(w).take();
  }

  bool verify(const crypto::VerifyKey& key) const { return key.verify(signing_input(), signature); }

  // ver || digCT || u64 size || digST || A || u64 epoch || u64 ts || u32-len sig
  void write(ByteWriter& w) const {
    w.u8(kWireVersion);
    write_body(w);
    w.bytes(signature);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static SignedTreeHead read(ByteReader& r) {
    r.expect_version("sth.version");
    SignedTreeHead s;
    s.dig_ct.hash = r.fixed<32>("sth.dig_ct");
    s.dig_ct.size = r.u64("sth.size");
    s.dig_st = r.fixed<32>("sth.dig_st");
    s.acc_value.point = r.g1("sth.acc_value");
    s.epoch = r.u64("sth.epoch");
    s.timestamp = r.u64("sth.timestamp");
    s.signature = r.bytes("sth.signature");
    return s;
  }

  static SignedTreeHead decode(std::span<const uint8_t> in) {
    return decode_all(in, "sth", [](ByteReader& r) { return read(r); });
  }
};

enum class QueryType : uint8_t {
  kPresence = 1,        // certificate is in the log
  kAbsenceOfCert = 2,   // certificate is not in the active set
  kAbsenceOfOwner = 3,  // domain has no certificate at all
  kExtension = 4,       // later log extends the earlier one
  kCurrency = 5,        // certificate is in the active set
};

inline bool valid_query_type(uint8_t t) { return t >= 1 && t <= 5; }

struct Query {
  QueryType type = QueryType::kPresence;
  Bytes domain;
  Bytes public_key;
  uint64_t old_epoch = 0;
  uint64_t new_epoch = 0;

  bool operator==(const Query&) const = default;

  static Query presence(std::span<const uint8_t> d, std::span<const uint8_t> pk) {
    return {QueryType::kPresence, Bytes(d.begin(), d.end()), Bytes(pk.begin(), pk.end()), 0, 0};
  }
  static Query absence_of_cert(std::span<const uint8_t> d, std::span<const uint8_t> pk) {
    return {QueryType::kAbsenceOfCert, Bytes(d.begin(), d.end()), Bytes(pk.begin(), pk.end()), 0, 0};
  }
  static Query absence_of_owner(std::span<const uint8_t> d) {
    return {QueryType::kAbsenceOfOwner, Bytes(d.begin(), d.end()), {}, 0, 0};
  }
  static Query extension(uint64_t old_epoch, uint64_t new_epoch) {
    return {QueryType::kExtension, {}, {}, old_epoch, new_epoch};
  }
  static Query currency(std::span<const uint8_t> d, std::span<const uint8_t> pk) {
    return {QueryType::kCurrency, Bytes(d.begin(), d.end()), Bytes(pk.begin(), pk.end()), 0, 0};
  }

  /// Field presence must match the type.
  bool well_formed() const {
    switch (type) {
      case QueryType::kPresence:
      case QueryType::kAbsenceOfCert:
      case QueryType::kCurrency:
        return !domain.empty() && !public_key.empty() && old_epoch == 0 && new_epoch == 0;
      case QueryType::kAbsenceOfOwner:
        return !domain.empty() && public_key.empty() && old_epoch == 0 && new_epoch == 0;
      case QueryType::kExtension:
        return domain.empty() && public_key.empty() && old_epoch <= new_epoch;
    }
    return false;
  }

  // ver || type || u32-len domain || u32-len pk || u64 old || u64 new
  Bytes encode() const {
    ByteWriter w;
    w.u8(kWireVersion).u8(static_cast<uint8_t>(type)).bytes(domain).bytes(public_key);
    w.u64(old_epoch).u64(new_epoch);
    return std::move(w).take();
  }

  static Query decode(std::span<const uint8_t> in) {
    return decode_all(in, "query", [](ByteReader& r) {
      r.expect_version("query.version");
      std::size_t at = r.offset();
      uint8_t t = r.u8("query.type");
      if (!valid_query_type(t)) ByteReader::fail(at, "query.type", "unknown type");
      Query q;
      q.type = static_cast<QueryType>(t);
      q.domain = r.bytes("query.domain");
      q.public_key = r.bytes("query.public_key");
      q.old_epoch = r.u64("query.old_epoch");
      q.new_epoch = r.u64("query.new_epoch");
      if (!q.well_formed()) ByteReader::fail(at, "query.type", "fields do not match type");
      return q;
    });
  }
};

// Alternative i holds the payload for QueryType i + 1.
using ProofPayload = std::variant<PresenceProof, accumulator::NonMembershipWitness,
                                  AbsenceOfOwnerProof, ExtensionProof,
                                  accumulator::MembershipWitness>;

inline QueryType payload_type(const ProofPayload& p) {
  return static_cast<QueryType>(p.index() + 1);
}

inline Bytes encode_payload(const ProofPayload& p) {
  return std::visit(
      [](const auto& v) -> Bytes {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, accumulator::NonMembershipWitness> ||
                      std::is_same_v<T, accumulator::MembershipWitness>) {
          return accumulator::encode(v);
        } else {
          return v.encode();
        }
      },
      p);
}

inline ProofPayload decode_payload(QueryType t, std::span<const uint8_t> in) {
  switch (t) {
    case QueryType::kPresence: return PresenceProof::decode(in);
    case QueryType::kAbsenceOfCert: return accumulator::decode_nonmembership_witness(in);
    case QueryType::kAbsenceOfOwner: return AbsenceOfOwnerProof::decode(in);
    case QueryType::kExtension: return ExtensionProof::decode(in);
    case QueryType::kCurrency: return accumulator::decode_membership_witness(in);
  }
  throw DecodeError(0, "envelope.type", "unknown type");
}

/// A proof bound to the STH epoch it is valid under.
struct ProofEnvelope {
  QueryType type = QueryType::kPresence;
  uint64_t epoch = 0;
  ProofPayload payload;

  bool operator==(const ProofEnvelope&) const = default;

  // ver || type || u64 epoch || u32-len payload
  Bytes encode() const {
    ByteWriter w;
    w.u8(kWireVersion).u8(static_cast<uint8_t>(type)).u64(epoch).bytes(encode_payload(payload));
    return std::move(w).take();
  }

  static ProofEnvelope decode(std::span<const uint8_t> in) {
    return decode_all(in, "envelope", [](ByteReader& r) {
      r.expect_version("envelope.version");
      std::size_t at = r.offset();
      uint8_t t = r.u8("envelope.type");
      if (!valid_query_type(t)) ByteReader::fail(at, "envelope.type", "unknown type");
      ProofEnvelope e;
      e.type = static_cast<QueryType>(t);
      e.epoch = r.u64("envelope.epoch");
      std::size_t payload_at = r.offset() + 4;
      Bytes body = r.bytes("envelope.payload");
      try {
        e.payload = decode_payload(e.type, body);
      } catch (const DecodeError& err) {
        ByteReader::fail(payload_at + err.offset(), err.field(), err.what());
      }
      return e;
    });
  }
};

/// Two signed heads that no honest log could have produced together, plus
/// the extension proof that failed between them (if any).
struct MisbehaviorEvidence {
  enum class Kind : uint8_t { kFork = 1, kBadExtension = 2 };

  Kind kind = Kind::kFork;
  SignedTreeHead first;
  SignedTreeHead second;
  std::optional<ExtensionProof> proof;

  bool operator==(const MisbehaviorEvidence&) const = default;

  Bytes encode() const {
    ByteWriter w;
    w.u8(kWireVersion).u8(static_cast<uint8_t>(kind));
    first.write(w);
    second.write(w);
    w.u8(proof ? 1 : 0);
    if (proof) proof->write(w);
    return std::move(w).take();
  }

  static MisbehaviorEvidence decode(std::span<const uint8_t> in) {
    return decode_all(in, "evidence", [](ByteReader& r) {
      r.expect_version("evidence.version");
      std::size_t at = r.offset();
      uint8_t k = r.u8("evidence.kind");
      if (k != 1 && k != 2) ByteReader::fail(at, "evidence.kind", "unknown kind");
      MisbehaviorEvidence e;
      e.kind = static_cast<Kind>(k);
      e.first = SignedTreeHead::read(r);
      e.second = SignedTreeHead::read(r);
      if (r.flag("evidence.has_proof")) e.proof = ExtensionProof::read(r);
      return e;
    });
  }
};

}  // namespace ctlog

#endif  // CTLOG_LOG_TYPES_HPP_
