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

// Verifying client. Every check is anchored in a signature-checked STH or
// in the self-checked accumulator parameters; nothing the prover sends
// alongside a proof is trusted.

#ifndef CTLOG_AUDITOR_HPP_
#define CTLOG_AUDITOR_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/certificate.hpp"
#include "ctlog/chrontree.hpp"
#include "ctlog/crypto/drbg.hpp"
#include "ctlog/crypto/signature.hpp"
#include "ctlog/log_types.hpp"
#include "ctlog/prover_client.hpp"
#include "ctlog/searchtree.hpp"

namespace ctlog {

enum class RejectReason {
  kNone,
  kUnknownEpoch,
  kVariantMismatch,
  kDecodeFailure,
  kMalformedQuery,
  kProofRejected,
};

constexpr std::string_view reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "none";
    case RejectReason::kUnknownEpoch: return "unknown-epoch";
    case RejectReason::kVariantMismatch: return "variant-mismatch";
    case RejectReason::kDecodeFailure: return "decode-failure";
    case RejectReason::kMalformedQuery: return "malformed-query";
    case RejectReason::kProofRejected: return "proof-rejected";
  }
  return "unknown";
}

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string detail;

  explicit operator bool() const { return accepted; }
  static Verdict accept() { return {true, RejectReason::kNone, {}}; }
  static Verdict reject(RejectReason r, std::string d = {}) { return {false, r, std::move(d)}; }
};

enum class AdvanceStatus { kAccepted, kBadSignature, kStale, kMisbehavior };

struct AdvanceResult {
  AdvanceStatus status = AdvanceStatus::kAccepted;
  std::optional<MisbehaviorEvidence> evidence;
  std::string detail;
};

class Auditor {
 public:
  /// Runs the parameter self-check; throws if the parameters are invalid.
  Auditor(const crypto::PublicKeyBytes& log_key,
          std::shared_ptr<const accumulator::PublicParams> params, crypto::Drbg& rng)
      : key_(log_key), params_(std::move(params)) {
    if (!key_.valid()) throw Error(Errc::kInvalidArgument, "invalid log key");
    if (!params_ || !params_->self_check(rng)) {
      throw Error(Errc::kInvalidArgument, "accumulator parameters fail the self-check");
    }
  }

  const crypto::VerifyKey& log_key() const { return key_; }
  const accumulator::PublicParams& params() const { return *params_; }
  std::shared_ptr<const accumulator::PublicParams> params_ptr() const { return params_; }

  bool has_sth() const { return !sths_.empty(); }
  const SignedTreeHead& latest() const { return sths_.rbegin()->second; }
  const std::map<uint64_t, SignedTreeHead>& accepted() const { return sths_; }

  const SignedTreeHead* sth_at(uint64_t epoch) const {
    auto it = sths_.find(epoch);
    return it == sths_.end() ? nullptr : &it->second;
  }

  /// First STH, taken on trust once its signature checks out.
  AdvanceResult bootstrap(const SignedTreeHead& sth) {
    if (has_sth()) throw Error(Errc::kInvalidArgument, "trust already bootstrapped");
    if (!sth.verify(key_)) return {AdvanceStatus::kBadSignature, std::nullopt, "bad STH signature"};
    sths_.emplace(sth.epoch, sth);
    return {};
  }

  /// Accepts `next` only if it is signed, newer than the latest trusted
  /// head and provably extends it.
  AdvanceResult advance_sth(const SignedTreeHead& next, const ExtensionProof& proof) {
    if (!has_sth()) return bootstrap(next);
    if (!next.verify(key_)) return {AdvanceStatus::kBadSignature, std::nullopt, "bad STH signature"};
    const SignedTreeHead& cur = latest();
    if (next.epoch <= cur.epoch) {
      const SignedTreeHead* same = sth_at(next.epoch);
      if (same && !(*same == next)) {
        return {AdvanceStatus::kMisbehavior,
                MisbehaviorEvidence{MisbehaviorEvidence::Kind::kFork, *same, next, std::nullopt},
                "two signed heads for epoch " + std::to_string(next.epoch)};
      }
      return {AdvanceStatus::kStale, std::nullopt, "epoch not newer than trusted head"};
    }
    if (!chron::verify_extension(cur.dig_ct, next.dig_ct, proof)) {
      return {AdvanceStatus::kMisbehavior,
              MisbehaviorEvidence{MisbehaviorEvidence::Kind::kBadExtension, cur, next, proof},
              "new head does not extend the trusted head"};
    }
    sths_.emplace(next.epoch, next);
    return {};
  }

  Verdict verify(const Query& q, std::span<const uint8_t> envelope) const {
    ProofEnvelope env;
    try {
      env = ProofEnvelope::decode(envelope);
    } catch (const DecodeError& e) {
      return Verdict::reject(RejectReason::kDecodeFailure, e.what());
    }
    return verify(q, env);
  }

  Verdict verify(const Query& q, const ProofEnvelope& env) const {
    if (!q.well_formed()) return Verdict::reject(RejectReason::kMalformedQuery);
    if (env.type != q.type || payload_type(env.payload) != q.type) {
      return Verdict::reject(RejectReason::kVariantMismatch);
    }
    const SignedTreeHead* anchor = sth_at(env.epoch);
    if (!anchor) return Verdict::reject(RejectReason::kUnknownEpoch);

    bool ok = false;
    switch (q.type) {
      case QueryType::kPresence:
        ok = search::verify_presence(anchor->dig_st, q.domain, q.public_key,
                                     std::get<PresenceProof>(env.payload));
        break;
      case QueryType::kAbsenceOfCert:
        ok = accumulator::verify_nonmembership(
            std::get<accumulator::NonMembershipWitness>(env.payload),
            element_of(q.domain, q.public_key), anchor->acc_value, *params_);
        break;
      case QueryType::kAbsenceOfOwner:
        ok = search::verify_absence(anchor->dig_st, q.domain,
                                    std::get<AbsenceOfOwnerProof>(env.payload));
        break;
      case QueryType::kExtension: {
        if (env.epoch != q.new_epoch) return Verdict::reject(RejectReason::kVariantMismatch, "epoch");
        const SignedTreeHead* from = sth_at(q.old_epoch);
        if (!from) return Verdict::reject(RejectReason::kUnknownEpoch);
        ok = chron::verify_extension(from->dig_ct, anchor->dig_ct,
                                     std::get<ExtensionProof>(env.payload));
        break;
      }
      case QueryType::kCurrency:
        ok = accumulator::verify_membership(std::get<accumulator::MembershipWitness>(env.payload),
                                            element_of(q.domain, q.public_key), anchor->acc_value,
                                            *params_);
        break;
    }
    return ok ? Verdict::accept() : Verdict::reject(RejectReason::kProofRejected);
  }

  // Trust file: key || params hash || count || STHs.
  Bytes encode_trust() const {
    ByteWriter w;
    w.raw(kTrustMagic).u8(kWireVersion).raw(key_.bytes()).raw(crypto::sha256(params_->encode()));
    w.u64(sths_.size());
    for (const auto& [_, s] : sths_) s.write(w);
    return std::move(w).take();
  }

  /// Restores trust; `params` must be the parameters the trust was built on.
  static Auditor decode_trust(std::span<const uint8_t> in,
                              std::shared_ptr<const accumulator::PublicParams> params) {
    return decode_all(in, "trust", [&](ByteReader& r) {
      std::size_t at = r.offset();
      if (r.fixed<4>("trust.magic") != kTrustMagic) ByteReader::fail(at, "trust.magic", "bad magic");
      r.expect_version("trust.version");
      crypto::PublicKeyBytes key = r.fixed<32>("trust.log_key");
      at = r.offset();
      Digest ph = r.fixed<32>("trust.params_hash");
      if (ph != crypto::sha256(params->encode())) {
        ByteReader::fail(at, "trust.params_hash", "parameters changed since first use");
      }
      Auditor a(key, std::move(params));
      uint64_t n = r.u64("trust.count");
      for (uint64_t i = 0; i < n; ++i) {
        SignedTreeHead s = SignedTreeHead::read(r);
        if (!s.verify(a.key_)) ByteReader::fail(r.offset(), "trust.sth", "bad signature");
        a.sths_.emplace(s.epoch, std::move(s));
      }
      return a;
    });
  }

 private:
  static constexpr std::array<uint8_t, 4> kTrustMagic = {'C', 'T', 'T', 'S'};

  // Parameters already self-checked when the trust was first established.
  Auditor(const crypto::PublicKeyBytes& key, std::shared_ptr<const accumulator::PublicParams> params)
      : key_(key), params_(std::move(params)) {}

  crypto::VerifyKey key_;
  std::shared_ptr<const accumulator::PublicParams> params_;
  std::map<uint64_t, SignedTreeHead> sths_;
};

/// Brings the auditor up to the log's latest head: bootstraps on first
/// use, otherwise asks for an extension proof from the trusted head.
inline AdvanceResult sync_sth(Auditor& aud, ProverClient& client) {
  SignedTreeHead head = client.sth();
  if (!aud.has_sth()) return aud.bootstrap(head);
  const SignedTreeHead& cur = aud.latest();
  if (head.epoch <= cur.epoch) return aud.advance_sth(head, {});
  ProofEnvelope env = ProofEnvelope::decode(client.prove(Query::extension(cur.epoch, head.epoch)));
  if (env.type != QueryType::kExtension || env.epoch != head.epoch) {
    throw Error(Errc::kMalformed, "log answered an extension query with another proof type");
  }
  return aud.advance_sth(head, std::get<ExtensionProof>(env.payload));
}

struct CrlItem {
  enum class Status { kProvenAbsent, kNotProven, kTransportError };
  Bytes domain;
  Bytes public_key;
  Status status = Status::kNotProven;
  std::string detail;
};

struct CrlReport {
  std::vector<CrlItem> items;

  std::size_t flagged() const {
    std::size_t n = 0;
    for (const CrlItem& i : items) n += i.status != CrlItem::Status::kProvenAbsent;
    return n;
  }
};

/// Asks for a Type-2 proof for every CRL entry. Per-item failures are
/// recorded, never thrown.
inline CrlReport check_crl(const Auditor& aud, std::span<const Certificate> crl,
                           ProverClient& client) {
  CrlReport rep;
  for (const Certificate& c : crl) {
    CrlItem item{c.domain, c.public_key.value_or(Bytes{}), CrlItem::Status::kNotProven, {}};
    if (c.is_revocation()) {
      item.detail = "CRL entry has no key";
      rep.items.push_back(std::move(item));
      continue;
    }
    Query q = Query::absence_of_cert(c.domain, *c.public_key);
    try {
      Verdict v = aud.verify(q, client.prove(q));
      if (v) {
        item.status = CrlItem::Status::kProvenAbsent;
      } else {
        item.detail = std::string(reason_name(v.reason));
      }
    } catch (const Error& e) {
      item.status = e.code() == Errc::kTransport ? CrlItem::Status::kTransportError
                                                 : CrlItem::Status::kNotProven;
      item.detail = e.what();
    }
    rep.items.push_back(std::move(item));
  }
  return rep;
}

struct MonitorHit {
  uint64_t index;
  Certificate cert;
};

struct MonitorReport {
  std::vector<MonitorHit> hits;
  uint64_t scanned = 0;
  bool root_verified = false;  // leaves recomputed to the trusted digCT
};

/// Walks chron leaves [from, size of the latest trusted head) in pages and
/// reports entries for `domain`. From index 0 the whole tree is rebuilt and
/// checked against the trusted digCT.
inline MonitorReport monitor(const Auditor& aud, ProverClient& client,
                             std::span<const uint8_t> domain, uint64_t from,
                             uint64_t page = 256) {
  MonitorReport rep;
  const TreeDigest target = aud.latest().dig_ct;
  chron::ChronTree rebuilt;
  for (uint64_t i = from; i < target.size;) {
    auto batch = client.leaves(i, std::min<uint64_t>(page, target.size - i));
    if (batch.empty()) throw Error(Errc::kTransport, "log returned no leaves");
    for (auto& leaf : batch) {
      Certificate c = Certificate::decode(leaf.cert);
      if (std::equal(c.domain.begin(), c.domain.end(), domain.begin(), domain.end())) {
        rep.hits.push_back({i, std::move(c)});
      }
      if (from == 0) rebuilt.append(std::move(leaf));
      ++i;
      ++rep.scanned;
    }
  }
  if (from == 0) {
    if (!(rebuilt.root() == target)) {
      throw Error(Errc::kMalformed, "fetched leaves do not match the trusted digCT");
    }
    rep.root_verified = true;
  }
  return rep;
}

}  // namespace ctlog

#endif  // CTLOG_AUDITOR_HPP_
