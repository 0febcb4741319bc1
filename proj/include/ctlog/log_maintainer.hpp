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

// The certificate prover. Holds the accumulator trapdoor and the three
// structures, issues SCTs for submissions, applies them in batches and
// answers the five proof queries.
//
// State directory layout:
//   log.key       configuration, trapdoor and signing seed (mode 0600)
//   params.ctac   accumulator public parameters
//   journal.log   write-ahead journal of submissions and flushes
//   snapshot.bin  full state covering a prefix of the journal
//   LOCK          held while a process has the directory open

#ifndef CTLOG_LOG_MAINTAINER_HPP_
#define CTLOG_LOG_MAINTAINER_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/acctree.hpp"
#include "ctlog/certificate.hpp"
#include "ctlog/chrontree.hpp"
#include "ctlog/crypto/drbg.hpp"
#include "ctlog/crypto/signature.hpp"
#include "ctlog/errors.hpp"
#include "ctlog/log_types.hpp"
#include "ctlog/searchtree.hpp"
#include "ctlog/storage.hpp"
#include "ctlog/wire.hpp"

namespace ctlog {

/// Seconds since the Unix epoch.
using Clock = std::function<uint64_t()>;

inline Clock system_clock() {
  return [] {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                                     std::chrono::system_clock::now().time_since_epoch())
                                     .count());
  };
}

struct LogConfig {
  uint32_t capacity = accumulator::kDefaultCapacity;
  uint32_t keylist_n = search::kDefaultKeyListSize;
  uint32_t snapshot_every = 16;  // flushes between snapshots; 0 disables
  bool sync = true;              // fsync journal and snapshots

  bool operator==(const LogConfig&) const = default;
};

struct Rejection {
  Request request;
  Errc code;
  std::string message;
};

struct FlushReport {
  SignedTreeHead sth;
  std::size_t applied = 0;
  std::vector<Rejection> rejected;
};

struct RecoveryReport {
  uint64_t epoch = 0;
  uint64_t snapshot_records = 0;  // journal records covered by the snapshot
  uint64_t replayed = 0;
  bool truncated = false;
  uint64_t discarded_bytes = 0;
};

class LogMaintainer {
 public:
  using SearchTree = search::SearchTree<>;

  /// In-memory log. Trapdoor and signing key are drawn from `rng`.
  static std::unique_ptr<LogMaintainer> create(const LogConfig& cfg, crypto::Drbg& rng,
                                               Clock clock = system_clock()) {
    accumulator::AccumulatorState acc = accumulator::setup(128, cfg.capacity, rng);
    crypto::Drbg::Seed seed = rng.bytes32();
    std::unique_ptr<LogMaintainer> lm(new LogMaintainer(cfg, std::move(acc), seed, std::move(clock)));
    lm->publish_initial();
    return lm;
  }

  /// Creates a new state directory; fails if one already exists there.
  static std::unique_ptr<LogMaintainer> init_dir(const std::filesystem::path& dir,
                                                 const LogConfig& cfg, crypto::Drbg& rng,
                                                 Clock clock = system_clock()) {
    std::filesystem::create_directories(dir);
    auto lock = std::make_unique<storage::DirLock>(dir);
    if (std::filesystem::exists(dir / kKeyFile)) {
      throw Error(Errc::kInvalidArgument, "log already initialised in " + dir.string());
    }
    auto lm = create(cfg, rng, std::move(clock));
    storage::write_file_atomic(dir / kParamsFile, lm->acc_.params->encode(), cfg.sync);
    storage::write_file_atomic(dir / kKeyFile, lm->encode_key_file(), cfg.sync, 0600);
    lm->attach(dir, std::move(lock), 0);
    lm->write_snapshot();
    return lm;
  }

  /// Opens an existing directory: loads the snapshot, replays the journal
  /// after it and cuts off a torn or corrupt tail.
  static std::unique_ptr<LogMaintainer> open_dir(const std::filesystem::path& dir,
                                                 Clock clock = system_clock(),
                                                 RecoveryReport* report = nullptr) {
    auto lock = std::make_unique<storage::DirLock>(dir);
    auto [cfg, trapdoor, seed] = decode_key_file(storage::read_file(dir / kKeyFile));
    auto params = std::make_shared<const accumulator::PublicParams>(
        accumulator::PublicParams::decode(storage::read_file(dir / kParamsFile)));
    if (!(params->g1_s() == params->g1().mul(trapdoor.s)) || params->capacity() != cfg.capacity) {
      throw Error(Errc::kCorruptJournal, "params.ctac does not match log.key");
    }
    accumulator::AccumulatorState acc{trapdoor, params, {params->g1()}, 0};
    std::unique_ptr<LogMaintainer> lm(new LogMaintainer(cfg, std::move(acc), seed, std::move(clock)));

    RecoveryReport rep;
    rep.snapshot_records = lm->load_snapshot(storage::read_file(dir / kSnapshotFile));

    const auto journal_path = dir / kJournalFile;
    Bytes file = std::filesystem::exists(journal_path) ? storage::read_file(journal_path) : Bytes{};
    storage::Journal::Scan scan = storage::Journal::scan(file);
    if (scan.records.size() < rep.snapshot_records) {
      throw Error(Errc::kCorruptJournal, "journal shorter than snapshot coverage");
    }
    uint64_t good = rep.snapshot_records;
    for (std::size_t i = rep.snapshot_records; i < scan.records.size(); ++i) {
      try {
        lm->replay(scan.records[i]);
      } catch (const Error&) {
        // Halt at the last record that applies cleanly.
        scan.torn = true;
        scan.valid_bytes = offset_of_record(file, i);
        break;
      }
      good = i + 1;
    }
    rep.replayed = good - rep.snapshot_records;
    rep.truncated = scan.torn;
    rep.discarded_bytes = file.size() - scan.valid_bytes;
    rep.epoch = lm->sths_.back().epoch;
    lm->attach(dir, std::move(lock), scan.valid_bytes);
    lm->journal_records_ = good;
    if (report) *report = rep;
    return lm;
  }

  // ---- write side -------------------------------------------------------

  /// Validates against the state with all pending requests applied, journals
  /// the request and returns the log's promise to include it.
  SignedCertificateTimestamp submit(const Request& req) {
    std::unique_lock lock(mu_);
    const uint64_t ts = clock_();
    try {
      check_submittable(req);
    } catch (const Error& e) {
      if (e.code() != Errc::kIo) journal_reject(ts, req, e);
      throw;
    }
    if (journal_) {
      ByteWriter w;
      w.u8(kRecSubmit).u64(ts).bytes(req.encode());
      journal_->append(w.data());
      ++journal_records_;
    }
    return enqueue(ts, req);
  }

  /// Applies every pending request in submission order and publishes the
  /// next signed tree head.
  FlushReport flush() {
    std::unique_lock lock(mu_);
    const uint64_t ts = clock_();
    const uint64_t epoch = sths_.back().epoch + 1;
    if (journal_) {
      ByteWriter w;
      w.u8(kRecFlush).u64(epoch).u64(ts);
      journal_->append(w.data());
      ++journal_records_;
    }
    FlushReport rep = apply_flush(epoch, ts);
    for (const Rejection& r : rep.rejected) {
      journal_reject(ts, r.request, Error(r.code, r.message));
    }
    if (dir_ && cfg_.snapshot_every != 0 && epoch % cfg_.snapshot_every == 0) write_snapshot();
    return rep;
  }

  void snapshot_now() {
    std::unique_lock lock(mu_);
    if (dir_) write_snapshot();
  }

  // ---- read side --------------------------------------------------------

  ProofEnvelope prove(const Query& q) const {
    std::shared_lock lock(mu_);
    if (!q.well_formed()) throw Error(Errc::kInvalidArgument, "query fields do not match its type");
    const uint64_t epoch = sths_.back().epoch;
    switch (q.type) {
      case QueryType::kPresence:
        return {q.type, epoch, search_.presence_proof(q.domain, q.public_key)};
      case QueryType::kAbsenceOfCert: {
        const ActiveEntry* e = active_.find(q.domain);
        if (e && *e->cert.public_key == q.public_key) {
          throw Error(Errc::kIsAMember, "certificate is active");
        }
        return {q.type, epoch,
                accumulator::nonmembership_witness(active_.active_elements(),
                                                   element_of(q.domain, q.public_key),
                                                   acc_.trapdoor, *acc_.params)};
      }
      case QueryType::kAbsenceOfOwner:
        return {q.type, epoch, search_.absence_proof(q.domain)};
      case QueryType::kExtension: {
        const SignedTreeHead& from = sth_locked(q.old_epoch);
        const SignedTreeHead& to = sth_locked(q.new_epoch);
        ExtensionProof p{from.dig_ct.size, to.dig_ct.size, {}};
        if (from.dig_ct.size > 0) p = chron_.extension_proof(from.dig_ct.size, to.dig_ct.size);
        return {q.type, to.epoch, std::move(p)};
      }
      case QueryType::kCurrency:
        return {q.type, epoch, active_.lookup_witness(q.domain, q.public_key)};
    }
    throw Error(Errc::kInvalidArgument, "unknown query type");
  }

  SignedTreeHead sth() const {
    std::shared_lock lock(mu_);
    return sths_.back();
  }

  SignedTreeHead sth_at(uint64_t epoch) const {
    std::shared_lock lock(mu_);
    return sth_locked(epoch);
  }

  std::vector<chron::ChronLeaf> leaves(uint64_t from, uint64_t count) const {
    std::shared_lock lock(mu_);
    const uint64_t n = sths_.back().dig_ct.size;
    std::vector<chron::ChronLeaf> out;
    for (uint64_t i = from; i < n && i - from < count; ++i) out.push_back(chron_.leaf(i));
    return out;
  }

  std::shared_ptr<const accumulator::PublicParams> params() const { return acc_.params; }
  const crypto::VerifyKey& log_key() const { return signer_.verify_key(); }
  const LogId& log_id() const { return log_id_; }
  const LogConfig& config() const { return cfg_; }

  std::size_t pending_count() const {
    std::shared_lock lock(mu_);
    return pending_.size();
  }

  // Unsynchronised views for single-threaded callers and tests.
  const chron::ChronTree& chron_tree() const { return chron_; }
  const SearchTree& search_tree() const { return search_; }
  const AccTree& acc_tree() const { return active_; }
  const accumulator::AccumulatorState& acc_state() const { return acc_; }
  const std::vector<SignedTreeHead>& sth_history() const { return sths_; }

  /// Cross-structure coherence; empty when every invariant holds.
  std::string check_invariants() const {
    std::shared_lock lock(mu_);
    const SignedTreeHead& head = sths_.back();
    if (head.dig_ct != chron_.root()) return "STH digCT differs from the chron tree";
    if (head.dig_st != search_.digest()) return "STH digST differs from the search tree";
    if (!(head.acc_value == acc_.value)) return "STH accumulation value is stale";
    if (chron_.size() > 0) {
      const chron::ChronLeaf& last = chron_.leaf(chron_.size() - 1);
      if (!(last.acc_value == acc_.value)) return "last leaf A differs from the accumulator";
      if (last.dig_st != search_.digest()) return "last leaf digST differs from the search tree";
    }
    if (acc_.size != active_.size()) return "accumulator size differs from the active set";
    for (const auto& [domain, e] : active_.entries()) {
      const search::OwnerRecord* rec = search_.find(domain);
      if (!rec || rec->keys.back() != *e.cert.public_key) {
        return "active key is not the owner's most recent key";
      }
    }
    return {};
  }

 private:
  static constexpr const char* kKeyFile = "log.key";
  static constexpr const char* kParamsFile = "params.ctac";
  static constexpr const char* kJournalFile = "journal.log";
  static constexpr const char* kSnapshotFile = "snapshot.bin";
  static constexpr std::array<uint8_t, 4> kKeyMagic = {'C', 'T', 'L', 'K'};
  static constexpr std::array<uint8_t, 4> kSnapMagic = {'C', 'T', 'S', 'N'};

  static constexpr uint8_t kRecSubmit = 1;
  static constexpr uint8_t kRecFlush = 2;
  static constexpr uint8_t kRecReject = 3;

  struct Pending {
    uint64_t ts;
    Request request;
  };

  LogMaintainer(const LogConfig& cfg, accumulator::AccumulatorState acc,
                const crypto::Drbg::Seed& seed, Clock clock)
      : cfg_(cfg),
        acc_(std::move(acc)),
        signer_(seed),
        log_id_(log_id_of(signer_.verify_key())),
        search_(cfg.keylist_n),
        clock_(std::move(clock)) {}

  void publish_initial() {
    SignedTreeHead s;
    s.dig_ct = chron_.root();
    s.dig_st = search_.digest();
    s.acc_value = acc_.value;
    s.epoch = 0;
    s.timestamp = clock_();
    s.signature = signer_.sign(s.signing_input());
    sths_.push_back(std::move(s));
  }

  void attach(const std::filesystem::path& dir, std::unique_ptr<storage::DirLock> lock,
              uint64_t journal_bytes) {
    dir_ = dir;
    lock_ = std::move(lock);
    journal_ = std::make_unique<storage::Journal>(dir / kJournalFile, journal_bytes, cfg_.sync);
  }

  const SignedTreeHead& sth_locked(uint64_t epoch) const {
    if (epoch >= sths_.size()) throw Error(Errc::kUnknownEpoch, "no STH for epoch " + std::to_string(epoch));
    return sths_[epoch];
  }

  // Active key and most recent search-tree key for a domain once every
  // pending request has been applied.
  struct Projection {
    std::optional<Bytes> active;
    std::optional<Bytes> last_key;
  };

  Projection project(std::span<const uint8_t> domain) const {
    Projection p;
    if (const ActiveEntry* e = active_.find(domain)) p.active = *e->cert.public_key;
    if (const search::OwnerRecord* r = search_.find(domain)) p.last_key = r->keys.back();
    const Bytes d(domain.begin(), domain.end());
    for (const Pending& q : pending_) {
      const Request& r = q.request;
      if (r.kind == Request::Kind::kInsert && r.cert.domain == d) {
        p.active = p.last_key = *r.cert.public_key;
      } else if (r.kind == Request::Kind::kRevoke && r.domain == d) {
        p.active.reset();
      }
    }
    return p;
  }

  void check_submittable(const Request& req) const {
    req.validate();
    const Bytes& domain = req.kind == Request::Kind::kInsert ? req.cert.domain : req.domain;
    Projection p = project(domain);
    if (req.kind == Request::Kind::kInsert) {
      if (p.active) throw Error(Errc::kDomainAlreadyActive, "revoke the active certificate first");
      if (p.last_key && *p.last_key == *req.cert.public_key) {
        throw Error(Errc::kDuplicateIssuance, "key equals the owner's most recent key");
      }
      if (static_cast<int64_t>(active_.size()) + pending_delta_ + 1 >
          static_cast<int64_t>(acc_.params->capacity())) {
        throw Error(Errc::kCapacityExceeded, "active set is at capacity");
      }
    } else {
      if (!p.active) throw Error(Errc::kNothingToRevoke, "domain has no active certificate");
      if (*p.active != req.public_key) throw Error(Errc::kNotCurrent, "key is not the active key");
    }
  }

  SignedCertificateTimestamp enqueue(uint64_t ts, const Request& req) {
    SignedCertificateTimestamp sct;
    sct.cert_hash = entry_certificate(ts, req).hash();
    sct.timestamp = ts;
    sct.log_id.assign(log_id_.begin(), log_id_.end());
    sct.signature = signer_.sign(sct.signing_input());
    pending_.push_back({ts, req});
    pending_delta_ += req.kind == Request::Kind::kInsert ? 1 : -1;
    return sct;
  }

  // The certificate the request will place in the chron tree.
  static Certificate entry_certificate(uint64_t ts, const Request& req) {
    if (req.kind == Request::Kind::kInsert) return req.cert;
    return Certificate::revocation(req.domain, ts);
  }

  void apply_one(const Pending& p) {
    const Request& r = p.request;
    if (r.kind == Request::Kind::kInsert) {
      if (const search::OwnerRecord* rec = search_.find(r.cert.domain)) {
        if (rec->keys.back() == *r.cert.public_key) {
          throw Error(Errc::kDuplicateIssuance, "key equals the owner's most recent key");
        }
      }
      active_.insert(r.cert, acc_);
      search_ = search_.upsert_key(r.cert.domain, *r.cert.public_key);
    } else {
      const ActiveEntry* e = active_.find(r.domain);
      if (!e) throw Error(Errc::kNothingToRevoke, "domain has no active certificate");
      if (*e->cert.public_key != r.public_key) throw Error(Errc::kNotCurrent, "key is not the active key");
      active_.revoke(r.domain, acc_);
    }
    chron_.append({entry_certificate(p.ts, r).encode(), acc_.value, search_.digest()});
  }

  FlushReport apply_flush(uint64_t epoch, uint64_t ts) {
    FlushReport rep;
    for (const Pending& p : pending_) {
      try {
        apply_one(p);
        ++rep.applied;
      } catch (const Error& e) {
        if (e.code() == Errc::kTrapdoorCollision) throw;
        rep.rejected.push_back({p.request, e.code(), e.what()});
      }
    }
    pending_.clear();
    pending_delta_ = 0;

    SignedTreeHead s;
    s.dig_ct = chron_.root();
    s.dig_st = search_.digest();
    s.acc_value = acc_.value;
    s.epoch = epoch;
    s.timestamp = ts;
    s.signature = signer_.sign(s.signing_input());

    // Self-audit: the new head must extend the previous one.
    const SignedTreeHead& prev = sths_.back();
    ExtensionProof ext{prev.dig_ct.size, s.dig_ct.size, {}};
    if (prev.dig_ct.size > 0) ext = chron_.extension_proof(prev.dig_ct.size, s.dig_ct.size);
    if (!chron::verify_extension(prev.dig_ct, s.dig_ct, ext)) {
      throw Error(Errc::kCorruptJournal, "self-audit failed: new head does not extend the previous");
    }
    sths_.push_back(s);
    rep.sth = std::move(s);
    return rep;
  }

  void journal_reject(uint64_t ts, const Request& req, const Error& e) {
    if (!journal_) return;
    ByteWriter w;
    w.u8(kRecReject).u64(ts).bytes(errc_name(e.code())).bytes(req.encode());
    journal_->append(w.data());
    ++journal_records_;
  }

  void replay(std::span<const uint8_t> payload) {
    ByteReader r(payload);
    uint8_t type = r.u8("journal.type");
    if (type == kRecSubmit) {
      uint64_t ts = r.u64("journal.ts");
      Request req = Request::decode(r.bytes("journal.request"));
      r.expect_end("journal record");
      check_submittable(req);
      enqueue(ts, req);
    } else if (type == kRecFlush) {
      uint64_t epoch = r.u64("journal.epoch");
      uint64_t ts = r.u64("journal.ts");
      r.expect_end("journal record");
      if (epoch != sths_.back().epoch + 1) throw Error(Errc::kCorruptJournal, "flush epoch out of order");
      apply_flush(epoch, ts);
    } else if (type != kRecReject) {
      throw Error(Errc::kCorruptJournal, "unknown journal record type");
    }
  }

  static uint64_t offset_of_record(std::span<const uint8_t> file, std::size_t index) {
    uint64_t off = 0;
    for (std::size_t i = 0; i < index; ++i) {
      uint32_t len = (uint32_t{file[off]} << 24) | (uint32_t{file[off + 1]} << 16) |
                     (uint32_t{file[off + 2]} << 8) | file[off + 3];
      off += 4 + len + storage::kChecksumSize;
    }
    return off;
  }

  // ---- key file -----------------------------------------------------------

  Bytes encode_key_file() const {
    ByteWriter w;
    w.raw(kKeyMagic).u8(kWireVersion);
    w.u32(cfg_.capacity).u32(cfg_.keylist_n).u32(cfg_.snapshot_every).u8(cfg_.sync ? 1 : 0);
    w.scalar(acc_.trapdoor.s).raw(signer_.seed());
    return std::move(w).take();
  }

  static std::tuple<LogConfig, accumulator::Trapdoor, crypto::Drbg::Seed> decode_key_file(
      std::span<const uint8_t> in) {
    return decode_all(in, "log key", [](ByteReader& r) {
      std::size_t at = r.offset();
      if (r.fixed<4>("key.magic") != kKeyMagic) ByteReader::fail(at, "key.magic", "bad magic");
      r.expect_version("key.version");
      LogConfig cfg;
      cfg.capacity = r.u32("key.capacity");
      cfg.keylist_n = r.u32("key.keylist_n");
      cfg.snapshot_every = r.u32("key.snapshot_every");
      cfg.sync = r.flag("key.sync");
      accumulator::Trapdoor td{r.scalar("key.trapdoor")};
      crypto::Drbg::Seed seed = r.fixed<32>("key.seed");
      return std::tuple{cfg, td, seed};
    });
  }

  // ---- snapshot -----------------------------------------------------------

  Bytes encode_snapshot() const {
    ByteWriter w;
    w.raw(kSnapMagic).u8(kWireVersion).u64(journal_records_);
    w.g1(acc_.value.point).u64(acc_.size);
    w.u64(chron_.size());
    for (const auto& leaf : chron_.leaves()) leaf.write(w);
    auto records = search_.records();
    w.u32(static_cast<uint32_t>(records.size()));
    for (const auto& rec : records) rec.write(w);
    w.u32(static_cast<uint32_t>(active_.size()));
    for (const auto& [_, e] : active_.entries()) e.write(w);
    w.u64(sths_.size());
    for (const auto& s : sths_) s.write(w);
    w.u32(static_cast<uint32_t>(pending_.size()));
    for (const auto& p : pending_) w.u64(p.ts).bytes(p.request.encode());
    Digest check = crypto::sha256(w.data());
    w.raw(check);
    return std::move(w).take();
  }

  void write_snapshot() {
    storage::write_file_atomic(*dir_ / kSnapshotFile, encode_snapshot(), cfg_.sync);
  }

  // Returns the number of journal records the snapshot covers.
  uint64_t load_snapshot(std::span<const uint8_t> in) {
    if (in.size() < 32) throw Error(Errc::kCorruptJournal, "snapshot truncated");
    auto body = in.first(in.size() - 32);
    Digest check = crypto::sha256(body);
    if (!std::equal(check.begin(), check.end(), in.end() - 32)) {
      throw Error(Errc::kCorruptJournal, "snapshot checksum mismatch");
    }
    return decode_all(body, "snapshot", [&](ByteReader& r) {
      std::size_t at = r.offset();
      if (r.fixed<4>("snapshot.magic") != kSnapMagic) ByteReader::fail(at, "snapshot.magic", "bad magic");
      r.expect_version("snapshot.version");
      uint64_t covered = r.u64("snapshot.journal_records");
      acc_.value.point = r.g1("snapshot.acc_value");
      acc_.size = r.u64("snapshot.acc_size");
      uint64_t nleaves = r.u64("snapshot.leaf_count");
      for (uint64_t i = 0; i < nleaves; ++i) chron_.append(chron::ChronLeaf::read(r));
      uint32_t nrec = r.u32("snapshot.record_count");
      for (uint32_t i = 0; i < nrec; ++i) search_ = search_.put_record(search::OwnerRecord::read(r));
      uint32_t nact = r.u32("snapshot.active_count");
      std::vector<ActiveEntry> entries;
      for (uint32_t i = 0; i < nact; ++i) entries.push_back(ActiveEntry::read(r));
      active_.restore(std::move(entries));
      uint64_t nsth = r.u64("snapshot.sth_count");
      if (nsth == 0) ByteReader::fail(r.offset(), "snapshot.sth_count", "no STH");
      for (uint64_t i = 0; i < nsth; ++i) sths_.push_back(SignedTreeHead::read(r));
      uint32_t npend = r.u32("snapshot.pending_count");
      for (uint32_t i = 0; i < npend; ++i) {
        uint64_t ts = r.u64("snapshot.pending_ts");
        Request req = Request::decode(r.bytes("snapshot.pending_request"));
        enqueue(ts, req);
      }
      return covered;
    });
  }

  LogConfig cfg_;
  accumulator::AccumulatorState acc_;
  crypto::SigningKey signer_;
  LogId log_id_;
  chron::ChronTree chron_;
  SearchTree search_;
  AccTree active_;
  std::vector<SignedTreeHead> sths_;
  std::vector<Pending> pending_;
  int64_t pending_delta_ = 0;
  Clock clock_;

  std::optional<std::filesystem::path> dir_;
  std::unique_ptr<storage::DirLock> lock_;
  std::unique_ptr<storage::Journal> journal_;
  uint64_t journal_records_ = 0;

  mutable std::shared_mutex mu_;
};

}  // namespace ctlog

#endif  // CTLOG_LOG_MAINTAINER_HPP_
