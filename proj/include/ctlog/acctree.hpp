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

// Active certificates keyed by domain, each with a membership witness kept
// current against the latest accumulation value. Every insert or revoke
// refreshes all other witnesses, one exponentiation each.

#ifndef CTLOG_ACCTREE_HPP_
#define CTLOG_ACCTREE_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/certificate.hpp"
#include "ctlog/errors.hpp"
#include "ctlog/wire.hpp"

namespace ctlog {

struct ActiveEntry {
  Certificate cert;
  accumulator::AccElement element;
  accumulator::MembershipWitness witness;

  bool operator==(const ActiveEntry& o) const {
    return cert == o.cert && element == o.element && witness == o.witness;
  }

  // u32-len cert || element scalar || witness
  void write(ByteWriter& w) const {
    w.bytes(cert.encode()).scalar(element.value).g1(witness.w);
  }

  static ActiveEntry read(ByteReader& r) {
    ActiveEntry e;
    e.cert = Certificate::decode(r.bytes("entry.cert"));
    e.element.value = r.scalar("entry.element");
    e.witness.w = r.g1("entry.witness");
    return e;
  }
};

class AccTree {
 public:
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<Bytes, ActiveEntry>& entries() const { return entries_; }

  /// Total witness refreshes performed so far.
  uint64_t witness_updates() const { return witness_updates_; }

  const ActiveEntry* find(std::span<const uint8_t> domain) const {
    auto it = entries_.find(Bytes(domain.begin(), domain.end()));
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// Adds cert to X. The new witness is the old A; the m existing
  /// witnesses are raised to (c + s).
  accumulator::AccumulationValue insert(const Certificate& cert, accumulator::AccumulatorState& acc) {
    cert.validate();
    if (cert.is_revocation()) throw Error(Errc::kInvalidArgument, "cannot insert a revocation entry");
    if (find(cert.domain)) throw Error(Errc::kDomainAlreadyActive, "domain has an active certificate");
    ActiveEntry entry{cert, element_of(cert), {acc.value.point}};
    for (const auto& [_, e] : entries_) {
      if (e.element == entry.element) throw Error(Errc::kDuplicateElement, "element already in X");
    }
    accumulator::AccumulatorState next = accumulator::added(acc, entry.element);
    for (auto& [_, e] : entries_) {
      e.witness = accumulator::update_membership_witness(e.witness, entry.element,
                                                         accumulator::Direction::kAdded, acc.trapdoor);
      ++witness_updates_;
    }
    entries_.emplace(cert.domain, std::move(entry));
    acc = std::move(next);
    return acc.value;
  }

  /// Removes the domain's active certificate and refreshes the remaining
  /// m - 1 witnesses.
  accumulator::AccumulationValue revoke(std::span<const uint8_t> domain,
                                        accumulator::AccumulatorState& acc) {
    auto it = entries_.find(Bytes(domain.begin(), domain.end()));
    if (it == entries_.end()) throw Error(Errc::kNothingToRevoke, "domain has no active certificate");
    const accumulator::AccElement gone = it->second.element;
    accumulator::AccumulatorState next = accumulator::removed(acc, gone);
    entries_.erase(it);
    for (auto& [_, e] : entries_) {
      e.witness = accumulator::update_membership_witness(e.witness, gone,
                                                         accumulator::Direction::kRemoved, acc.trapdoor);
      ++witness_updates_;
    }
    acc = std::move(next);
    return acc.value;
  }

  /// Stored witness for an active (domain, pk); no recomputation.
  const accumulator::MembershipWitness& lookup_witness(std::span<const uint8_t> domain,
                                                       std::span<const uint8_t> pk) const {
    const ActiveEntry* e = find(domain);
    if (!e) throw Error(Errc::kNotCurrent, "domain has no active certificate");
    const Bytes& active = *e->cert.public_key;
    if (!std::equal(active.begin(), active.end(), pk.begin(), pk.end())) {
      throw Error(Errc::kNotCurrent, "key is not the domain's active key");
    }
    return e->witness;
  }

  /// Elements of X in domain order.
  std::vector<accumulator::AccElement> active_elements() const {
    std::vector<accumulator::AccElement> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e.element);
    return out;
  }

  /// Snapshot restore; trusts the caller's entries.
  void restore(std::vector<ActiveEntry> entries) {
    entries_.clear();
    for (auto& e : entries) {
      Bytes d = e.cert.domain;
      entries_.emplace(std::move(d), std::move(e));
    }
  }

 private:
  std::map<Bytes, ActiveEntry> entries_;
  uint64_t witness_updates_ = 0;
};

}  // namespace ctlog

#endif  // CTLOG_ACCTREE_HPP_
