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

// Authenticated search tree over domain owners. Each node holds one owner
// and its N most recent keys and is authenticated by
//
//   h(node) = H(0x02 || enc(record) || h(left) || h(right))
//
// with 32 zero bytes for an absent child. The shape is a treap whose
// priorities are a pure function of the domain, so the root digest depends
// only on the owner map and not on insertion order. Nodes are immutable and
// shared between versions.

#ifndef CTLOG_SEARCHTREE_HPP_
#define CTLOG_SEARCHTREE_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ctlog/crypto/hash.hpp"
#include "ctlog/errors.hpp"
#include "ctlog/wire.hpp"

namespace ctlog::search {

inline constexpr Digest kAbsentChild{};
inline constexpr std::size_t kDefaultKeyListSize = 5;

inline Digest empty_root() { return crypto::sha256_prefixed(kPrefixSearchNode, {}); }

inline int compare_bytes(std::span<const uint8_t> a, std::span<const uint8_t> b) {
  auto r = std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  return r < 0 ? -1 : (r > 0 ? 1 : 0);
}

struct OwnerRecord {
  Bytes domain;
  std::vector<Bytes> keys;  // oldest first

  bool operator==(const OwnerRecord&) const = default;

  bool has_key(std::span<const uint8_t> pk) const {
    return std::any_of(keys.begin(), keys.end(), [&](const Bytes& k) {
      return std::equal(k.begin(), k.end(), pk.begin(), pk.end());
    });
  }

  // u32-len domain || u16 count || u32-len keys
  void write(ByteWriter& w) const {
    w.bytes(domain).u16(static_cast<uint16_t>(keys.size()));
    for (const Bytes& k : keys) w.bytes(k);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static OwnerRecord read(ByteReader& r) {
    OwnerRecord rec;
    rec.domain = r.bytes("record.domain");
    uint16_t n = r.u16("record.count");
    rec.keys.reserve(n);
    for (uint16_t i = 0; i < n; ++i) rec.keys.push_back(r.bytes("record.key"));
    return rec;
  }

  static OwnerRecord decode(std::span<const uint8_t> in) {
    return decode_all(in, "owner record", [](ByteReader& r) { return read(r); });
  }
};

inline Digest node_hash(const OwnerRecord& rec, const Digest& left, const Digest& right) {
  return crypto::Sha256()
      .update(kPrefixSearchNode)
      .update(rec.encode())
      .update(left)
      .update(right)
      .finish();
}

/// Which child of its parent a path node is.
enum class Side : uint8_t { kLeft = 0, kRight = 1 };

struct PathStep {
  Side side;       // side of the parent on which the lower node hangs
  Digest sibling;  // hash of the parent's other child
  bool operator==(const PathStep&) const = default;
};

namespace detail {

inline void write_steps(ByteWriter& w, const std::vector<PathStep>& steps) {
  for (const PathStep& s : steps) w.u8(static_cast<uint8_t>(s.side)).raw(s.sibling);
}

inline Side read_side(ByteReader& r, std::string_view field) {
  return r.flag(field) ? Side::kRight : Side::kLeft;
}

inline uint32_t read_count(ByteReader& r, std::string_view field, std::size_t min_bytes_each) {
  std::size_t at = r.offset();
  uint32_t n = r.u32(field);
  if (n > 4096 || r.remaining() < n * min_bytes_each) {
    ByteReader::fail(at, field, "implausible count");
  }
  return n;
}

// Folds `h` (hash of records[0]) up through records[1..] along `steps`,
// checking that `domain` lies on the claimed side at every level.
inline std::optional<Digest> fold_path(Digest h, std::span<const uint8_t> domain,
                                       const std::vector<OwnerRecord>& records,
                                       const std::vector<PathStep>& steps) {
  if (steps.size() + 1 != records.size()) return std::nullopt;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const OwnerRecord& parent = records[i + 1];
    int c = compare_bytes(domain, parent.domain);
    if (c == 0) return std::nullopt;
    Side want = c < 0 ? Side::kLeft : Side::kRight;
    if (steps[i].side != want) return std::nullopt;
    h = want == Side::kLeft ? node_hash(parent, h, steps[i].sibling)
                            : node_hash(parent, steps[i].sibling, h);
  }
  return h;
}

}  // namespace detail

/// Records from the target up to the root. `left`/`right` are the target's
/// child hashes; steps[i] joins records[i] to its parent records[i + 1].
struct PresenceProof {
  std::vector<OwnerRecord> records;
  Digest left{}, right{};
  std::vector<PathStep> steps;

  bool operator==(const PresenceProof&) const = default;
  std::size_t path_length() const { return records.size(); }

  void write(ByteWriter& w) const {
    w.u32(static_cast<uint32_t>(records.size()));
    for (const OwnerRecord& r : records) r.write(w);
    w.raw(left).raw(right);
    detail::write_steps(w, steps);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static PresenceProof read(ByteReader& r) {
    PresenceProof p;
    uint32_t n = detail::read_count(r, "presence.count", 6);
    if (n == 0) ByteReader::fail(r.offset(), "presence.count", "empty path");
    for (uint32_t i = 0; i < n; ++i) p.records.push_back(OwnerRecord::read(r));
    p.left = r.fixed<32>("presence.left");
    p.right = r.fixed<32>("presence.right");
    for (uint32_t i = 0; i + 1 < n; ++i) {
      Side s = detail::read_side(r, "presence.side");
      p.steps.push_back({s, r.fixed<32>("presence.sibling")});
    }
    return p;
  }

  static PresenceProof decode(std::span<const uint8_t> in) {
    return decode_all(in, "presence proof", [](ByteReader& r) { return read(r); });
  }
};

/// Failed search path from the node where the search fell off (records[0])
/// up to the root; empty for the empty tree.
struct AbsenceOfOwnerProof {
  std::vector<OwnerRecord> records;
  Side missing_side = Side::kLeft;
  Digest other_child{};
  std::vector<PathStep> steps;

  bool operator==(const AbsenceOfOwnerProof&) const = default;
  std::size_t path_length() const { return records.size(); }

  void write(ByteWriter& w) const {
    w.u32(static_cast<uint32_t>(records.size()));
    if (records.empty()) return;
    for (const OwnerRecord& r : records) r.write(w);
    w.u8(static_cast<uint8_t>(missing_side)).raw(other_child);
    detail::write_steps(w, steps);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static AbsenceOfOwnerProof read(ByteReader& r) {
    AbsenceOfOwnerProof p;
    uint32_t n = detail::read_count(r, "absence.count", 6);
    if (n == 0) return p;
    for (uint32_t i = 0; i < n; ++i) p.records.push_back(OwnerRecord::read(r));
    p.missing_side = detail::read_side(r, "absence.missing_side");
    p.other_child = r.fixed<32>("absence.other_child");
    for (uint32_t i = 0; i + 1 < n; ++i) {
      Side s = detail::read_side(r, "absence.side");
      p.steps.push_back({s, r.fixed<32>("absence.sibling")});
    }
    return p;
  }

  static AbsenceOfOwnerProof decode(std::span<const uint8_t> in) {
    return decode_all(in, "absence proof", [](ByteReader& r) { return read(r); });
  }
};

/// Default treap priority: H(domain).
struct HashPriority {
  Digest operator()(std::span<const uint8_t> domain) const { return crypto::sha256(domain); }
};

template <class Priority = HashPriority>
class SearchTree {
 public:
  struct Node {
    OwnerRecord record;
    Digest priority;
    std::shared_ptr<const Node> left, right;
    Digest hash;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit SearchTree(std::size_t key_list_size = kDefaultKeyListSize, Priority prio = {})
      : n_(key_list_size), prio_(std::move(prio)) {
    if (n_ == 0 || n_ > UINT16_MAX) throw Error(Errc::kInvalidArgument, "key list size out of range");
  }

  std::size_t key_list_size() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return root_ == nullptr; }
  const NodePtr& root_node() const { return root_; }

  Digest digest() const { return root_ ? root_->hash : empty_root(); }

  const OwnerRecord* find(std::span<const uint8_t> domain) const {
    const Node* n = root_.get();
    while (n) {
      int c = compare_bytes(domain, n->record.domain);
      if (c == 0) return &n->record;
      n = c < 0 ? n->left.get() : n->right.get();
    }
    return nullptr;
  }

  /// Appends pk to the owner's list (FIFO beyond N) or inserts a new owner.
  SearchTree upsert_key(std::span<const uint8_t> domain, std::span<const uint8_t> pk) const {
    if (domain.empty()) throw Error(Errc::kInvalidArgument, "empty domain");
    if (pk.empty()) throw Error(Errc::kInvalidArgument, "empty key");
    OwnerRecord rec;
    if (const OwnerRecord* cur = find(domain)) {
      rec = *cur;
      const Bytes& last = rec.keys.back();
      if (std::equal(last.begin(), last.end(), pk.begin(), pk.end())) {
        throw Error(Errc::kDuplicateIssuance, "key equals the owner's most recent key");
      }
    } else {
      rec.domain.assign(domain.begin(), domain.end());
    }
    rec.keys.emplace_back(pk.begin(), pk.end());
    if (rec.keys.size() > n_) rec.keys.erase(rec.keys.begin());
    return put_record(std::move(rec));
  }

  /// Inserts or replaces a whole record (snapshot restore).
  SearchTree put_record(OwnerRecord rec) const {
    if (rec.keys.empty() || rec.keys.size() > n_) {
      throw Error(Errc::kInvalidArgument, "record key list size out of range");
    }
    SearchTree out = *this;
    bool existed = find(rec.domain) != nullptr;
    Digest p = prio_(rec.domain);
    out.root_ = insert(root_, std::move(rec), p);
    if (!existed) ++out.count_;
    return out;
  }

  /// In-order (lexicographic) records.
  std::vector<OwnerRecord> records() const {
    std::vector<OwnerRecord> out;
    out.reserve(count_);
    walk(root_.get(), out);
    return out;
  }

  PresenceProof presence_proof(std::span<const uint8_t> domain, std::span<const uint8_t> pk) const {
    std::vector<const Node*> path = search_path(domain);
    if (path.empty() || compare_bytes(domain, path.back()->record.domain) != 0) {
      throw Error(Errc::kOwnerNotFound, "no such owner");
    }
    const Node* target = path.back();
    if (!target->record.has_key(pk)) {
      throw Error(Errc::kKeyNotInRecentList, "key not among the owner's recent keys");
    }
    PresenceProof p;
    p.left = child_hash(target->left);
    p.right = child_hash(target->right);
    fill_path(path, p.records, p.steps);
    return p;
  }

  AbsenceOfOwnerProof absence_proof(std::span<const uint8_t> domain) const {
    std::vector<const Node*> path = search_path(domain);
    AbsenceOfOwnerProof p;
    if (path.empty()) return p;
    const Node* last = path.back();
    int c = compare_bytes(domain, last->record.domain);
    if (c == 0) throw Error(Errc::kOwnerExists, "owner is present");
    p.missing_side = c < 0 ? Side::kLeft : Side::kRight;
    p.other_child = child_hash(c < 0 ? last->right : last->left);
    fill_path(path, p.records, p.steps);
    return p;
  }

  /// Number of nodes on the search path for `domain` (hit or miss).
  std::size_t depth_of(std::span<const uint8_t> domain) const { return search_path(domain).size(); }

 private:
  static Digest child_hash(const NodePtr& n) { return n ? n->hash : kAbsentChild; }

  static NodePtr make(OwnerRecord rec, const Digest& prio, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->hash = node_hash(rec, child_hash(l), child_hash(r));
    n->record = std::move(rec);
    n->priority = prio;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }

  // Max-heap on (priority, domain).
  static bool above(const Node& a, const Node& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return compare_bytes(a.record.domain, b.record.domain) < 0;
  }

  static NodePtr insert(const NodePtr& t, OwnerRecord rec, const Digest& prio) {
    if (!t) return make(std::move(rec), prio, nullptr, nullptr);
    int c = compare_bytes(rec.domain, t->record.domain);
    if (c == 0) return make(std::move(rec), t->priority, t->left, t->right);
    if (c < 0) {
      NodePtr l = insert(t->left, std::move(rec), prio);
      if (above(*l, *t)) {  // rotate right
        NodePtr lowered = make(t->record, t->priority, l->right, t->right);
        return make(l->record, l->priority, l->left, std::move(lowered));
      }
      return make(t->record, t->priority, std::move(l), t->right);
    }
    NodePtr r = insert(t->right, std::move(rec), prio);
    if (above(*r, *t)) {  // rotate left
      NodePtr lowered = make(t->record, t->priority, t->left, r->left);
      return make(r->record, r->priority, std::move(lowered), r->right);
    }
    return make(t->record, t->priority, t->left, std::move(r));
  }

  static void walk(const Node* n, std::vector<OwnerRecord>& out) {
    if (!n) return;
    walk(n->left.get(), out);
    out.push_back(n->record);
    walk(n->right.get(), out);
  }

  // Root first; ends at the match or at the node whose missing child the
  // search would descend into.
  std::vector<const Node*> search_path(std::span<const uint8_t> domain) const {
    std::vector<const Node*> path;
    const Node* n = root_.get();
    while (n) {
      path.push_back(n);
      int c = compare_bytes(domain, n->record.domain);
      if (c == 0) break;
      n = c < 0 ? n->left.get() : n->right.get();
    }
    return path;
  }

  static void fill_path(const std::vector<const Node*>& path, std::vector<OwnerRecord>& records,
                        std::vector<PathStep>& steps) {
    for (std::size_t i = path.size(); i-- > 0;) {
      records.push_back(path[i]->record);
      if (i == 0) break;
      const Node* parent = path[i - 1];
      if (parent->left.get() == path[i]) {
        steps.push_back({Side::kLeft, child_hash(parent->right)});
      } else {
        steps.push_back({Side::kRight, child_hash(parent->left)});
      }
    }
  }

  std::size_t n_;
  Priority prio_;
  NodePtr root_;
  std::size_t count_ = 0;
};

inline bool verify_presence(const Digest& dig_st, std::span<const uint8_t> domain,
                            std::span<const uint8_t> pk, const PresenceProof& proof) {
  if (proof.records.empty()) return false;
  const OwnerRecord& target = proof.records.front();
  if (compare_bytes(domain, target.domain) != 0 || !target.has_key(pk)) return false;
  auto root = detail::fold_path(node_hash(target, proof.left, proof.right), domain, proof.records,
                                proof.steps);
  return root && *root == dig_st;
}

/// Lexicographic neighbours of `domain` among the proof's path records.
struct Bracket {
  const OwnerRecord* predecessor = nullptr;
  const OwnerRecord* successor = nullptr;
};

inline Bracket bracket(std::span<const uint8_t> domain, const AbsenceOfOwnerProof& proof) {
  Bracket b;
  for (const OwnerRecord& r : proof.records) {
    int c = compare_bytes(r.domain, domain);
    if (c < 0 && (!b.predecessor || compare_bytes(r.domain, b.predecessor->domain) > 0)) {
      b.predecessor = &r;
    }
    if (c > 0 && (!b.successor || compare_bytes(r.domain, b.successor->domain) < 0)) {
      b.successor = &r;
    }
  }
  return b;
}

inline bool verify_absence(const Digest& dig_st, std::span<const uint8_t> domain,
                           const AbsenceOfOwnerProof& proof) {
  if (proof.records.empty()) return proof.steps.empty() && dig_st == empty_root();
  const OwnerRecord& last = proof.records.front();
  int c = compare_bytes(domain, last.domain);
  if (c == 0) return false;
  const Side want = c < 0 ? Side::kLeft : Side::kRight;
  if (proof.missing_side != want) return false;
  Digest h = want == Side::kLeft ? node_hash(last, kAbsentChild, proof.other_child)
                                 : node_hash(last, proof.other_child, kAbsentChild);
  auto root = detail::fold_path(h, domain, proof.records, proof.steps);
  if (!root || *root != dig_st) return false;
  // The terminal node is one neighbour; the other, if any, is an ancestor.
  Bracket b = bracket(domain, proof);
  const OwnerRecord* near = want == Side::kLeft ? b.successor : b.predecessor;
  return near == &last;
}

}  // namespace ctlog::search

#endif  // CTLOG_SEARCHTREE_HPP_
