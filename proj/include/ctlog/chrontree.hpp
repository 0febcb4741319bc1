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

// Append-only Merkle tree over log entries in arrival order.
//
// A tree over n > 1 leaves splits at k, the largest power of two below n:
//   MTH(D[0:n]) = H(0x01 || MTH(D[0:k]) || MTH(D[k:n]))
// so ten leaves hash as H(MTH(first 8), H(x9, x10)). Extension proofs are
// the usual consistency proofs for this shape.

#ifndef CTLOG_CHRONTREE_HPP_
#define CTLOG_CHRONTREE_HPP_

#include <bit>
#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/crypto/hash.hpp"
#include "ctlog/wire.hpp"

namespace ctlog::chron {

using accumulator::AccumulationValue;

inline Digest empty_root() { return crypto::sha256({}); }

inline Digest node_hash(const Digest& left, const Digest& right) {
  return crypto::Sha256().update(kPrefixChronNode).update(left).update(right).finish();
}

/// (c, A, digST): the certificate or revocation entry, and the accumulation
/// value and search-tree digest right after its effect.
struct ChronLeaf {
  Bytes cert;
  AccumulationValue acc_value;
  Digest dig_st{};

  bool operator==(const ChronLeaf&) const = default;

  void write(ByteWriter& w) const { w.bytes(cert).g1(acc_value.point).raw(dig_st); }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static ChronLeaf read(ByteReader& r) {
    ChronLeaf l;
    l.cert = r.bytes("leaf.cert");
    l.acc_value.point = r.g1("leaf.acc_value");
    l.dig_st = r.fixed<32>("leaf.dig_st");
    return l;
  }

  static ChronLeaf decode(std::span<const uint8_t> in) {
    return decode_all(in, "chron leaf", [](ByteReader& r) { return read(r); });
  }

  Digest hash() const { return crypto::sha256_prefixed(kPrefixChronLeaf, encode()); }
};

struct TreeDigest {
  Digest hash{};
  uint64_t size = 0;

  bool operator==(const TreeDigest&) const = default;

  /// "<hex>:<size>"
  std::string to_string() const { return to_hex(hash) + ":" + std::to_string(size); }

  static std::optional<TreeDigest> parse(std::string_view s) {
    auto colon = s.find(':');
    if (colon != 64) return std::nullopt;
    auto h = from_hex(s.substr(0, 64));
    if (!h) return std::nullopt;
    TreeDigest d;
    std::copy(h->begin(), h->end(), d.hash.begin());
    auto rest = s.substr(65);
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d.size);
    if (ec != std::errc() || p != rest.data() + rest.size() || rest.empty()) return std::nullopt;
    return d;
  }
};

struct ExtensionProof {
  uint64_t old_size = 0;
  uint64_t new_size = 0;
  std::vector<Digest> hashes;

  bool operator==(const ExtensionProof&) const = default;

  void write(ByteWriter& w) const {
    w.u64(old_size).u64(new_size).u32(static_cast<uint32_t>(hashes.size()));
    for (const Digest& h : hashes) w.raw(h);
  }

  Bytes encode() const {
    ByteWriter w;
    write(w);
    return std::move(w).take();
  }

  static ExtensionProof read(ByteReader& r) {
    ExtensionProof p;
    p.old_size = r.u64("extension.old_size");
    p.new_size = r.u64("extension.new_size");
    std::size_t at = r.offset();
    uint32_t n = r.u32("extension.count");
    if (n > 128 || r.remaining() < static_cast<std::size_t>(n) * 32) {
      ByteReader::fail(at, "extension.count", "implausible hash count");
    }
    p.hashes.reserve(n);
    for (uint32_t i = 0; i < n; ++i) p.hashes.push_back(r.fixed<32>("extension.hashes"));
    return p;
  }

  static ExtensionProof decode(std::span<const uint8_t> in) {
    return decode_all(in, "extension proof", [](ByteReader& r) { return read(r); });
  }
};

/// levels_[k][i] is the root of the complete subtree over leaves
/// [i * 2^k, (i + 1) * 2^k); appends touch O(log n) entries.
class ChronTree {
 public:
  uint64_t size() const { return leaves_.size(); }
  const std::vector<ChronLeaf>& leaves() const { return leaves_; }
  const ChronLeaf& leaf(uint64_t i) const { return leaves_.at(i); }

  TreeDigest append(ChronLeaf leaf) {
    push_hash(leaf.hash());
    leaves_.push_back(std::move(leaf));
    return root();
  }

  TreeDigest root() const { return root_at(size()); }

  /// Digest of the prefix of the given size.
  TreeDigest root_at(uint64_t n) const {
    if (n > size()) throw Error(Errc::kInvalidArgument, "size beyond tree");
    if (n == 0) return {empty_root(), 0};
    return {range_hash(0, n), n};
  }

  ExtensionProof extension_proof(uint64_t old_size, uint64_t new_size) const {
    if (old_size == 0) throw Error(Errc::kInvalidArgument, "old size must be positive");
    if (old_size > new_size || new_size > size()) {
      throw Error(Errc::kInvalidArgument, "sizes out of range");
    }
    ExtensionProof p{old_size, new_size, {}};
    if (old_size < new_size) subproof(old_size, 0, new_size, true, p.hashes);
    return p;
  }

 private:
  void push_hash(const Digest& h) {
    Digest cur = h;
    for (std::size_t k = 0;; ++k) {
      if (levels_.size() == k) levels_.emplace_back();
      levels_[k].push_back(cur);
      if (levels_[k].size() % 2 == 1) break;
      const auto& lv = levels_[k];
      cur = node_hash(lv[lv.size() - 2], lv[lv.size() - 1]);
    }
  }

  Digest range_hash(uint64_t lo, uint64_t hi) const {
    const uint64_t n = hi - lo;
    if (std::has_single_bit(n) && lo % n == 0) {
      const auto k = static_cast<std::size_t>(std::countr_zero(n));
      if (k < levels_.size() && lo / n < levels_[k].size()) return levels_[k][lo / n];
    }
    const uint64_t split = std::bit_floor(n - 1);
    return node_hash(range_hash(lo, lo + split), range_hash(lo + split, hi));
  }

  // SUBPROOF(m, D[lo:hi], b)
  void subproof(uint64_t m, uint64_t lo, uint64_t hi, bool complete,
                std::vector<Digest>& out) const {
    const uint64_t n = hi - lo;
    if (m == n) {
      if (!complete) out.push_back(range_hash(lo, hi));
      return;
    }
    const uint64_t k = std::bit_floor(n - 1);
    if (m <= k) {
      subproof(m, lo, lo + k, complete, out);
      out.push_back(range_hash(lo + k, hi));
    } else {
      subproof(m - k, lo + k, hi, false, out);
      out.push_back(range_hash(lo, lo + k));
    }
  }

  std::vector<ChronLeaf> leaves_;
  std::vector<std::vector<Digest>> levels_;
};

/// Accepts iff `proof` shows that the tree behind `new_root` starts with the
/// tree behind `old_root`. Any tree extends the empty one.
inline bool verify_extension(const TreeDigest& old_root, const TreeDigest& new_root,
                             const ExtensionProof& proof) {
  if (proof.old_size != old_root.size || proof.new_size != new_root.size) return false;
  if (old_root.size > new_root.size) return false;
  if (old_root.size == 0) return proof.hashes.empty() && old_root.hash == empty_root();
  if (old_root.size == new_root.size) {
    return proof.hashes.empty() && old_root.hash == new_root.hash;
  }

  std::vector<Digest> path;
  if (std::has_single_bit(old_root.size)) path.push_back(old_root.hash);
  path.insert(path.end(), proof.hashes.begin(), proof.hashes.end());
  if (path.empty()) return false;

  uint64_t fn = old_root.size - 1;
  uint64_t sn = new_root.size - 1;
  while (fn & 1) {
    fn >>= 1;
    sn >>= 1;
  }
  Digest fr = path[0];
  Digest sr = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Digest& c = path[i];
    if (sn == 0) return false;
    if ((fn & 1) || fn == sn) {
      fr = node_hash(c, fr);
      sr = node_hash(c, sr);
      if (!(fn & 1)) {
        while (!(fn & 1) && fn != 0) {
          fn >>= 1;
          sn >>= 1;
        }
      }
    } else {
      sr = node_hash(sr, c);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return fr == old_root.hash && sr == new_root.hash && sn == 0;
}

}  // namespace ctlog::chron

#endif  // CTLOG_CHRONTREE_HPP_
