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

#include "ctlog/searchtree.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "support.hpp"

namespace ctlog::search {
namespace {

using crypto::Digest;

// Fixed ranks so the tree takes a chosen shape.
struct RankPriority {
  std::map<std::string, uint8_t> rank;
  Digest operator()(std::span<const uint8_t> domain) const {
    Digest d{};
    auto it = rank.find(std::string(domain.begin(), domain.end()));
    d[0] = it == rank.end() ? 0 : it->second;
    return d;
  }
};

Bytes B(std::string_view s) { return to_bytes(s); }

// Root = highest (priority, then smaller domain) among a sorted range.
template <class Priority>
Digest oracle_digest(const std::vector<OwnerRecord>& sorted, std::size_t lo, std::size_t hi,
                     const Priority& prio) {
  if (lo == hi) return kAbsentChild;
  std::size_t best = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    if (prio(sorted[i].domain) > prio(sorted[best].domain)) best = i;
  }
  Bytes in{0x02};
  Bytes rec = sorted[best].encode();
  in.insert(in.end(), rec.begin(), rec.end());
  Digest l = oracle_digest(sorted, lo, best, prio), r = oracle_digest(sorted, best + 1, hi, prio);
  in.insert(in.end(), l.begin(), l.end());
  in.insert(in.end(), r.begin(), r.end());
  return crypto::sha256(in);
}

template <class Priority>
Digest oracle_digest(const std::map<Bytes, std::vector<Bytes>>& owners, const Priority& prio) {
  if (owners.empty()) return crypto::sha256(Bytes{0x02});
  std::vector<OwnerRecord> sorted;
  for (const auto& [d, ks] : owners) sorted.push_back({d, ks});
  return oracle_digest(sorted, 0, sorted.size(), prio);
}

class SixOwnerTree : public ::testing::Test {
 protected:
  SixOwnerTree()
      : tree_(5, RankPriority{{{"Eve", 9}, {"Bob", 7}, {"Frank", 6},
                               {"Alice", 3}, {"Charlie", 2}, {"Henry", 1}}}) {
    // Issuance order of the ten-event trace.
    for (auto [d, k] : std::vector<std::pair<std::string, std::string>>{
             {"Alice", "pkA"}, {"Bob", "pkB"}, {"Charlie", "pkC"}, {"Alice", "pkA'"},
             {"Eve", "pkE"}, {"Bob", "pkB'"}, {"Frank", "pkF"}, {"Henry", "pkH"}}) {
      tree_ = tree_.upsert_key(B(d), B(k));
    }
  }
  SearchTree<RankPriority> tree_;
};

TEST_F(SixOwnerTree, ShapeMatchesReference) {
  const auto& root = tree_.root_node();
  ASSERT_TRUE(root);
  EXPECT_EQ(root->record.domain, B("Eve"));
  EXPECT_EQ(root->left->record.domain, B("Bob"));
  EXPECT_EQ(root->right->record.domain, B("Frank"));
  EXPECT_EQ(root->left->left->record.domain, B("Alice"));
  EXPECT_EQ(root->left->right->record.domain, B("Charlie"));
  EXPECT_FALSE(root->right->left);
  EXPECT_EQ(root->right->right->record.domain, B("Henry"));
  EXPECT_EQ(root->left->record.keys, (std::vector<Bytes>{B("pkB"), B("pkB'")}));
  EXPECT_EQ(root->left->left->record.keys, (std::vector<Bytes>{B("pkA"), B("pkA'")}));

  // digST = h(d4, h(d2, h(d1), h(d3)), h(d5, h(d6))) with leaves h(d) over zero children.
  auto h = [](const OwnerRecord& r, const Digest& l, const Digest& rr) { return node_hash(r, l, rr); };
  auto leaf = [&](const auto& n) { return h(n->record, kAbsentChild, kAbsentChild); };
  Digest bob = h(root->left->record, leaf(root->left->left), leaf(root->left->right));
  Digest frank = h(root->right->record, kAbsentChild, leaf(root->right->right));
  EXPECT_EQ(tree_.digest(), h(root->record, bob, frank));
}

TEST_F(SixOwnerTree, PresenceAtRoot) {
  PresenceProof p = tree_.presence_proof(B("Eve"), B("pkE"));
  ASSERT_EQ(p.records.size(), 1u);
  EXPECT_EQ(p.records[0].domain, B("Eve"));
  EXPECT_EQ(p.left, tree_.root_node()->left->hash);
  EXPECT_EQ(p.right, tree_.root_node()->right->hash);
  EXPECT_TRUE(verify_presence(tree_.digest(), B("Eve"), B("pkE"), p));
}

TEST_F(SixOwnerTree, PresenceOfOlderKeyInList) {
  PresenceProof p = tree_.presence_proof(B("Bob"), B("pkB"));
  EXPECT_EQ(p.records.size(), 2u);
  EXPECT_TRUE(verify_presence(tree_.digest(), B("Bob"), B("pkB"), p));
  EXPECT_FALSE(verify_presence(tree_.digest(), B("Bob"), B("pkE"), p));
  EXPECT_FALSE(verify_presence(tree_.digest(), B("Alice"), B("pkA"), p));
}

TEST_F(SixOwnerTree, AbsenceOfDaveBracketsCharlieAndEve) {
  AbsenceOfOwnerProof p = tree_.absence_proof(B("Dave"));
  ASSERT_EQ(p.records.size(), 3u);
  EXPECT_EQ(p.records.front().domain, B("Charlie"));
  EXPECT_EQ(p.missing_side, Side::kRight);
  Bracket b = bracket(B("Dave"), p);
  ASSERT_TRUE(b.predecessor && b.successor);
  EXPECT_EQ(b.predecessor->domain, B("Charlie"));
  EXPECT_EQ(b.successor->domain, B("Eve"));
  EXPECT_TRUE(verify_absence(tree_.digest(), B("Dave"), p));
  EXPECT_FALSE(verify_absence(tree_.digest(), B("Gina"), p));
  EXPECT_FALSE(verify_absence(tree_.digest(), B("Charlie"), p));
}

TEST_F(SixOwnerTree, AbsenceGeneratorsAreExclusive) {
  for (std::string d : {"Alice", "Bob", "Charlie", "Eve", "Frank", "Henry"}) {
    EXPECT_THROW(tree_.absence_proof(B(d)), Error);
    EXPECT_NO_THROW(tree_.presence_proof(B(d), tree_.find(B(d))->keys.back()));
  }
  for (std::string d : {"Aaron", "Dave", "Gina", "Zed", "Bobby"}) {
    EXPECT_NO_THROW(tree_.absence_proof(B(d)));
    try {
      tree_.presence_proof(B(d), B("k"));
      ADD_FAILURE() << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kOwnerNotFound);
    }
  }
}

TEST(SearchTreeTest, EmptyTree) {
  SearchTree<> t;
  EXPECT_EQ(t.digest(), crypto::sha256(Bytes{0x02}));
  AbsenceOfOwnerProof p = t.absence_proof(B("anyone"));
  EXPECT_TRUE(p.records.empty());
  EXPECT_TRUE(verify_absence(t.digest(), B("anyone"), p));
  EXPECT_FALSE(verify_absence(node_hash({B("x"), {B("k")}}, kAbsentChild, kAbsentChild),
                              B("anyone"), p));
}

TEST(SearchTreeTest, SingleNode) {
  SearchTree<> t = SearchTree<>().upsert_key(B("Alice"), B("pkA"));
  Bytes in{0x02};
  Bytes rec = OwnerRecord{B("Alice"), {B("pkA")}}.encode();
  in.insert(in.end(), rec.begin(), rec.end());
  in.resize(in.size() + 64, 0);
  EXPECT_EQ(t.digest(), crypto::sha256(in));
  PresenceProof p = t.presence_proof(B("Alice"), B("pkA"));
  EXPECT_EQ(p.records.size(), 1u);
  EXPECT_EQ(p.left, kAbsentChild);
  EXPECT_EQ(p.right, kAbsentChild);
  EXPECT_TRUE(verify_presence(t.digest(), B("Alice"), B("pkA"), p));
}

TEST(SearchTreeTest, InsertionOrderDoesNotMatter) {
  SearchTree<> ab = SearchTree<>().upsert_key(B("Alice"), B("a")).upsert_key(B("Bob"), B("b"));
  SearchTree<> ba = SearchTree<>().upsert_key(B("Bob"), B("b")).upsert_key(B("Alice"), B("a"));
  EXPECT_EQ(ab.digest(), ba.digest());
}

TEST(SearchTreeTest, KeyListIsFifo) {
  SearchTree<> t(2);
  t = t.upsert_key(B("d"), B("k1")).upsert_key(B("d"), B("k2")).upsert_key(B("d"), B("k3"));
  EXPECT_EQ(t.find(B("d"))->keys, (std::vector<Bytes>{B("k2"), B("k3")}));
  try {
    t.presence_proof(B("d"), B("k1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kKeyNotInRecentList);
  }
}

TEST(SearchTreeTest, RepeatedLastKeyIsDuplicateIssuance) {
  SearchTree<> t = SearchTree<>().upsert_key(B("d"), B("k1"));
  try {
    t.upsert_key(B("d"), B("k1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDuplicateIssuance);
  }
  EXPECT_NO_THROW(t.upsert_key(B("d"), B("k2")).upsert_key(B("d"), B("k1")));
}

TEST(SearchTreeTest, OldVersionsAreUnchanged) {
  SearchTree<> a = SearchTree<>().upsert_key(B("x"), B("1"));
  Digest before = a.digest();
  SearchTree<> b = a.upsert_key(B("y"), B("2"));
  EXPECT_EQ(a.digest(), before);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(b.size(), 2u);
}

class RandomTree : public ::testing::Test {
 protected:
  void SetUp() override {
    for (int i = 0; i < 200; ++i) {
      Bytes d = to_bytes(testing::random_domain(gen_, 6));
      int n = 1 + static_cast<int>(gen_() % 7);
      for (int k = 0; k < n; ++k) {
        Bytes pk = to_bytes("pk" + std::to_string(gen_()));
        tree_ = tree_.upsert_key(d, pk);
        auto& list = owners_[d];
        list.push_back(pk);
        if (list.size() > tree_.key_list_size()) list.erase(list.begin());
      }
    }
  }
  std::mt19937_64 gen_{11};
  SearchTree<> tree_;
  std::map<Bytes, std::vector<Bytes>> owners_;
};

TEST_F(RandomTree, InOrderIsSortedAndMatchesOwnerMap) {
  auto recs = tree_.records();
  ASSERT_EQ(recs.size(), owners_.size());
  EXPECT_EQ(tree_.size(), owners_.size());
  auto it = owners_.begin();
  for (std::size_t i = 0; i < recs.size(); ++i, ++it) {
    if (i) {
      EXPECT_LT(compare_bytes(recs[i - 1].domain, recs[i].domain), 0);
    }
    EXPECT_EQ(recs[i].domain, it->first);
    EXPECT_EQ(recs[i].keys, it->second);
  }
}

TEST_F(RandomTree, DigestMatchesScratchRebuild) {
  EXPECT_EQ(tree_.digest(), oracle_digest(owners_, HashPriority{}));
  std::vector<OwnerRecord> shuffled;
  for (const auto& [d, ks] : owners_) shuffled.push_back({d, ks});
  std::shuffle(shuffled.begin(), shuffled.end(), gen_);
  SearchTree<> rebuilt;
  for (auto& r : shuffled) rebuilt = rebuilt.put_record(r);
  EXPECT_EQ(rebuilt.digest(), tree_.digest());
}

TEST_F(RandomTree, PresentQueriesVerify) {
  std::vector<Bytes> domains;
  for (const auto& [d, _] : owners_) domains.push_back(d);
  for (int i = 0; i < 100; ++i) {
    const Bytes& d = domains[gen_() % domains.size()];
    const auto& keys = owners_[d];
    const Bytes& pk = keys[gen_() % keys.size()];
    PresenceProof p = tree_.presence_proof(d, pk);
    EXPECT_TRUE(verify_presence(tree_.digest(), d, pk, p));
    EXPECT_EQ(PresenceProof::decode(p.encode()), p);
    EXPECT_LE(p.path_length(), tree_.depth_of(d));
  }
}

TEST_F(RandomTree, AbsenceMatchesSortedListOracle) {
  std::vector<Bytes> sorted;
  for (const auto& [d, _] : owners_) sorted.push_back(d);
  int trials = 0;
  for (int i = 0; i < 1000; ++i) {
    // Mix of absent names and present ones.
    Bytes d = (i % 5 == 0) ? sorted[gen_() % sorted.size()]
                           : to_bytes(testing::random_domain(gen_, 1 + gen_() % 6));
    const bool present = std::binary_search(sorted.begin(), sorted.end(), d);
    AbsenceOfOwnerProof p;
    try {
      p = tree_.absence_proof(d);
    } catch (const Error& e) {
      EXPECT_TRUE(present);
      EXPECT_EQ(e.code(), Errc::kOwnerExists);
      continue;
    }
    ++trials;
    EXPECT_FALSE(present);
    EXPECT_TRUE(verify_absence(tree_.digest(), d, p));
    // Bracketing: path neighbours equal the true sorted-list neighbours.
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), d);
    Bracket b = bracket(d, p);
    if (hi == sorted.end()) {
      EXPECT_EQ(b.successor, nullptr);
    } else {
      ASSERT_TRUE(b.successor);
      EXPECT_EQ(b.successor->domain, *hi);
    }
    if (hi == sorted.begin()) {
      EXPECT_EQ(b.predecessor, nullptr);
    } else {
      ASSERT_TRUE(b.predecessor);
      EXPECT_EQ(b.predecessor->domain, *std::prev(hi));
    }
    EXPECT_EQ(AbsenceOfOwnerProof::decode(p.encode()), p);
  }
  EXPECT_GT(trials, 500);
}

TEST_F(RandomTree, SiblingMutationsReject) {
  std::vector<Bytes> domains;
  for (const auto& [d, _] : owners_) domains.push_back(d);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    const Bytes& d = domains[gen_() % domains.size()];
    const Bytes& pk = owners_[d].back();
    PresenceProof p = tree_.presence_proof(d, pk);
    switch (gen_() % 4) {
      case 0:
        if (p.steps.empty()) {
          p.left[gen_() % 32] ^= 1;
        } else {
          p.steps[gen_() % p.steps.size()].sibling[gen_() % 32] ^= 1;
        }
        break;
      case 1:
        p.right[gen_() % 32] ^= static_cast<uint8_t>(1 + gen_() % 255);
        break;
      case 2:
        if (p.steps.empty()) {
          p.left[0] ^= 0x80;
        } else {
          auto& s = p.steps[gen_() % p.steps.size()];
          s.side = s.side == Side::kLeft ? Side::kRight : Side::kLeft;
        }
        break;
      default:
        p.records.back().keys.push_back(B("extra"));
        break;
    }
    accepted += verify_presence(tree_.digest(), d, pk, p);
  }
  EXPECT_EQ(accepted, 0);
}

TEST_F(RandomTree, AbsenceProofWithTruncatedPathRejects) {
  AbsenceOfOwnerProof p = tree_.absence_proof(B("zzzzzz-not-there"));
  ASSERT_GE(p.records.size(), 2u);
  AbsenceOfOwnerProof cut = p;
  cut.records.pop_back();
  cut.steps.pop_back();
  EXPECT_FALSE(verify_absence(tree_.digest(), B("zzzzzz-not-there"), cut));
  AbsenceOfOwnerProof flipped = p;
  flipped.other_child[3] ^= 4;
  EXPECT_FALSE(verify_absence(tree_.digest(), B("zzzzzz-not-there"), flipped));
}

TEST(SearchTreeTest, AbsenceRejectsNonNeighbourTerminal) {
  // A hand-made path whose terminal node is not the closest neighbour.
  RankPriority prio{{{"m", 9}, {"c", 8}, {"f", 7}}};
  SearchTree<RankPriority> t(5, prio);
  for (std::string d : {"m", "c", "f"}) t = t.upsert_key(B(d), B("k"));
  // Honest path for "d" ends at f (c -> right -> f -> left missing).
  AbsenceOfOwnerProof honest = t.absence_proof(B("d"));
  EXPECT_TRUE(verify_absence(t.digest(), B("d"), honest));
  EXPECT_EQ(honest.records.front().domain, B("f"));
  // Same path cannot prove "g" absent: direction at f differs.
  EXPECT_FALSE(verify_absence(t.digest(), B("g"), honest));
}

TEST(SearchTreeTest, MeanPathLengthIsLogarithmic) {
  std::mt19937_64 g(5);
  SearchTree<> t;
  const int n = 1 << 12;
  for (int i = 0; i < n; ++i) t = t.upsert_key(to_bytes(testing::random_domain(g, 12)), B("k"));
  double total = 0;
  for (int i = 0; i < 1000; ++i) total += static_cast<double>(t.depth_of(to_bytes(testing::random_domain(g, 12))));
  EXPECT_LE(total / 1000, 3 * 12.0);
}

TEST(SearchTreeTest, RecordDecodeIsStrict) {
  OwnerRecord r{B("dom"), {B("k1"), B("k2")}};
  EXPECT_EQ(OwnerRecord::decode(r.encode()), r);
  Bytes enc = r.encode();
  enc.pop_back();
  EXPECT_THROW(OwnerRecord::decode(enc), DecodeError);
}

}  // namespace
}  // namespace ctlog::search
