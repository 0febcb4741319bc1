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

// Acceptance gate. Runs each criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion; exits non-zero if any fails.

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctlog/acctree.hpp"
#include "ctlog/auditor.hpp"
#include "ctlog/log_maintainer.hpp"
#include "support.hpp"
#include "workload.hpp"

namespace ctlog::acceptance {
namespace {

using accumulator::AccElement;
using crypto::G1;
using testing::ManualClock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few failures without stopping the run.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  Outcome outcome(const std::string& summary) const {
    if (ok()) return {true, summary};
    return {false, summary + " | " + std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  uint64_t failures_ = 0;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 2) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << v;
  return o.str();
}

Bytes B(std::string_view s) { return to_bytes(s); }

LogConfig config(uint32_t capacity) {
  LogConfig c;
  c.capacity = capacity;
  c.sync = false;
  return c;
}

std::unique_ptr<Auditor> auditor_for(ProverClient& client) {
  auto params = std::make_shared<const accumulator::PublicParams>(
      accumulator::PublicParams::decode(client.params()));
  auto rng = crypto::Drbg::from_u64(0xA0D1);
  return std::make_unique<Auditor>(client.log_key(), params, rng);
}

template <class F>
bool refused(F&& f) {
  try {
    f();
  } catch (const Error&) {
    return true;
  }
  return false;
}

// ---- 1-3: constant-size witnesses and two-pairing verification -----------

struct WitnessFixture {
  ManualClock clock;
  std::unique_ptr<LogMaintainer> log;
  std::unique_ptr<LocalProver> client;
  std::unique_ptr<Auditor> aud;
  std::vector<std::pair<std::string, std::string>> active, revoked;

  WitnessFixture() {
    auto rng = crypto::Drbg::from_u64(1001);
    log = LogMaintainer::create(config(512), rng, clock);
    client = std::make_unique<LocalProver>(*log);
    aud = auditor_for(*client);
    sync_sth(*aud, *client);
    for (int i = 0; i < 200; ++i) {
      std::string d = "site" + std::to_string(i) + ".example", pk = "key-" + std::to_string(i);
      log->submit(Request::insert(Certificate::make(d, pk, "CA", 1)));
      active.emplace_back(d, pk);
    }
    log->flush();
    for (int i = 0; i < 50; ++i) {
      auto [d, pk] = active.back();
      active.pop_back();
      log->submit(Request::revoke(B(d), B(pk)));
      revoked.emplace_back(d, pk);
    }
    log->flush();
    sync_sth(*aud, *client);
  }
};

Outcome criterion1(WitnessFixture& fx) {
  Checker c;
  std::mt19937_64 g(1);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t total_bits = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& [d, pk] = fx.active[g() % fx.active.size()];
    ProofEnvelope env = fx.log->prove(Query::currency(B(d), B(pk)));
    Bytes payload = encode_payload(env.payload);
    c.expect(std::holds_alternative<accumulator::MembershipWitness>(env.payload), "wrong payload type");
    c.expect(payload.size() == 32, "payload is " + std::to_string(payload.size()) + " bytes");
    // Exactly one serialized group element.
    c.expect(crypto::g1_decompress(std::span<const uint8_t, 32>(payload.data(), 32)).has_value(),
             "payload is not a group element");
    total_bits = std::max(total_bits, payload.size() * 8);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime " + fmt(secs) + " s");
  return c.outcome("100 Type-5 payloads, each one G1 element of " + std::to_string(total_bits) +
                   " bits, " + fmt(secs, 3) + " s");
}

Outcome criterion2(WitnessFixture& fx) {
  Checker c;
  std::mt19937_64 g(2);
  for (int i = 0; i < 100; ++i) {
    std::string d, pk;
    if (i % 2 == 0) {
      std::tie(d, pk) = fx.revoked[g() % fx.revoked.size()];
    } else {
      d = testing::random_domain(g);
      pk = "never-issued-" + std::to_string(i);
    }
    ProofEnvelope env = fx.log->prove(Query::absence_of_cert(B(d), B(pk)));
    Bytes payload = encode_payload(env.payload);
    c.expect(std::holds_alternative<accumulator::NonMembershipWitness>(env.payload), "wrong payload type");
    c.expect(payload.size() == 64, "payload is " + std::to_string(payload.size()) + " bytes");
    c.expect(crypto::g1_decompress(std::span<const uint8_t, 32>(payload.data(), 32)).has_value(),
             "first half is not a group element");
    c.expect(crypto::Fr::from_be_bytes(std::span<const uint8_t, 32>(payload.data() + 32, 32)).has_value(),
             "second half is not a scalar");
  }
  return c.outcome("100 Type-2 payloads (50 revoked, 50 never issued), each G1 + scalar = 512 bits");
}

Outcome criterion3(WitnessFixture& fx) {
  Checker c;
  std::mt19937_64 g(3);
  std::map<uint64_t, uint64_t> histogram;
  auto measure = [&](const Query& q, const Bytes& proof, bool expect_accept) {
    const uint64_t before = crypto::pairing_count();
    Verdict v = fx.aud->verify(q, proof);
    const uint64_t used = crypto::pairing_count() - before;
    ++histogram[used];
    c.expect(used == 2, std::to_string(used) + " pairings");
    c.expect(static_cast<bool>(v) == expect_accept, "unexpected verdict");
  };
  for (int i = 0; i < 100; ++i) {
    const auto& [d, pk] = fx.active[g() % fx.active.size()];
    Query q = Query::currency(B(d), B(pk));
    Bytes proof = fx.client->prove(q);
    measure(q, proof, true);
    // Rejections cost the same.
    ProofEnvelope env = ProofEnvelope::decode(proof);
    auto& w = std::get<accumulator::MembershipWitness>(env.payload);
    w.w = w.w + G1::generator();
    measure(q, env.encode(), false);
  }
  for (int i = 0; i < 100; ++i) {
    const auto& [d, pk] = fx.revoked[g() % fx.revoked.size()];
    Query q = Query::absence_of_cert(B(d), B(pk));
    Bytes proof = fx.client->prove(q);
    measure(q, proof, true);
    ProofEnvelope env = ProofEnvelope::decode(proof);
    auto& w = std::get<accumulator::NonMembershipWitness>(env.payload);
    w.v = (i % 2) ? crypto::Fr::zero() : w.v + crypto::Fr::one();
    measure(q, env.encode(), false);
  }
  std::string h;
  for (auto [k, n] : histogram) h += std::to_string(n) + "x" + std::to_string(k) + " ";
  return c.outcome("400 Type-2/Type-5 verifications (200 accepting, 200 rejecting); pairings per call: " + h);
}

// ---- 4: logarithmic proof lengths ----------------------------------------

Outcome criterion4() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 g(4);
  std::string summary;
  for (int e = 6; e <= 12; ++e) {
    const uint64_t n = uint64_t{1} << e;
    chron::ChronTree chron;
    search::SearchTree<> st;
    std::vector<Bytes> domains;
    std::set<Bytes> seen;
    while (domains.size() < n) {
      Bytes d = B(testing::random_domain(g, 12));
      if (!seen.insert(d).second) continue;
      Bytes pk = B("pk-" + std::to_string(g()));
      domains.push_back(d);
      st = st.upsert_key(d, pk);
      Certificate cert{d, pk, B("CA"), g(), {}};
      chron.append({cert.encode(), {G1::identity()}, st.digest()});
    }

    // Type 4 against every earlier size.
    const auto bound = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
    std::size_t worst4 = 0;
    for (uint64_t m = 1; m <= n; ++m) {
      chron::ExtensionProof p = chron.extension_proof(m, n);
      worst4 = std::max(worst4, p.hashes.size());
      c.expect(p.hashes.size() <= bound, "Type-4 " + std::to_string(m) + "->" + std::to_string(n));
      c.expect(chron::verify_extension(chron.root_at(m), chron.root(), p), "Type-4 verify");
    }

    // Types 1 and 3 over 1000 random queries each.
    const double log_t = static_cast<double>(e);
    std::vector<double> len1, len3;
    for (int i = 0; i < 1000; ++i) {
      const Bytes& d = domains[g() % domains.size()];
      search::PresenceProof p = st.presence_proof(d, st.find(d)->keys.back());
      c.expect(search::verify_presence(st.digest(), d, st.find(d)->keys.back(), p), "Type-1 verify");
      len1.push_back(static_cast<double>(p.path_length()));
      Bytes absent = B(testing::random_domain(g, 12));
      if (seen.count(absent)) continue;
      search::AbsenceOfOwnerProof a = st.absence_proof(absent);
      c.expect(search::verify_absence(st.digest(), absent, a), "Type-3 verify");
      len3.push_back(static_cast<double>(a.path_length()));
    }
    auto stats = [&](std::vector<double>& v, const char* name) {
      std::sort(v.begin(), v.end());
      double mean = 0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      const double p99 = v[static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(v.size()))) - 1];
      c.expect(mean <= 3 * log_t, std::string(name) + " mean " + fmt(mean) + " at t=2^" + std::to_string(e));
      c.expect(p99 <= 6 * log_t, std::string(name) + " p99 " + fmt(p99) + " at t=2^" + std::to_string(e));
      return fmt(mean, 1) + "/" + fmt(p99, 0);
    };
    std::string s1 = stats(len1, "Type-1"), s3 = stats(len3, "Type-3");
    summary += "2^" + std::to_string(e) + ":T4max=" + std::to_string(worst4) + "<=" + std::to_string(bound) +
               ",T1=" + s1 + ",T3=" + s3 + " ";
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60, "runtime " + fmt(secs) + " s");
  return c.outcome("mean/p99 path lengths " + summary + "(" + fmt(secs, 1) + " s)");
}

// ---- 5: O(m) witness updates ---------------------------------------------

Outcome criterion5() {
  Checker c;
  auto rng = crypto::Drbg::from_u64(5005);
  auto acc = accumulator::setup(128, 512, rng);
  AccTree tree;
  for (int i = 0; i < 500; ++i) {
    const uint64_t before = tree.witness_updates();
    const std::size_t m = tree.size();
    tree.insert(Certificate::make("d" + std::to_string(i) + ".example", "k" + std::to_string(i)), acc);
    c.expect(tree.witness_updates() - before == m, "insert at m=" + std::to_string(m));
  }
  std::mt19937_64 g(5);
  for (int i = 0; i < 100; ++i) {
    auto it = tree.entries().begin();
    std::advance(it, static_cast<long>(g() % tree.size()));
    const Bytes d = it->first;
    const uint64_t before = tree.witness_updates();
    tree.revoke(d, acc);
    c.expect(tree.witness_updates() - before == tree.size(), "revoke at m=" + std::to_string(tree.size()));
  }
  for (const auto& [_, e] : tree.entries()) {
    c.expect(accumulator::verify_membership(e.witness, e.element, acc.value, *acc.params), "stale witness");
  }
  return c.outcome("500 inserts (updates == pre-insert m, up to 499) and 100 revokes (updates == post-revoke m); "
                   "all 400 remaining witnesses verify");
}

// ---- 6: accumulator oracle equivalence -----------------------------------

Outcome criterion6() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  auto rng = crypto::Drbg::from_u64(6006);
  auto acc = accumulator::setup(128, 256, rng);
  AccTree tree;
  std::mt19937_64 g(6);
  std::size_t max_m = 0, witness_checks = 0;
  for (int op = 0; op < 1000; ++op) {
    const bool insert = tree.empty() || (tree.size() < 200 && g() % 100 < 62);
    if (insert) {
      tree.insert(Certificate::make(testing::random_domain(g), "k" + std::to_string(op)), acc);
    } else {
      auto it = tree.entries().begin();
      std::advance(it, static_cast<long>(g() % tree.size()));
      const Bytes d = it->first;
      tree.revoke(d, acc);
    }
    max_m = std::max(max_m, tree.size());
    const std::vector<AccElement> set = tree.active_elements();
    const G1 scratch = testing::oracle_accumulate(set, acc.trapdoor.s);
    c.expect(crypto::g1_compress(scratch) == crypto::g1_compress(acc.value.point), "A at op " + std::to_string(op));
    for (const auto& [_, e] : tree.entries()) {
      const G1 w = G1::generator().mul(testing::to_u256(testing::oracle_exponent(set, acc.trapdoor.s, &e.element)));
      c.expect(crypto::g1_compress(w) == crypto::g1_compress(e.witness.w), "witness at op " + std::to_string(op));
      ++witness_checks;
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 120, "runtime " + fmt(secs) + " s");
  return c.outcome("1000-op trace, max m = " + std::to_string(max_m) + "; A checked after every op, " +
                   std::to_string(witness_checks) + " witness comparisons, all byte-exact (" + fmt(secs, 1) + " s)");
}

// ---- 7: soundness fuzzing -------------------------------------------------

struct FuzzFixture {
  ManualClock clock;
  std::unique_ptr<LogMaintainer> log;
  std::unique_ptr<LocalProver> client;
  std::unique_ptr<Auditor> aud;
  std::vector<std::pair<Bytes, Bytes>> recent, active, revoked;
  std::vector<Bytes> present;
  std::vector<uint64_t> epochs_with_other_a;  // A differs from the head's
  uint64_t head = 0;

  FuzzFixture() {
    auto rng = crypto::Drbg::from_u64(7007);
    log = LogMaintainer::create(config(512), rng, clock);
    client = std::make_unique<LocalProver>(*log);
    aud = auditor_for(*client);
    sync_sth(*aud, *client);
    testing::WorkloadModel model(77);
    for (int i = 0; i < 300; ++i) {
      clock.tick();
      log->submit(model.next());
      if (i % 25 == 24) {
        log->flush();
        sync_sth(*aud, *client);
      }
    }
    // Make sure the head changes A relative to every earlier epoch.
    log->submit(Request::insert(Certificate::make("final.example", "final-key")));
    log->flush();
    sync_sth(*aud, *client);
    head = log->sth().epoch;
    for (const auto& [d, m] : model.domains()) {
      present.push_back(B(d));
      for (const auto& k : log->search_tree().find(B(d))->keys) recent.emplace_back(B(d), k);
      if (m.active) active.emplace_back(B(d), B(*m.active));
      for (const auto& k : m.keys) {
        if (k != m.active) revoked.emplace_back(B(d), B(k));
      }
    }
    active.emplace_back(B("final.example"), B("final-key"));
    for (uint64_t e = 0; e < head; ++e) {
      if (!(log->sth_at(e).acc_value == log->sth().acc_value)) epochs_with_other_a.push_back(e);
    }
  }
};

Outcome criterion7() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  FuzzFixture fx;
  std::mt19937_64 g(7);
  auto pick = [&](const auto& v) -> const auto& { return v[g() % v.size()]; };
  auto absent_domain = [&] {
    for (;;) {
      Bytes d = B(testing::random_domain(g, 1 + g() % 8));
      if (!fx.log->search_tree().find(d)) return d;
    }
  };
  auto random_query = [&](QueryType t) -> Query {
    switch (t) {
      case QueryType::kPresence: {
        const auto& [d, k] = pick(fx.recent);
        return Query::presence(d, k);
      }
      case QueryType::kAbsenceOfCert: {
        if (g() % 2) {
          const auto& [d, k] = pick(fx.revoked);
          return Query::absence_of_cert(d, k);
        }
        return Query::absence_of_cert(absent_domain(), B("k" + std::to_string(g())));
      }
      case QueryType::kAbsenceOfOwner: return Query::absence_of_owner(absent_domain());
      case QueryType::kExtension: {
        uint64_t a = 1 + g() % fx.head, b = a + g() % (fx.head - a + 1);
        if (g() % 10 == 0) a = 0;
        return Query::extension(a, b);
      }
      case QueryType::kCurrency: {
        const auto& [d, k] = pick(fx.active);
        return Query::currency(d, k);
      }
    }
    return {};
  };
  auto flip = [&](Digest& d) { d[g() % 32] ^= static_cast<uint8_t>(1u << (g() % 8)); };
  auto flip_side = [](search::Side& s) { s = s == search::Side::kLeft ? search::Side::kRight : search::Side::kLeft; };

  // Returns false when the mutation does not apply to this proof.
  auto mutate = [&](Query& q, ProofEnvelope& env, Bytes& raw) -> bool {
    const uint64_t kind = g() % 6;
    if (kind == 0) {
      // Byte-level flip inside the payload (header left intact).
      raw = env.encode();
      constexpr std::size_t kHeader = 1 + 1 + 8 + 4;
      if (raw.size() <= kHeader) return false;
      raw[kHeader + g() % (raw.size() - kHeader)] ^= static_cast<uint8_t>(1 + g() % 255);
      return true;
    }
    switch (q.type) {
      case QueryType::kPresence: {
        auto& p = std::get<PresenceProof>(env.payload);
        switch (kind) {
          case 1:
            if (p.steps.empty()) return false;
            flip(p.steps[g() % p.steps.size()].sibling);
            return true;
          case 2:
            if (p.steps.empty()) return false;
            flip_side(p.steps[g() % p.steps.size()].side);
            return true;
          case 3:
            flip(g() % 2 ? p.left : p.right);
            return true;
          case 4: {
            const auto& [d, k] = pick(fx.recent);
            if (d == q.domain) return false;
            q = Query::presence(d, k);
            return true;
          }
          default:
            q.public_key = B("not-a-listed-key");
            return true;
        }
      }
      case QueryType::kAbsenceOfCert: {
        auto& w = std::get<accumulator::NonMembershipWitness>(env.payload);
        switch (kind) {
          case 1: w.w = w.w + G1::generator(); return true;
          case 2: w.v = w.v + crypto::Fr::one(); return true;
          case 3: w.v = crypto::Fr::zero(); return true;
          case 4: {
            const auto& [d, k] = pick(fx.active);
            q = Query::absence_of_cert(d, k);
            return true;
          }
          default:
            if (fx.epochs_with_other_a.empty()) return false;
            env.epoch = pick(fx.epochs_with_other_a);
            return true;
        }
      }
      case QueryType::kAbsenceOfOwner: {
        auto& p = std::get<AbsenceOfOwnerProof>(env.payload);
        if (p.records.empty()) return false;
        switch (kind) {
          case 1:
            if (p.steps.empty()) return false;
            flip(p.steps[g() % p.steps.size()].sibling);
            return true;
          case 2:
            flip(p.other_child);
            return true;
          case 3:
            flip_side(p.missing_side);
            return true;
          case 4:
            q = Query::absence_of_owner(pick(fx.present));
            return true;
          default: {
            Bytes other = absent_domain();
            if (fx.log->search_tree().absence_proof(other) == p) return false;  // same gap
            q = Query::absence_of_owner(other);
            return true;
          }
        }
      }
      case QueryType::kExtension: {
        auto& p = std::get<ExtensionProof>(env.payload);
        switch (kind) {
          case 1:
            if (p.hashes.empty()) return false;
            flip(p.hashes[g() % p.hashes.size()]);
            return true;
          case 2:
            if (p.hashes.empty()) return false;
            p.hashes.erase(p.hashes.begin() + static_cast<long>(g() % p.hashes.size()));
            return true;
          case 3:
            p.hashes.push_back(crypto::sha256(B("extra")));
            return true;
          case 4: {
            // Same proof offered for a different starting head.
            uint64_t other = g() % (q.new_epoch + 1);
            if (fx.log->sth_at(other).dig_ct == fx.log->sth_at(q.old_epoch).dig_ct) return false;
            q.old_epoch = other;
            return true;
          }
          default:
            p.new_size += 1;
            return true;
        }
      }
      case QueryType::kCurrency: {
        auto& w = std::get<accumulator::MembershipWitness>(env.payload);
        switch (kind) {
          case 1: w.w = w.w + G1::generator(); return true;
          case 2: w.w = G1::generator().mul(crypto::U256::from_u64(g())); return true;
          case 3: {
            const auto& [d, k] = pick(fx.active);
            if (d == q.domain) return false;
            q = Query::currency(d, k);
            return true;
          }
          case 4: {
            const auto& [d, k] = pick(fx.revoked);
            q = Query::currency(d, k);
            return true;
          }
          default:
            if (fx.epochs_with_other_a.empty()) return false;
            env.epoch = pick(fx.epochs_with_other_a);
            return true;
        }
      }
    }
    return false;
  };

  std::map<int, std::pair<int, int>> per_type;  // type -> (honest accepted, mutated accepted)
  int honest_ok = 0, mutated_ok = 0, mutated = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto type = static_cast<QueryType>(1 + i % 5);
    Query q = random_query(type);
    Bytes honest = fx.client->prove(q);
    const bool ok = static_cast<bool>(fx.aud->verify(q, honest));
    honest_ok += ok;
    per_type[static_cast<int>(type)].first += ok;
    c.expect(ok, "honest type " + std::to_string(static_cast<int>(type)) + " rejected");
  }
  for (int i = 0; mutated < 10000; ++i) {
    const auto type = static_cast<QueryType>(1 + i % 5);
    Query q = random_query(type);
    ProofEnvelope env = fx.log->prove(q);
    Bytes raw;
    if (!mutate(q, env, raw)) continue;
    if (raw.empty()) raw = env.encode();
    ++mutated;
    const bool ok = static_cast<bool>(fx.aud->verify(q, raw));
    mutated_ok += ok;
    per_type[static_cast<int>(type)].second += ok;
    c.expect(!ok, "mutated type " + std::to_string(static_cast<int>(type)) + " accepted");
  }
  const double secs = seconds_since(t0);
  return c.outcome("honest " + std::to_string(honest_ok) + "/10000 accepted, mutated " +
                   std::to_string(mutated_ok) + "/" + std::to_string(mutated) + " accepted (" +
                   fmt(secs, 1) + " s)");
}

// ---- 8: effect coherence ---------------------------------------------------

Outcome criterion8() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  ManualClock clock;
  auto rng = crypto::Drbg::from_u64(8008);
  auto log = LogMaintainer::create(config(1024), rng, clock);
  LocalProver client(*log);
  auto aud = auditor_for(client);
  sync_sth(*aud, client);
  auto ops = testing::make_workload(88, 500, 16);

  std::map<std::string, testing::DomainModel> model;
  std::mt19937_64 g(8);
  std::size_t flushes = 0, checks = 0;
  auto accepts = [&](const Query& q) {
    try {
      return static_cast<bool>(aud->verify(q, client.prove(q)));
    } catch (const Error&) {
      return false;  // the log refused to produce a proof
    }
  };
  for (const auto& op : ops) {
    clock.tick();
    if (!op.flush) {
      log->submit(op.request);
      const Request& r = op.request;
      if (r.kind == Request::Kind::kInsert) {
        auto& m = model[to_string(r.cert.domain)];
        m.active = to_string(*r.cert.public_key);
        m.keys.push_back(*m.active);
      } else {
        model[to_string(r.domain)].active.reset();
      }
      continue;
    }
    FlushReport rep = log->flush();
    ++flushes;
    c.expect(rep.rejected.empty(), "flush rejected requests");
    c.expect(sync_sth(*aud, client).status == AdvanceStatus::kAccepted, "head did not extend");
    c.expect(log->check_invariants().empty(), log->check_invariants());

    for (const auto& [d, m] : model) {
      const Bytes dom = B(d), last = B(m.keys.back());
      const bool is_active = accepts(Query::currency(dom, last));
      const bool is_revoked = accepts(Query::presence(dom, last)) && accepts(Query::absence_of_cert(dom, last));
      const bool is_unknown = accepts(Query::absence_of_owner(dom));
      c.expect(is_active + is_revoked + is_unknown == 1, d + " proves " +
                   std::to_string(is_active + is_revoked + is_unknown) + " states");
      c.expect(is_active == m.active.has_value(), d + " active state wrong");
      c.expect(!is_unknown, d + " provably unknown");
      ++checks;
    }
    for (int i = 0; i < 5; ++i) {
      std::string d = "never-" + std::to_string(g()) + ".example";
      const Bytes dom = B(d), pk = B("pk");
      const bool is_active = accepts(Query::currency(dom, pk));
      const bool is_revoked = accepts(Query::presence(dom, pk)) && accepts(Query::absence_of_cert(dom, pk));
      const bool is_unknown = accepts(Query::absence_of_owner(dom));
      c.expect(is_unknown && !is_active && !is_revoked, d + " not provably unknown");
      ++checks;
    }
  }
  // Final pass: every non-active key ever issued is provably not current.
  for (const auto& [d, m] : model) {
    for (const auto& k : m.keys) {
      if (k == m.active) continue;
      c.expect(accepts(Query::absence_of_cert(B(d), B(k))), d + " old key not provably revoked");
      c.expect(!accepts(Query::currency(B(d), B(k))), d + " old key provably current");
    }
  }
  const double secs = seconds_since(t0);
  return c.outcome(std::to_string(flushes) + " flushes, " + std::to_string(checks) +
                   " domain-state checks, each domain in exactly one provable state (" + fmt(secs, 1) + " s)");
}

// ---- 9: the ten-certificate scenario ---------------------------------------

Outcome criterion9() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  ManualClock clock;
  auto rng = crypto::Drbg::from_u64(9009);
  auto log = LogMaintainer::create(config(64), rng, clock);
  LocalProver client(*log);
  auto aud = auditor_for(client);
  sync_sth(*aud, client);
  for (const auto& r : testing::ten_event_trace()) log->submit(r);
  log->flush();
  c.expect(sync_sth(*aud, client).status == AdvanceStatus::kAccepted, "STH not accepted");

  c.expect(log->chron_tree().size() == 10, "chron size");
  c.expect(log->search_tree().size() == 6, "search size");
  c.expect(log->acc_tree().size() == 6, "active size");
  std::vector<std::string> active;
  for (const auto& [d, e] : log->acc_tree().entries()) active.push_back(to_string(*e.cert.public_key));
  c.expect(active == std::vector<std::string>{"pk_Alice'", "pk_Bob'", "pk_Charlie", "pk_Eve", "pk_Frank",
                                              "pk_Henry"},
           "active set");

  // digCT = h(h(8-leaf subtree), h(x9, x10)).
  std::vector<Digest> x;
  for (const auto& l : log->chron_tree().leaves()) x.push_back(l.hash());
  auto h = chron::node_hash;
  Digest left = h(h(h(x[0], x[1]), h(x[2], x[3])), h(h(x[4], x[5]), h(x[6], x[7])));
  c.expect(log->sth().dig_ct.hash == h(left, h(x[8], x[9])), "digCT shape");
  chron::ExtensionProof ext = std::get<chron::ExtensionProof>(log->prove(Query::extension(1, 1)).payload);
  c.expect(log->chron_tree().extension_proof(8, 10).hashes == std::vector<Digest>{h(x[8], x[9])},
           "8->10 proof");

  c.expect(static_cast<bool>(aud->verify(Query::presence(B("Bob"), B("pk_Bob")),
                                         client.prove(Query::presence(B("Bob"), B("pk_Bob"))))),
           "Type 1");
  c.expect(static_cast<bool>(aud->verify(Query::absence_of_cert(B("Alice"), B("pk_Alice")),
                                         client.prove(Query::absence_of_cert(B("Alice"), B("pk_Alice"))))),
           "Type 2");
  c.expect(static_cast<bool>(aud->verify(Query::absence_of_owner(B("Dave")),
                                         client.prove(Query::absence_of_owner(B("Dave"))))),
           "Type 3");
  c.expect(static_cast<bool>(aud->verify(Query::extension(0, 1), client.prove(Query::extension(0, 1)))),
           "Type 4");
  c.expect(static_cast<bool>(aud->verify(Query::currency(B("Eve"), B("pk_Eve")),
                                         client.prove(Query::currency(B("Eve"), B("pk_Eve"))))),
           "Type 5");
  c.expect(ext.hashes.empty(), "same-epoch extension not empty");
  const double secs = seconds_since(t0);
  c.expect(secs < 5, "runtime " + fmt(secs) + " s");
  return c.outcome("10 leaves, 6 owners, 6 active; digCT = h(h(x1..x8), h(x9,x10)); Types 1-5 verify (" +
                   fmt(secs, 2) + " s)");
}

// ---- 10: crash recovery ----------------------------------------------------

Outcome criterion10() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto ops = testing::make_workload(1010, 200, 6);
  LogConfig cfg = config(512);
  cfg.sync = true;
  cfg.snapshot_every = 4;
  constexpr uint64_t kBase = 1'750'000'000;

  // Uninterrupted reference.
  ManualClock ref_clock;
  ref_clock.set(kBase);
  auto ref_rng = crypto::Drbg::from_u64(1010);
  auto ref = LogMaintainer::create(cfg, ref_rng, ref_clock);
  auto run_op = [](LogMaintainer& log, ManualClock& clock, const testing::Op& op, std::size_t i) {
    clock.set(kBase + 1 + i);
    if (op.flush) {
      log.flush();
    } else {
      log.submit(op.request);
    }
  };
  for (std::size_t i = 0; i < ops.size(); ++i) run_op(*ref, ref_clock, ops[i], i);

  testing::TempDir dir("acceptance-crash");
  {
    ManualClock clock;
    clock.set(kBase);
    auto rng = crypto::Drbg::from_u64(1010);
    LogMaintainer::init_dir(dir.path(), cfg, rng, clock);
  }

  std::mt19937_64 g(10);
  std::set<std::size_t> kills;
  while (kills.size() < 20) kills.insert(1 + g() % (ops.size() - 1));

  std::size_t pos = 0, torn = 0, killed = 0;
  for (std::size_t kp : kills) {
    const bool tear = g() % 2 == 0;
    std::fflush(nullptr);
    const pid_t pid = ::fork();
    if (pid == 0) {
      ManualClock clock;
      auto log = LogMaintainer::open_dir(dir.path(), clock);
      for (std::size_t i = pos; i < kp; ++i) run_op(*log, clock, ops[i], i);
      if (tear) {
        // Part of a frame for the next record reaches the disk.
        Bytes frame = storage::Journal::frame(B("partial record that never finished"));
        int fd = ::open((dir.path() / "journal.log").c_str(), O_WRONLY | O_APPEND);
        if (fd >= 0) {
          [[maybe_unused]] auto n = ::write(fd, frame.data(), 1 + frame.size() / 2);
          ::fsync(fd);
        }
      }
      ::raise(SIGKILL);
      ::_exit(3);
    }
    int status = 0;
    ::waitpid(pid, &status, 0);
    c.expect(WIFSIGNALED(status) && WTERMSIG(status) == SIGKILL, "child not killed at op " + std::to_string(kp));
    killed += WIFSIGNALED(status);
    torn += tear;
    pos = kp;
  }

  ManualClock clock;
  RecoveryReport rep;
  auto log = LogMaintainer::open_dir(dir.path(), clock, &rep);
  for (std::size_t i = pos; i < ops.size(); ++i) run_op(*log, clock, ops[i], i);

  const auto& got = log->sth_history();
  const auto& want = ref->sth_history();
  c.expect(got.size() == want.size(), "STH count " + std::to_string(got.size()) + " vs " + std::to_string(want.size()));
  std::size_t identical = 0;
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
    const bool same = got[i].encode() == want[i].encode();
    identical += same;
    c.expect(same, "STH " + std::to_string(i) + " differs");
  }
  c.expect(log->check_invariants().empty(), "recovered state incoherent");
  const double secs = seconds_since(t0);
  return c.outcome(std::to_string(killed) + " SIGKILLs (" + std::to_string(torn) + " with torn journal tails) over " +
                   std::to_string(ops.size()) + " ops; " + std::to_string(identical) + "/" +
                   std::to_string(want.size()) + " STHs byte-identical (" + fmt(secs, 1) + " s)");
}

}  // namespace
}  // namespace ctlog::acceptance

int main() {
  using namespace ctlog::acceptance;
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::unique_ptr<WitnessFixture> fx;
  auto fixture = [&]() -> WitnessFixture& {
    if (!fx) fx = std::make_unique<WitnessFixture>();
    return *fx;
  };
  const std::vector<Entry> entries = {
      {1, "constant-size Type-5 proof", [&] { return criterion1(fixture()); }},
      {2, "constant-size Type-2 proof", [&] { return criterion2(fixture()); }},
      {3, "two-pairing verification", [&] { return criterion3(fixture()); }},
      {4, "logarithmic proof lengths", criterion4},
      {5, "O(m) witness update cost", criterion5},
      {6, "accumulator oracle equivalence", criterion6},
      {7, "soundness fuzzing", criterion7},
      {8, "effect coherence", criterion8},
      {9, "ten-certificate scenario", criterion9},
      {10, "crash recovery", criterion10},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", e.id, e.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
