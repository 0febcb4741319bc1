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

// ct-audit: check a remote log against locally held trust.
//
//   ct-audit --url U [--trust F] sth [--follow SECONDS]
//   ct-audit --url U [--trust F] verify --type T [--domain X] [--key PK] [--from E --to E]
//   ct-audit --url U [--trust F] crl-check FILE
//   ct-audit --url U [--trust F] monitor --domain X [--from I]
//
// The trust file keeps the log key and every accepted STH; the public
// parameters are cached next to it (F.params) and pinned on first use.
// Exit status: 0 ok, 1 rejected proof / flagged CRL entry / log
// misbehaviour, 2 usage or transport error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ctlog/auditor.hpp"
#include "ctlog/http.hpp"
#include "ctlog/storage.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;
using namespace ctlog;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFlagged = 1;
constexpr int kError = 2;

std::string status_name(AdvanceStatus s) {
  switch (s) {
    case AdvanceStatus::kAccepted: return "accepted";
    case AdvanceStatus::kBadSignature: return "bad-signature";
    case AdvanceStatus::kStale: return "unchanged";
    case AdvanceStatus::kMisbehavior: return "misbehavior";
  }
  return "unknown";
}

json advance_json(const AdvanceResult& r, const Auditor& aud) {
  json j = {{"status", status_name(r.status)}, {"epoch", aud.latest().epoch},
            {"tree_size", aud.latest().dig_ct.size}, {"dig_ct", to_hex(aud.latest().dig_ct.hash)}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.evidence) {
    j["evidence"] = {{"kind", r.evidence->kind == MisbehaviorEvidence::Kind::kFork ? "fork" : "bad-extension"},
                     {"encoded", to_hex(r.evidence->encode())}};
  }
  return j;
}

// Loads trust from disk, or establishes it on first contact.
Auditor load_or_bootstrap(const fs::path& trust, ProverClient& client, bool& fresh) {
  const fs::path params_file = trust.string() + ".params";
  if (fs::exists(trust)) {
    auto params = std::make_shared<const accumulator::PublicParams>(
        accumulator::PublicParams::decode(storage::read_file(params_file)));
    Auditor aud = Auditor::decode_trust(storage::read_file(trust), params);
    if (aud.log_key().bytes() != client.log_key()) {
      throw Error(Errc::kInvalidArgument, "log key differs from the trusted key");
    }
    fresh = false;
    return aud;
  }
  const Bytes raw = client.params();
  auto params = std::make_shared<const accumulator::PublicParams>(accumulator::PublicParams::decode(raw));
  auto rng = crypto::Drbg::from_os();
  Auditor aud(client.log_key(), params, rng);
  storage::write_file_atomic(params_file, raw, true);
  fresh = true;
  return aud;
}

void save(const fs::path& trust, const Auditor& aud) { storage::write_file_atomic(trust, aud.encode_trust(), true); }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::optional<QueryType> parse_type(const std::string& t) {
  static const std::map<std::string, QueryType> kNames = {
      {"presence", QueryType::kPresence},         {"1", QueryType::kPresence},
      {"absent-cert", QueryType::kAbsenceOfCert}, {"2", QueryType::kAbsenceOfCert},
      {"absent-owner", QueryType::kAbsenceOfOwner}, {"3", QueryType::kAbsenceOfOwner},
      {"extension", QueryType::kExtension},       {"4", QueryType::kExtension},
      {"current", QueryType::kCurrency},          {"5", QueryType::kCurrency},
  };
  auto it = kNames.find(t);
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

// One "<domain> <key>" pair per line; blank lines and '#' comments skipped.
std::vector<Certificate> read_crl(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot read " + p.string());
  std::vector<Certificate> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string d, k;
    if (!(ls >> d) || d[0] == '#') continue;
    if (!(ls >> k)) throw Error(Errc::kMalformed, "CRL line without a key: " + line);
    out.push_back(Certificate::make(d, k));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificate transparency auditor"};
  app.require_subcommand(1);
  std::string url;
  std::string trust = "ct-trust.bin";
  app.add_option("--url", url, "base URL of the log")->required();
  app.add_option("--trust", trust, "trust file (created on first use)");

  double follow = 0;
  auto* sth = app.add_subcommand("sth", "fetch the latest STH and check it extends the trusted one");
  sth->add_option("--follow", follow, "keep polling every SECONDS");

  std::string type, domain, key;
  uint64_t from_epoch = 0, to_epoch = 0;
  auto* verify = app.add_subcommand("verify", "request and verify a proof");
  verify->add_option("--type", type, "presence|absent-cert|absent-owner|extension|current (or 1-5)")->required();
  verify->add_option("--domain", domain);
  verify->add_option("--key", key);
  verify->add_option("--from", from_epoch, "old epoch (extension)");
  verify->add_option("--to", to_epoch, "new epoch (extension; default latest)");

  std::string crl_file;
  auto* crl = app.add_subcommand("crl-check", "confirm every CRL entry is provably not current");
  crl->add_option("file", crl_file, "lines of '<domain> <key>'")->required();

  uint64_t from_leaf = 0;
  auto* mon = app.add_subcommand("monitor", "list log entries for a domain");
  mon->add_option("--domain", domain)->required();
  mon->add_option("--from", from_leaf, "first leaf index (0 also checks the whole tree)");

  CLI11_PARSE(app, argc, argv);

  try {
    http::HttpProver client(url);
    bool fresh = false;
    Auditor aud = load_or_bootstrap(trust, client, fresh);

    auto sync = [&]() -> AdvanceResult {
      AdvanceResult r = sync_sth(aud, client);
      if (r.status == AdvanceStatus::kAccepted) save(trust, aud);
      return r;
    };
    // Every command first brings the trusted head up to date.
    // A stale answer just means the log has not published anything newer.
    auto bad = [](const AdvanceResult& r) {
      return r.status == AdvanceStatus::kMisbehavior || r.status == AdvanceStatus::kBadSignature;
    };
    AdvanceResult first = sync();
    if (bad(first)) {
      json j = advance_json(first, aud);
      j["bootstrap"] = fresh;
      print(j);
      return kFlagged;
    }

    if (sth->parsed()) {
      json j = advance_json(first, aud);
      j["bootstrap"] = fresh;
      print(j);
      while (follow > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(follow));
        AdvanceResult r = sync();
        print(advance_json(r, aud));
        if (bad(r)) return kFlagged;
      }
      return kOk;
    }

    if (verify->parsed()) {
      auto t = parse_type(type);
      if (!t) throw Error(Errc::kInvalidArgument, "unknown proof type " + type);
      Query q;
      switch (*t) {
        case QueryType::kPresence: q = Query::presence(to_bytes(domain), to_bytes(key)); break;
        case QueryType::kAbsenceOfCert: q = Query::absence_of_cert(to_bytes(domain), to_bytes(key)); break;
        case QueryType::kAbsenceOfOwner: q = Query::absence_of_owner(to_bytes(domain)); break;
        case QueryType::kExtension:
          q = Query::extension(from_epoch, to_epoch ? to_epoch : aud.latest().epoch);
          break;
        case QueryType::kCurrency: q = Query::currency(to_bytes(domain), to_bytes(key)); break;
      }
      // An honest log refuses to prove a false statement; that is a "no",
      // not an error.
      Verdict v;
      std::string refusal;
      try {
        v = aud.verify(q, client.prove(q));
      } catch (const Error& e) {
        if (e.code() == Errc::kTransport) throw;
        refusal = e.what();
      }
      json j = {{"accepted", v.accepted}, {"type", static_cast<int>(*t)}, {"epoch", aud.latest().epoch}};
      if (!refusal.empty()) {
        j["reason"] = "log-refused";
        j["detail"] = refusal;
      } else if (!v) {
        j["reason"] = std::string(reason_name(v.reason));
      }
      if (!v.detail.empty()) j["detail"] = v.detail;
      print(j);
      return v ? kOk : kFlagged;
    }

    if (crl->parsed()) {
      std::vector<Certificate> entries = read_crl(crl_file);
      CrlReport rep = check_crl(aud, entries, client);
      json items = json::array();
      bool transport = false;
      for (const CrlItem& i : rep.items) {
        const char* s = i.status == CrlItem::Status::kProvenAbsent ? "proven-absent"
                        : i.status == CrlItem::Status::kTransportError ? "transport-error"
                                                                       : "not-proven";
        transport |= i.status == CrlItem::Status::kTransportError;
        json it = {{"domain", to_string(i.domain)}, {"key", to_string(i.public_key)}, {"status", s}};
        if (!i.detail.empty()) it["detail"] = i.detail;
        items.push_back(std::move(it));
      }
      print({{"epoch", aud.latest().epoch}, {"checked", rep.items.size()}, {"flagged", rep.flagged()},
             {"items", items}});
      if (transport) return kError;
      return rep.flagged() ? kFlagged : kOk;
    }

    if (mon->parsed()) {
      MonitorReport rep = monitor(aud, client, to_bytes(domain), from_leaf);
      json hits = json::array();
      for (const MonitorHit& h : rep.hits) {
        json e = {{"index", h.index}, {"issuer", to_string(h.cert.issuer)}, {"issued_at", h.cert.issued_at}};
        e["key"] = h.cert.public_key ? json(to_string(*h.cert.public_key)) : json(nullptr);
        e["revocation"] = h.cert.is_revocation();
        hits.push_back(std::move(e));
      }
      print({{"domain", domain}, {"scanned", rep.scanned}, {"root_verified", rep.root_verified},
             {"hits", hits}});
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "ct-audit: %s\n", e.what());
    // A log whose leaves disagree with its own signed root is misbehaving.
    return e.code() == Errc::kMalformed ? kFlagged : kError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ct-audit: %s\n", e.what());
    return kError;
  }
  return kOk;
}
