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

// ct-log: create, serve and drive a log.
//
//   ct-log init   --dir D [--capacity N] [--keylist N] [--snapshot-every N] [--no-sync]
//   ct-log serve  --dir D [--host H] [--port P] [--flush-every-ms MS]
//   ct-log submit --dir D | --url U  --domain X --key PK [--issuer I] [--issued-at T]
//   ct-log revoke --dir D | --url U  --domain X --key PK
//   ct-log flush  --dir D | --url U
//   ct-log sth    --dir D | --url U  [--epoch E]
//
// Results are printed as JSON on stdout. Exit status is 0 on success and 2
// on any error.

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ctlog/http.hpp"
#include "ctlog/log_maintainer.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;
using namespace ctlog;

json sth_json(const SignedTreeHead& s) {
  return {{"epoch", s.epoch},
          {"timestamp", s.timestamp},
          {"tree_size", s.dig_ct.size},
          {"dig_ct", to_hex(s.dig_ct.hash)},
          {"dig_st", to_hex(s.dig_st)},
          {"acc_value", to_hex(crypto::g1_compress(s.acc_value.point))},
          {"signature", to_hex(s.signature)},
          {"encoded", to_hex(s.encode())}};
}

json sct_json(const SignedCertificateTimestamp& s) {
  return {{"cert_hash", to_hex(s.cert_hash)},
          {"timestamp", s.timestamp},
          {"log_id", to_hex(s.log_id)},
          {"signature", to_hex(s.signature)}};
}

// A log reached either through its state directory or over HTTP.
struct Target {
  std::string dir;
  std::string url;

  std::unique_ptr<LogMaintainer> log;
  std::unique_ptr<ProverClient> client;

  ProverClient& open() {
    if (dir.empty() == url.empty()) throw Error(Errc::kInvalidArgument, "give exactly one of --dir or --url");
    if (!dir.empty()) {
      log = LogMaintainer::open_dir(dir);
      client = std::make_unique<LocalProver>(*log);
    } else {
      client = std::make_unique<http::HttpProver>(url);
    }
    return *client;
  }
};

void add_target(CLI::App* cmd, Target& t) {
  cmd->add_option("--dir", t.dir, "log state directory");
  cmd->add_option("--url", t.url, "base URL of a running log, e.g. http://127.0.0.1:8080");
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificate transparency log maintainer"};
  app.require_subcommand(1);

  std::string dir;
  LogConfig cfg;
  bool no_sync = false;
  auto* init = app.add_subcommand("init", "create a new log state directory");
  init->add_option("--dir", dir, "log state directory")->required();
  init->add_option("--capacity", cfg.capacity, "maximum number of simultaneously active certificates")
      ->check(CLI::Range(1u, 1u << 20));
  init->add_option("--keylist", cfg.keylist_n, "keys kept per domain in the search tree")
      ->check(CLI::Range(1u, 1u << 16));
  init->add_option("--snapshot-every", cfg.snapshot_every, "flushes between snapshots (0 disables)");
  init->add_flag("--no-sync", no_sync, "skip fsync (testing only)");

  std::string host = "127.0.0.1";
  int port = 8080;
  uint64_t flush_ms = 0;
  auto* serve = app.add_subcommand("serve", "serve a log directory over HTTP");
  serve->add_option("--dir", dir, "log state directory")->required();
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
  serve->add_option("--flush-every-ms", flush_ms, "flush pending requests on this period (0 = only on request)");

  Target target;
  std::string domain, key, issuer;
  uint64_t issued_at = 0;
  auto* submit = app.add_subcommand("submit", "queue a certificate for insertion");
  add_target(submit, target);
  submit->add_option("--domain", domain)->required();
  submit->add_option("--key", key, "public key (opaque string)")->required();
  submit->add_option("--issuer", issuer);
  submit->add_option("--issued-at", issued_at);

  auto* revoke = app.add_subcommand("revoke", "queue a revocation of a domain's current key");
  add_target(revoke, target);
  revoke->add_option("--domain", domain)->required();
  revoke->add_option("--key", key, "key being revoked")->required();

  auto* flush = app.add_subcommand("flush", "apply pending requests and publish a new STH");
  add_target(flush, target);

  std::optional<uint64_t> epoch;
  auto* sth = app.add_subcommand("sth", "print the latest (or a past) signed tree head");
  add_target(sth, target);
  sth->add_option("--epoch", epoch);

  CLI11_PARSE(app, argc, argv);

  try {
    if (init->parsed()) {
      cfg.sync = !no_sync;
      auto rng = crypto::Drbg::from_os();
      auto log = LogMaintainer::init_dir(dir, cfg, rng);
      print({{"dir", dir},
             {"log_id", to_hex(log->log_id())},
             {"log_key", to_hex(log->log_key().bytes())},
             {"capacity", cfg.capacity},
             {"sth", sth_json(log->sth())}});
    } else if (serve->parsed()) {
      auto log = LogMaintainer::open_dir(dir);
      std::optional<std::chrono::milliseconds> every;
      if (flush_ms > 0) every = std::chrono::milliseconds(flush_ms);
      // Signals are taken synchronously on this thread; the server runs on
      // a worker that inherits the blocked mask.
      sigset_t stop_set;
      sigemptyset(&stop_set);
      sigaddset(&stop_set, SIGINT);
      sigaddset(&stop_set, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &stop_set, nullptr);
      http::Server server(*log, every);
      std::atomic<bool> bind_failed{false};
      std::thread worker([&] {
        if (!server.listen(host, port)) {
          bind_failed = true;
          ::kill(::getpid(), SIGTERM);
        }
      });
      std::fprintf(stderr, "serving %s on %s:%d\n", dir.c_str(), host.c_str(), port);
      int sig = 0;
      sigwait(&stop_set, &sig);
      server.stop();
      worker.join();
      if (bind_failed) {
        std::fprintf(stderr, "ct-log: cannot listen on %s:%d\n", host.c_str(), port);
        return 2;
      }
    } else if (submit->parsed()) {
      Certificate c = Certificate::make(domain, key, issuer, issued_at);
      print(sct_json(target.open().submit(Request::insert(std::move(c)))));
    } else if (revoke->parsed()) {
      print(sct_json(target.open().submit(Request::revoke(to_bytes(domain), to_bytes(key)))));
    } else if (flush->parsed()) {
      print(sth_json(target.open().flush()));
    } else if (sth->parsed()) {
      print(sth_json(target.open().sth(epoch)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ct-log: %s\n", e.what());
    return 2;
  }
  return 0;
}
