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

// HTTP transport. Bodies are the canonical binary encodings:
//
//   POST /v1/submit     Request        -> SCT
//   POST /v1/flush                     -> STH
//   GET  /v1/sth[?epoch=E]             -> STH
//   POST /v1/prove      Query          -> ProofEnvelope
//   GET  /v1/params                    -> params.ctac
//   GET  /v1/log-key                   -> 32-byte Ed25519 key
//   GET  /v1/leaves?from=F&count=C     -> u32 count || leaves
//
// Log errors come back as 409 with body "<code>: <message>", decode
// errors as 400.

#ifndef CTLOG_HTTP_HPP_
#define CTLOG_HTTP_HPP_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "httplib.h"

#include "ctlog/log_maintainer.hpp"
#include "ctlog/prover_client.hpp"

namespace ctlog::http {

inline constexpr const char* kBinary = "application/octet-stream";
inline constexpr uint64_t kMaxLeafPage = 1024;

inline std::string as_body(std::span<const uint8_t> b) { return std::string(b.begin(), b.end()); }
inline std::span<const uint8_t> as_span(const std::string& s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes encode_leaves(const std::vector<chron::ChronLeaf>& leaves) {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(leaves.size()));
  for (const auto& l : leaves) l.write(w);
  return std::move(w).take();
}

inline std::vector<chron::ChronLeaf> decode_leaves(std::span<const uint8_t> in) {
  return decode_all(in, "leaves", [](ByteReader& r) {
    uint32_t n = r.u32("leaves.count");
    if (n > kMaxLeafPage) ByteReader::fail(0, "leaves.count", "page too large");
    std::vector<chron::ChronLeaf> out;
    for (uint32_t i = 0; i < n; ++i) out.push_back(chron::ChronLeaf::read(r));
    return out;
  });
}

/// Serves one LogMaintainer; optionally flushes on a timer.
class Server {
 public:
  explicit Server(LogMaintainer& log, std::optional<std::chrono::milliseconds> flush_every = {})
      : log_(log), flush_every_(flush_every) {
    routes();
  }

  ~Server() { stop(); }

  /// Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port) {
    start_timer();
    return svr_.listen(host, port);
  }

  /// Binds to an ephemeral port and serves on a background thread.
  int start_background(const std::string& host = "127.0.0.1") {
    int port = svr_.bind_to_any_port(host);
    if (port < 0) throw Error(Errc::kTransport, "cannot bind");
    start_timer();
    thread_ = std::thread([this] { svr_.listen_after_bind(); });
    svr_.wait_until_ready();
    return port;
  }

  void stop() {
    {
      std::lock_guard lk(timer_mu_);
      stopping_ = true;
    }
    timer_cv_.notify_all();
    if (timer_.joinable()) timer_.join();
    svr_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  template <class F>
  static void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const DecodeError& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    } catch (const Error& e) {
      res.status = 409;
      res.set_content(e.what(), "text/plain");
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(e.what(), "text/plain");
    }
  }

  static void reply(httplib::Response& res, std::span<const uint8_t> body) {
    res.set_content(as_body(body), kBinary);
  }

  static uint64_t param_u64(const httplib::Request& req, const char* name, uint64_t dflt) {
    if (!req.has_param(name)) return dflt;
    const std::string v = req.get_param_value(name);
    uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
      throw DecodeError(0, name, "not an unsigned integer");
    }
    return out;
  }

  void routes() {
    svr_.Post("/v1/submit", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { reply(res, log_.submit(Request::decode(as_span(req.body))).encode()); });
    });
    svr_.Post("/v1/flush", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { reply(res, log_.flush().sth.encode()); });
    });
    svr_.Get("/v1/sth", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        SignedTreeHead s = req.has_param("epoch") ? log_.sth_at(param_u64(req, "epoch", 0)) : log_.sth();
        reply(res, s.encode());
      });
    });
    svr_.Post("/v1/prove", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { reply(res, log_.prove(Query::decode(as_span(req.body))).encode()); });
    });
    svr_.Get("/v1/params", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { reply(res, log_.params()->encode()); });
    });
    svr_.Get("/v1/log-key", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { reply(res, log_.log_key().bytes()); });
    });
    svr_.Get("/v1/leaves", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        uint64_t from = param_u64(req, "from", 0);
        uint64_t count = std::min(param_u64(req, "count", 256), kMaxLeafPage);
        reply(res, encode_leaves(log_.leaves(from, count)));
      });
    });
  }

  void start_timer() {
    if (!flush_every_ || timer_.joinable()) return;
    timer_ = std::thread([this] {
      std::unique_lock lk(timer_mu_);
      while (!timer_cv_.wait_for(lk, *flush_every_, [this] { return stopping_; })) {
        lk.unlock();
        try {
          if (log_.pending_count() > 0) log_.flush();
        } catch (const std::exception&) {
          // Keep serving; the next tick retries.
        }
        lk.lock();
      }
    });
  }

  LogMaintainer& log_;
  std::optional<std::chrono::milliseconds> flush_every_;
  httplib::Server svr_;
  std::thread thread_;
  std::thread timer_;
  std::mutex timer_mu_;
  std::condition_variable timer_cv_;
  bool stopping_ = false;
};

/// ProverClient over HTTP.
class HttpProver : public ProverClient {
 public:
  explicit HttpProver(const std::string& base_url) : cli_(base_url) {
    cli_.set_connection_timeout(5);
    cli_.set_read_timeout(60);
  }

  SignedCertificateTimestamp submit(const Request& req) override {
    return SignedCertificateTimestamp::decode(post("/v1/submit", req.encode()));
  }
  SignedTreeHead flush() override { return SignedTreeHead::decode(post("/v1/flush", {})); }
  SignedTreeHead sth(std::optional<uint64_t> epoch) override {
    std::string path = "/v1/sth";
    if (epoch) path += "?epoch=" + std::to_string(*epoch);
    return SignedTreeHead::decode(get(path));
  }
  Bytes prove(const Query& q) override { return post("/v1/prove", q.encode()); }
  Bytes params() override { return get("/v1/params"); }
  crypto::PublicKeyBytes log_key() override {
    Bytes b = get("/v1/log-key");
    if (b.size() != 32) throw Error(Errc::kTransport, "log key has wrong length");
    crypto::PublicKeyBytes out;
    std::copy(b.begin(), b.end(), out.begin());
    return out;
  }
  std::vector<chron::ChronLeaf> leaves(uint64_t from, uint64_t count) override {
    return decode_leaves(
        get("/v1/leaves?from=" + std::to_string(from) + "&count=" + std::to_string(count)));
  }

 private:
  static Bytes unwrap(const httplib::Result& r) {
    if (!r) throw Error(Errc::kTransport, "request failed: " + httplib::to_string(r.error()));
    if (r->status == 200) return Bytes(r->body.begin(), r->body.end());
    if (r->status == 409) {
      auto colon = r->body.find(':');
      auto code = errc_from_name(r->body.substr(0, colon));
      std::string msg = colon == std::string::npos ? r->body : r->body.substr(colon + 2);
      if (code) throw Error(*code, msg);
    }
    if (r->status == 400) throw Error(Errc::kMalformed, r->body);
    throw Error(Errc::kTransport, "HTTP " + std::to_string(r->status) + ": " + r->body);
  }

  Bytes get(const std::string& path) { return unwrap(cli_.Get(path)); }
  Bytes post(const std::string& path, std::span<const uint8_t> body) {
    return unwrap(cli_.Post(path, as_body(body), kBinary));
  }

  httplib::Client cli_;
};

}  // namespace ctlog::http

#endif  // CTLOG_HTTP_HPP_
