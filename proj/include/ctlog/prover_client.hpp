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

#ifndef CTLOG_PROVER_CLIENT_HPP_
#define CTLOG_PROVER_CLIENT_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ctlog/chrontree.hpp"
#include "ctlog/crypto/signature.hpp"
#include "ctlog/log_maintainer.hpp"
#include "ctlog/log_types.hpp"

namespace ctlog {

/// What clients and auditors need from a log. Proofs come back as encoded
/// envelopes so that verifiers always decode what they check. Failures
/// surface as Error; transport problems use Errc::kTransport.
class ProverClient {
 public:
  virtual ~ProverClient() = default;

  virtual SignedCertificateTimestamp submit(const Request& req) = 0;
  virtual SignedTreeHead flush() = 0;
  virtual SignedTreeHead sth(std::optional<uint64_t> epoch = std::nullopt) = 0;
  virtual Bytes prove(const Query& q) = 0;
  virtual Bytes params() = 0;
  virtual crypto::PublicKeyBytes log_key() = 0;
  virtual std::vector<chron::ChronLeaf> leaves(uint64_t from, uint64_t count) = 0;
};

/// In-process access to a LogMaintainer.
class LocalProver : public ProverClient {
 public:
  explicit LocalProver(LogMaintainer& log) : log_(log) {}

  SignedCertificateTimestamp submit(const Request& req) override { return log_.submit(req); }
  SignedTreeHead flush() override { return log_.flush().sth; }
  SignedTreeHead sth(std::optional<uint64_t> epoch) override {
    return epoch ? log_.sth_at(*epoch) : log_.sth();
  }
  Bytes prove(const Query& q) override { return log_.prove(q).encode(); }
  Bytes params() override { return log_.params()->encode(); }
  crypto::PublicKeyBytes log_key() override { return log_.log_key().bytes(); }
  std::vector<chron::ChronLeaf> leaves(uint64_t from, uint64_t count) override {
    return log_.leaves(from, count);
  }

 private:
  LogMaintainer& log_;
};

}  // namespace ctlog

#endif  // CTLOG_PROVER_CLIENT_HPP_
