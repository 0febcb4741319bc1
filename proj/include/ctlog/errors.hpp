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

#ifndef CTLOG_ERRORS_HPP_
#define CTLOG_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctlog {

enum class Errc {
  kInvalidArgument,
  kCapacityExceeded,
  kTrapdoorCollision,
  kDuplicateElement,
  kNotAMember,
  kIsAMember,
  kOwnerNotFound,
  kOwnerExists,
  kKeyNotInRecentList,
  kDuplicateIssuance,
  kDomainAlreadyActive,
  kNothingToRevoke,
  kNotCurrent,
  kUnknownEpoch,
  kMalformed,
  kIo,
  kCorruptJournal,
  kUnsupported,
  kTransport,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::kInvalidArgument: return "invalid-argument";
    case Errc::kCapacityExceeded: return "capacity-exceeded";
    case Errc::kTrapdoorCollision: return "trapdoor-collision";
    case Errc::kDuplicateElement: return "duplicate-element";
    case Errc::kNotAMember: return "not-a-member";
    case Errc::kIsAMember: return "is-a-member";
    case Errc::kOwnerNotFound: return "owner-not-found";
    case Errc::kOwnerExists: return "owner-exists";
    case Errc::kKeyNotInRecentList: return "key-not-in-recent-list";
    case Errc::kDuplicateIssuance: return "duplicate-issuance";
    case Errc::kDomainAlreadyActive: return "domain-already-active";
    case Errc::kNothingToRevoke: return "nothing-to-revoke";
    case Errc::kNotCurrent: return "not-current";
    case Errc::kUnknownEpoch: return "unknown-epoch";
    case Errc::kMalformed: return "malformed";
    case Errc::kIo: return "io";
    case Errc::kCorruptJournal: return "corrupt-journal";
    case Errc::kUnsupported: return "unsupported";
    case Errc::kTransport: return "transport";
  }
  return "unknown";
}

inline std::optional<Errc> errc_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Errc::kTransport); ++i) {
    auto c = static_cast<Errc>(i);
    if (errc_name(c) == name) return c;
  }
  return std::nullopt;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Decode failure, with the byte offset and field of the first malformation.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t offset, std::string field, const std::string& why)
      : Error(Errc::kMalformed, field + " at offset " + std::to_string(offset) + ": " + why),
        offset_(offset),
        field_(std::move(field)) {}

  std::size_t offset() const { return offset_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t offset_;
  std::string field_;
};

}  // namespace ctlog

#endif  // CTLOG_ERRORS_HPP_
