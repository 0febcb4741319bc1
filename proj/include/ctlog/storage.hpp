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

// File primitives for the log's state directory: a checksummed append-only
// journal, atomic whole-file replacement and an exclusive directory lock.

#ifndef CTLOG_STORAGE_HPP_
#define CTLOG_STORAGE_HPP_

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ctlog/crypto/hash.hpp"
#include "ctlog/errors.hpp"
#include "ctlog/wire.hpp"

namespace ctlog::storage {

namespace fs = std::filesystem;

[[noreturn]] inline void io_fail(const std::string& what, const fs::path& p) {
  throw Error(Errc::kIo, what + " " + p.string() + ": " + std::strerror(errno));
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

inline void write_all(int fd, std::span<const uint8_t> data, const fs::path& p) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail("write", p);
    }
    data = data.subspan(static_cast<std::size_t>(n));
  }
}

inline Bytes read_file(const fs::path& p) {
  Fd fd(::open(p.c_str(), O_RDONLY | O_CLOEXEC));
  if (fd.get() < 0) io_fail("open", p);
  Bytes out;
  uint8_t buf[1 << 16];
  for (;;) {
    ssize_t n = ::read(fd.get(), buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail("read", p);
    }
    if (n == 0) break;
    out.insert(out.end(), buf, buf + n);
  }
  return out;
}

inline void fsync_dir(const fs::path& dir) {
  Fd fd(::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC));
  if (fd.get() >= 0) ::fsync(fd.get());
}

/// Writes `data` to a temporary sibling and renames it over `p`.
inline void write_file_atomic(const fs::path& p, std::span<const uint8_t> data, bool sync,
                              mode_t mode = 0644) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    Fd fd(::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, mode));
    if (fd.get() < 0) io_fail("open", tmp);
    write_all(fd.get(), data, tmp);
    if (sync && ::fsync(fd.get()) != 0) io_fail("fsync", tmp);
  }
  if (::rename(tmp.c_str(), p.c_str()) != 0) io_fail("rename", tmp);
  if (sync) fsync_dir(p.parent_path());
}

/// Exclusive advisory lock held for the lifetime of the object.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) : path_(dir / "LOCK") {
    fd_ = Fd(::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644));
    if (fd_.get() < 0) io_fail("open", path_);
    if (::flock(fd_.get(), LOCK_EX | LOCK_NB) != 0) {
      throw Error(Errc::kIo, "log directory " + dir.string() + " is in use");
    }
  }

 private:
  fs::path path_;
  Fd fd_;
};

inline constexpr std::size_t kChecksumSize = 4;
inline constexpr uint32_t kMaxRecord = 1u << 26;

/// Append-only file of records framed as
///   u32 length || payload || first 4 bytes of SHA-256(payload).
class Journal {
 public:
  struct Scan {
    std::vector<Bytes> records;
    uint64_t valid_bytes = 0;  // offset just past the last good record
    bool torn = false;         // bytes after valid_bytes were discarded
  };

  static Bytes frame(std::span<const uint8_t> payload) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(payload.size())).raw(payload);
    Digest d = crypto::sha256(payload);
    w.raw(std::span<const uint8_t>(d.data(), kChecksumSize));
    return std::move(w).take();
  }

  /// Parses every intact record; stops at the first malformed one.
  static Scan scan(std::span<const uint8_t> file) {
    Scan s;
    std::size_t off = 0;
    while (off < file.size()) {
      if (file.size() - off < 4) break;
      uint32_t len = (uint32_t{file[off]} << 24) | (uint32_t{file[off + 1]} << 16) |
                     (uint32_t{file[off + 2]} << 8) | file[off + 3];
      if (len > kMaxRecord || file.size() - off - 4 < static_cast<std::size_t>(len) + kChecksumSize) {
        break;
      }
      auto payload = file.subspan(off + 4, len);
      Digest d = crypto::sha256(payload);
      if (!std::equal(d.begin(), d.begin() + kChecksumSize, file.begin() + off + 4 + len)) break;
      s.records.emplace_back(payload.begin(), payload.end());
      off += 4 + len + kChecksumSize;
    }
    s.valid_bytes = off;
    s.torn = off != file.size();
    return s;
  }

  /// Opens for appending, first cutting the file back to `valid_bytes`.
  Journal(const fs::path& p, uint64_t valid_bytes, bool sync) : path_(p), sync_(sync) {
    fd_ = Fd(::open(p.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644));
    if (fd_.get() < 0) io_fail("open", p);
    if (::ftruncate(fd_.get(), static_cast<off_t>(valid_bytes)) != 0) io_fail("truncate", p);
    if (::lseek(fd_.get(), 0, SEEK_END) < 0) io_fail("seek", p);
  }

  void append(std::span<const uint8_t> payload) {
    Bytes framed = frame(payload);
    write_all(fd_.get(), framed, path_);
    if (sync_ && ::fdatasync(fd_.get()) != 0) io_fail("fdatasync", path_);
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  bool sync_;
  Fd fd_;
};

}  // namespace ctlog::storage

#endif  // CTLOG_STORAGE_HPP_
