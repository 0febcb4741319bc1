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

// Shared test helpers and GMP-backed oracles.

#ifndef CTLOG_TESTS_SUPPORT_HPP_
#define CTLOG_TESTS_SUPPORT_HPP_

#include <gmpxx.h>
#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ctlog/accumulator.hpp"
#include "ctlog/certificate.hpp"
#include "ctlog/crypto/drbg.hpp"
#include "ctlog/crypto/u256.hpp"

namespace ctlog::testing {

inline mpz_class to_mpz(const crypto::U256& v) {
  mpz_class out = 0;
  for (int i = 3; i >= 0; --i) {
    out <<= 64;
    out += mpz_class(std::to_string(v.limb[static_cast<std::size_t>(i)]));
  }
  return out;
}

inline crypto::U256 to_u256(mpz_class v) {
  crypto::U256 out{};
  const mpz_class mask = (mpz_class(1) << 64) - 1;
  for (std::size_t i = 0; i < 4; ++i) {
    mpz_class limb = v & mask;
    out.limb[i] = std::stoull(limb.get_str());
    v >>= 64;
  }
  return out;
}

inline mpz_class to_mpz(const crypto::Fr& f) { return to_mpz(f.to_u256()); }

inline const mpz_class& scalar_order() {
  static const mpz_class r = to_mpz(crypto::ScalarFieldParams::kModulus);
  return r;
}

inline const mpz_class& base_prime() {
  static const mpz_class p = to_mpz(crypto::BaseFieldParams::kModulus);
  return p;
}

/// prod (x + s) mod r, in GMP.
inline mpz_class oracle_exponent(const std::vector<accumulator::AccElement>& set,
                                 const crypto::Fr& s, const accumulator::AccElement* skip = nullptr) {
  const mpz_class& r = scalar_order();
  mpz_class e = 1;
  const mpz_class sv = to_mpz(s);
  for (const auto& x : set) {
    if (skip && x == *skip) continue;
    e = (e * (to_mpz(x.value) + sv)) % r;
  }
  return e;
}

/// g1^(prod (x + s)) computed from scratch.
inline crypto::G1 oracle_accumulate(const std::vector<accumulator::AccElement>& set,
                                    const crypto::Fr& s) {
  return crypto::G1::generator().mul(to_u256(oracle_exponent(set, s)));
}

inline accumulator::AccElement random_element(std::mt19937_64& g) {
  crypto::U256 v{{g(), g(), g(), g() >> 4}};
  auto f = crypto::Fr::from_canonical(v);
  return {f && !f->is_zero() ? *f : crypto::Fr::one()};
}

inline std::string random_domain(std::mt19937_64& g, std::size_t len = 10) {
  static constexpr char kAlpha[] = "abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(kAlpha[g() % 26]);
  return s + ".example";
}

/// Settable clock for deterministic runs.
struct ManualClock {
  std::shared_ptr<uint64_t> now = std::make_shared<uint64_t>(1'700'000'000);
  uint64_t operator()() const { return *now; }
  void set(uint64_t t) { *now = t; }
  void tick(uint64_t d = 1) { *now += d; }
};

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ctlog-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace ctlog::testing

#endif  // CTLOG_TESTS_SUPPORT_HPP_
