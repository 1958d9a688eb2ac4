// Copyright 2026 The Unravel Authors
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

#include "unravel/rng.hpp"

#include <cmath>

namespace unravel {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        std::uint64_t key0, std::uint64_t key1) {
  std::array<std::uint64_t, 4> c = counter;
  std::uint64_t k0 = key0, k1 = key1;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, c[0], hi0, lo0);
    mulhilo(kMult1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

void RandomStream::refill() {
  buffer_ = philox4x64(counter_, key0_, key1_);
  for (int i = 0; i < 4; ++i) {
    if (++counter_[i] != 0) break;  // 256-bit counter with carry
  }
  pos_ = 0;
}

std::uint64_t RandomStream::raw64() {
  if (pos_ >= 4) refill();
  return buffer_[pos_++];
}

double RandomStream::uniform01() {
  return static_cast<double>(raw64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  double u1 = (static_cast<double>(raw64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double RandomStream::exponential(double rate) {
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  // 1 - u in (0, 1], so log1p(-u) is finite.
  double u = uniform01();
  return -std::log1p(-u) / rate;
}

std::uint64_t fnv1a64(const void* data, std::size_t n_bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n_bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace unravel
