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

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace unravel {

/// One block of the Philox4x64-10 counter-based generator.
/// Exposed for the frozen-vector unit tests.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        std::uint64_t key0, std::uint64_t key1);

/// Counter-based random stream keyed by (seed, stream_id).
///
/// Streams with distinct keys are statistically independent, and a given key
/// reproduces the same variate sequence bit-for-bit on every run and under
/// any worker count. Trajectory workers each own the stream whose id equals
/// their trajectory index.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : key0_(seed), key1_(stream_id) {}

  std::uint64_t raw64();

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01();

  /// Standard normal variate (Box-Muller; the spare is cached).
  double gaussian();

  /// Exponential variate with the given rate (mean 1/rate).
  /// rate == 0 returns +infinity (the no-event sentinel).
  double exponential(double rate);

  std::uint64_t seed() const { return key0_; }
  std::uint64_t stream_id() const { return key1_; }

 private:
  void refill();

  std::uint64_t key0_, key1_;
  std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
  std::array<std::uint64_t, 4> buffer_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// FNV-1a over raw bytes; used for opaque identifiers of cached operators.
std::uint64_t fnv1a64(const void* data, std::size_t n_bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace unravel
