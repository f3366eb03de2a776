// Copyright 2026 The kspacing Authors.
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

namespace kspacing {

// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter
// and a 64-bit key to 128 pseudo-random bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kMulA = 0xD2511F53;
  constexpr std::uint32_t kMulB = 0xCD9E8D57;
  constexpr std::uint32_t kWeylA = 0x9E3779B9;
  constexpr std::uint32_t kWeylB = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

// SplitMix64 finalizer, used to derive child keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Identifies one reproducible variate stream. The seed becomes the Philox key
// and the stream id the upper half of the counter, so distinct pairs never
// share a counter block.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Key for the index-th child of this stream (e.g. one trial of a
  // sub-experiment). Children of different parents use different Philox keys.
  constexpr StreamKey substream(std::uint64_t index) const {
    return {mix64(seed ^ mix64(stream_id)), index};
  }

  friend constexpr bool operator==(const StreamKey&, const StreamKey&) = default;
};

// Sequential reader over the Philox stream of one StreamKey. Satisfies
// UniformRandomBitGenerator, though the library only uses next_u64 and
// next_uniform so results do not depend on the standard library's
// distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(StreamKey key)
      : key_{static_cast<std::uint32_t>(key.seed),
             static_cast<std::uint32_t>(key.seed >> 32)},
        stream_(key.stream_id) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    if (lane_ == 2) refill();
    return block_[lane_++];
  }

  // Uniform on [0,1) with 53 random bits; every value is a multiple of 2^-53.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Number of 128-bit blocks consumed so far.
  std::uint64_t blocks_used() const { return block_index_; }

 private:
  void refill() {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(block_index_),
                            static_cast<std::uint32_t>(block_index_ >> 32),
                            static_cast<std::uint32_t>(stream_),
                            static_cast<std::uint32_t>(stream_ >> 32)};
    const PhiloxCounter out = philox4x32_10(ctr, key_);
    block_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    block_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_index_;
    lane_ = 0;
  }

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int lane_ = 2;
};

}  // namespace kspacing
