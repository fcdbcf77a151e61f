// Copyright 2026 The qftverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFTV_RANDOM_HPP_
#define QFTV_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace qftv {

/// Philox4x64-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Stateless: the output depends only on (counter, key).
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// 64-bit FNV-1a. Used to turn stream names into stable stream ids.
std::uint64_t fnv1a64(std::string_view bytes);

inline std::uint64_t stream_id(std::string_view name) { return fnv1a64(name); }

/// Counter-based generator addressed by (seed, stream, substream).
///
/// Two generators with the same address produce the same sequence; any
/// substream can be materialized without touching the others, so per-shot
/// streams give identical results regardless of execution order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_double();
  /// Uniform on {0, ..., n-1}; rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 4> buffer_{};
  int pos_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace qftv

#endif  // QFTV_RANDOM_HPP_
