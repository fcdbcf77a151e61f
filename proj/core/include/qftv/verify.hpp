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

#ifndef QFTV_VERIFY_HPP_
#define QFTV_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qftv/channel.hpp"

namespace qftv {

enum class Protocol { ta1, ta2, tp1, tp2, cp };

std::string_view protocol_name(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view name);

/// ceil(ln(2/delta) / (2 eps^2)), two-sided Hoeffding.
std::uint64_t shots_needed(double epsilon, double delta);

struct ShotPlan {
  double epsilon;
  double delta;
  std::uint64_t shots;

  /// Plan with exactly shots_needed(epsilon, delta) shots.
  static ShotPlan calibrated(double epsilon, double delta);
  /// Throws unless shots >= shots_needed(epsilon, delta).
  void validate() const;
};

struct ProtocolResult {
  Protocol protocol;
  double estimate;  // successes / shots_used
  std::uint64_t successes;
  std::uint64_t shots_used;
  std::uint64_t seed;
  double epsilon;
  double delta;
  double threshold;  // 1 - eta + epsilon
  bool accept;       // estimate >= threshold
};

// Each shot s draws from CounterRng(seed, stream_id(<protocol>), s): first k,
// then one uniform for the inverse-CDF measurement. Shots are independent of
// execution order.
//
// `eta` sets the acceptance threshold 1 - eta + epsilon.

ProtocolResult run_ta1(const KrausChannel &c, const ShotPlan &plan, std::uint64_t seed, double eta);
ProtocolResult run_ta2(const KrausChannel &c, const ShotPlan &plan, std::uint64_t seed, double eta);
ProtocolResult run_tp1(const KrausChannel &p, const ShotPlan &plan, std::uint64_t seed, double eta);
ProtocolResult run_tp2(const KrausChannel &p, const ShotPlan &plan, std::uint64_t seed, double eta);
/// Prepare |k>, apply P then C, succeed iff the outcome is k. Both unitary.
ProtocolResult run_cp_test(const KrausChannel &c, const KrausChannel &p, const ShotPlan &plan,
                           std::uint64_t seed, double eta);

/// Single-channel dispatch for ta1/ta2/tp1/tp2.
ProtocolResult run_protocol(Protocol which, const KrausChannel &ch, const ShotPlan &plan,
                            std::uint64_t seed, double eta);

/// Exact per-shot success probability, from the same per-k outcome
/// distributions the sampler uses. `p` is only read for Protocol::cp.
double success_probability(Protocol which, const KrausChannel &ch,
                           const KrausChannel *p = nullptr);

struct S3Decision {
  bool accept;
  /// accept: C in S3(certified_eta). reject: C not in S3(certified_eta).
  double certified_eta;
  std::string claim;
};

/// Accept iff both estimates clear 1 - eta + epsilon. Throws if
/// epsilon >= eta / 2 or either run used a looser epsilon.
S3Decision decide_s3(const ProtocolResult &ta1, const ProtocolResult &ta2, double eta,
                     double epsilon);

}  // namespace qftv

#endif  // QFTV_VERIFY_HPP_
