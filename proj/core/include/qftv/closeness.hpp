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

#ifndef QFTV_CLOSENESS_HPP_
#define QFTV_CLOSENESS_HPP_

#include <optional>
#include <vector>

#include "qftv/channel.hpp"

namespace qftv {

// Exact closeness functionals, by full enumeration over the N basis states
// (or N^2 pairs). Channel dimension must be a power of two.

/// E_k <k| C(|k^><k^|) |k>
double s1_measure(const KrausChannel &c);
/// E_k <-k^| C(|k><k|) |-k^>
double s2_measure(const KrausChannel &c);
/// sum_i |Tr(A_i F)/N|^2, checked against the double average
/// E_{k,l} <k| C(|k^><l^|) |l>. Throws ConsistencyError on disagreement.
double s3_measure(const KrausChannel &c);

/// E_k <-k| P(|k^><k^|) |-k>
double t1_measure(const KrausChannel &p);
/// E_k <k^| P(|k><k|) |k^>
double t2_measure(const KrausChannel &p);
/// sum_i |Tr(F^dagger B_i)/N|^2, checked against E_{k,l} <k^| P(|k><l|) |l^>.
double t3_measure(const KrausChannel &p);

/// The two routes of s3/t3, exposed for cross-checking.
double s3_kraus_trace(const KrausChannel &c);
double s3_double_average(const KrausChannel &c);
double t3_kraus_trace(const KrausChannel &p);
double t3_double_average(const KrausChannel &p);

inline constexpr double kDualRouteTol = 1e-9;

/// |Tr(U_C U_P)/N| for unitary channels.
double cp_trace_measure(const KrausChannel &c, const KrausChannel &p);

/// E_l <k+l| C(|l^><l^|) |k+l>, k != 0 mod N.
double offdiag_leakage(const KrausChannel &c, long long k);

/// E_{k,l} <u_k| C(F |u_k><u_l| F^dagger) |u_l>, u_k the columns of `basis`.
double orthobasis_measure(const KrausChannel &c, const CMatrix &basis);

struct PhaseCoherence {
  double mean_sq;  // |E_p x_p|^2
  double cos_avg;  // E_{p,q} cos(theta_p - theta_q)
};

/// Zero-magnitude entries take phase 0.
PhaseCoherence phase_coherence(const std::vector<Complex> &xs);

struct ClosenessReport {
  double s1 = 0, s2 = 0, s3 = 0;
  double t1 = 0, t2 = 0, t3 = 0;
  double eta_s1 = 0, eta_s2 = 0, eta_s3 = 0;
  double eta_t1 = 0, eta_t2 = 0, eta_t3 = 0;
  std::optional<double> cp_trace;
};

/// S-side measures of c, T-side measures of p, and cp_trace when both are
/// unitary.
ClosenessReport closeness_report(const KrausChannel &c, const KrausChannel &p);

/// All six measures of a single channel.
ClosenessReport closeness_report(const KrausChannel &c);

}  // namespace qftv

#endif  // QFTV_CLOSENESS_HPP_
