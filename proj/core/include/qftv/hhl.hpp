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

#ifndef QFTV_HHL_HPP_
#define QFTV_HHL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qftv/channel.hpp"

namespace qftv {

enum class FKind { identity, truncated_inverse, one, zero };

std::string_view f_kind_name(FKind k);
std::optional<FKind> parse_f_kind(std::string_view name);

/// Built-in rotation functions, all bounded by 1.
///
///   identity            f(x) = x
///   truncated_inverse   f(x) = min(1, cutoff / (N x)) for x >= 1/N, else 0
///   one, zero           constants
struct ScalarFunction {
  FKind kind = FKind::identity;
  double cutoff = 1.0;

  double operator()(double x, std::size_t big_n) const;
};

/// Registers are ordered (phase N) (x) (system d) (x) (ancilla 2); basis
/// index = a * 2d + s * 2 + ancilla.
class HHLInstance {
 public:
  /// `a` Hermitian with eigenvalues in [0, 1). In the perfect case every
  /// eigenvalue must be an integer multiple of 1/N to within 1e-9.
  HHLInstance(CMatrix a, PureState b, ScalarFunction f, int n, bool perfect_case);

  /// A = V diag(spectrum) V^dagger with V seeded (identity when seed is empty).
  static HHLInstance from_spectrum(const std::vector<double> &spectrum, PureState b,
                                   ScalarFunction f, int n, bool perfect_case,
                                   std::optional<std::uint64_t> seed);

  int n() const { return n_; }
  std::size_t big_n() const { return std::size_t{1} << n_; }
  std::size_t d() const { return static_cast<std::size_t>(a_.rows()); }
  std::size_t total_dim() const { return big_n() * d() * 2; }
  const CMatrix &a() const { return a_; }
  const PureState &b() const { return b_; }
  const ScalarFunction &f() const { return f_; }
  bool perfect_case() const { return perfect_; }
  /// Eigenvalues (descending) and eigenvectors of A.
  const RVector &eigenvalues() const { return values_; }
  const CMatrix &eigenvectors() const { return vectors_; }

 private:
  CMatrix a_;
  PureState b_;
  ScalarFunction f_;
  int n_;
  bool perfect_;
  RVector values_;
  CMatrix vectors_;
};

/// Exact |phi_{7,l}> with F_N^{-1} at step 3 and F_N at step 5.
PureState run_ideal(const HHLInstance &inst, long long l);

/// rho_{7,l} with c at step 3 and p at step 5; every other step exact.
DensityOp run_noisy(const HHLInstance &inst, long long l, const KrausChannel &c,
                    const KrausChannel &p);

enum class EnsembleMode { channel_pair, unitary_inverse, s1_t2_cp };

std::string_view ensemble_mode_name(EnsembleMode m);

struct EnsembleResult {
  EnsembleMode mode;
  /// "fidelity" (checked mean >= bound) or "trace_distance_sq" (mean <= bound).
  std::string measured;
  std::vector<double> per_shift;
  double mean = 0.0;
  double bound = 0.0;
  std::string bound_formula;
  bool pass = false;
  std::vector<std::pair<std::string, double>> etas;
  std::optional<int> k_param;
  // Intermediate inequality checked in s1_t2_cp mode.
  std::optional<double> lemma_lhs;
  std::optional<double> lemma_rhs;
  std::optional<bool> lemma_pass;
};

inline constexpr double kBoundSlack = 1e-9;

/// E_l F(rho_{7,l}, |phi_{7,l}>). Perfect case: 1 - sqrt(eta1) - sqrt(eta2).
/// General case (needs k_param >= 2): the four-term bound with K.
EnsembleResult ensemble_fidelity(const HHLInstance &inst, const KrausChannel &c,
                                 const KrausChannel &p, std::optional<int> k_param = std::nullopt);

struct ExpectationCheck {
  double mean_abs_error;
  double bound;
  bool pass;
};

/// E_l |Tr(M rho_{7,l}) - <phi_{7,l}|M|phi_{7,l}>| against
/// 2 (eta1^{1/4} + eta2^{1/4}). Perfect case only; ||M|| <= 1.
ExpectationCheck expectation_error(const HHLInstance &inst, const KrausChannel &c,
                                   const KrausChannel &p, const CMatrix &m);

/// C at step 3, C^{-1} at step 5; reports E_l T^2.
EnsembleResult ensemble_unitary_inverse(const HHLInstance &inst, const KrausChannel &c,
                                        std::optional<int> k_param = std::nullopt);

/// C at step 3, P at step 5, both unitary; eta1 = eta_s1(C), eta2 = eta_t2(P),
/// eta3 = 1 - cp_trace. Reports E_l T^2 and the intermediate inequality.
EnsembleResult ensemble_cp_mode(const HHLInstance &inst, const KrausChannel &c,
                                const KrausChannel &p, std::optional<int> k_param = std::nullopt);

/// |E_k <k^|P|k><k|C|k^>| for unitary C, P.
double cp_lemma_lhs(const KrausChannel &c, const KrausChannel &p);

struct GoodSet {
  double sigma;
  std::size_t p_floor;               // floor(sigma N) mod N
  std::vector<std::size_t> members;  // G = {p-K+1, ..., p+K} mod N, deduplicated
  std::vector<Complex> alpha;        // alpha_g = <g^|psi>, all g in [N]
  double tail_mass;                  // sum over g outside G
  double tail_bound;                 // 2/(K-1)
  double norm_sq;                    // sum_g |alpha_g|^2
  bool within_bound;
};

struct GoodSetDecomposition {
  int k_param;
  std::vector<GoodSet> sets;  // one per eigenvalue of A
};

GoodSet good_set(double sigma, int n, int k_param);
GoodSetDecomposition good_set_decompose(const HHLInstance &inst, int k_param);

struct LemmaErrorCheck {
  double sum_sq;  // sum_i |Err_i|^2
  double eta;     // eta_s3 of the channel
  double delta;   // mass of alpha outside G
  double bound;   // 2 eta |G|^2 + 18 delta
  bool pass;
};

/// Err_i = E_l <phi_l|A_i|psi_l> - (1 - delta) E_l <l|A_i|l^>, with
/// psi_l = sum_g alpha_g |(g+l)^> and phi_l = sum_g alpha_g |g+l>.
LemmaErrorCheck lemma_error_terms(const KrausChannel &c, const GoodSet &gs);

}  // namespace qftv

#endif  // QFTV_HHL_HPP_
