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

#ifndef QFTV_CHANNEL_HPP_
#define QFTV_CHANNEL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qftv/numerics.hpp"

namespace qftv {

inline constexpr int kMaxQubits = 10;

/// An n-qubit register of dimension N = 2^n with index arithmetic mod N.
class PhaseRegister {
 public:
  explicit PhaseRegister(int n);

  int qubits() const { return n_; }
  std::size_t dim() const { return dim_; }
  /// k mod N, in [0, N). Accepts negative k.
  std::size_t wrap(long long k) const;

 private:
  int n_;
  std::size_t dim_;
};

/// Completely positive trace-preserving map rho -> sum_i A_i rho A_i^dagger.
///
/// Construction checks sum_i A_i^dagger A_i = I within tol::kUnitary. A Kraus
/// family longer than dim^2 is re-extracted from the Choi matrix, so a stored
/// channel never holds more than dim^2 operators.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> kraus_ops);

  std::size_t dim() const { return static_cast<std::size_t>(ops_.front().rows()); }
  std::size_t kraus_count() const { return ops_.size(); }
  const std::vector<CMatrix> &kraus_ops() const { return ops_; }

  /// A single Kraus operator satisfying A^dagger A = I is unitary.
  bool is_unitary() const { return ops_.size() == 1; }
  /// The underlying unitary; throws std::invalid_argument for r > 1.
  const CMatrix &unitary() const;

 private:
  std::vector<CMatrix> ops_;
};

/// F_N with entries omega_N^{jk} / sqrt(N).
CMatrix qft_matrix(int n);

/// |k^> = F_N |k>, k taken mod N.
PureState fourier_basis_state(long long k, int n);

/// U_k = (x)_{l=1..n} diag(1, e^{2 pi i k / 2^l}); U_k |+>^n = |k^>.
CMatrix phase_unitary(long long k, int n);

/// H^{(x) n}.
CMatrix hadamard_all(int n);

/// Permutation |k> -> |-k mod N>.
CMatrix reflection_matrix(int n);

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const CMatrix &u);
KrausChannel reflection_channel(int n);

/// Channel of U^dagger for a unitary channel U.
KrausChannel inverse_channel(const KrausChannel &c);

DensityOp apply(const KrausChannel &c, const DensityOp &rho);

/// Linear extension of the channel to an arbitrary dim x dim operator.
CMatrix apply_to_operator(const KrausChannel &c, const CMatrix &x);

/// outer o inner, i.e. rho -> outer(inner(rho)).
KrausChannel compose(const KrausChannel &outer, const KrausChannel &inner);

/// p-fold self-composition, 1 <= p <= 3.
KrausChannel channel_power(const KrausChannel &c, int p);

/// c (x) id_right_dim, Kraus operators A_i (x) I.
KrausChannel lift_left(const KrausChannel &c, std::size_t right_dim);

/// (c (x) id)(x) for x acting on C^N (x) C^right_dim, without materializing
/// the lifted Kraus family.
CMatrix apply_lifted(const KrausChannel &c, const CMatrix &x, std::size_t right_dim);

/// N^2 x N^2 matrix S with vec(C(X)) = S vec(X), vec row-major.
CMatrix superoperator(const KrausChannel &c);

/// J = sum_i vec(A_i) vec(A_i)^dagger, vec row-major.
CMatrix choi_matrix(const KrausChannel &c);

/// Kraus family re-extracted from a Choi matrix, keeping eigenvalues above a
/// numerical-noise cutoff.
KrausChannel from_choi(const CMatrix &choi, std::size_t dim);

/// Action equality on all dim^2 matrix units |a><b|.
bool channels_equal(const KrausChannel &a, const KrausChannel &b, double tol = 1e-9);

}  // namespace qftv

#endif  // QFTV_CHANNEL_HPP_
