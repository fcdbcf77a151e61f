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

#ifndef QFTV_NUMERICS_HPP_
#define QFTV_NUMERICS_HPP_

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qftv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Absolute tolerances shared by every module.
namespace tol {
inline constexpr double kUnitary = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kEig = 1e-10;
inline constexpr double kNorm = 1e-12;
inline constexpr double kPsd = 1e-9;
inline constexpr double kImag = 1e-9;
}  // namespace tol

/// Thrown when two independent evaluation routes disagree. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Largest absolute entry of `m`. Zero for an empty matrix.
double max_abs(const CMatrix &m);

bool is_hermitian(const CMatrix &m, double tol = tol::kHermitian);
bool is_unitary(const CMatrix &m, double tol = tol::kUnitary);

/// Throws std::invalid_argument naming `what` unless `m` is unitary.
void require_unitary(const CMatrix &m, const std::string &what);

/// Normalized state vector.
class PureState {
 public:
  /// Takes amplitudes that already have unit norm (within tol::kNorm).
  explicit PureState(CVector amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const CVector &v);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector &amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// |psi><psi|
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

/// <a|b>
Complex inner(const PureState &a, const PureState &b);

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
class DensityOp {
 public:
  explicit DensityOp(CMatrix m);

  static DensityOp pure(const PureState &psi);
  static DensityOp maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix &matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  /// Real diagonal with entries in [-tol::kPsd, 0) clamped to zero.
  RVector probabilities() const;

 private:
  CMatrix m_;
};

/// Kronecker product a (x) b.
CMatrix tensor(const CMatrix &a, const CMatrix &b);

enum class Keep { first, second };

/// Traces out one factor of a bipartite state on C^dim_a (x) C^dim_b.
DensityOp partial_trace(const DensityOp &rho, std::size_t dim_a, std::size_t dim_b, Keep keep);

/// Operator-level partial trace; same index convention, no validation of the result.
CMatrix partial_trace(const CMatrix &m, std::size_t dim_a, std::size_t dim_b, Keep keep);

struct HermEig {
  RVector values;   // descending
  CMatrix vectors;  // column j pairs with values(j)
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
HermEig herm_eig(const CMatrix &h);

/// Largest singular value.
double operator_norm(const CMatrix &m);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity_pure(const DensityOp &rho, const PureState &psi);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityOp &rho, const DensityOp &sigma);

/// 1 - sqrt(1 - f_ab) - sqrt(1 - f_bc); lower bound on the end-to-end fidelity
/// of a chain of two fidelity-f hops. Not clamped.
double fidelity_chain_bound(double f_ab, double f_bc);

}  // namespace qftv

#endif  // QFTV_NUMERICS_HPP_
