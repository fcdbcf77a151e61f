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

#ifndef QFTV_NOISE_HPP_
#define QFTV_NOISE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qftv/channel.hpp"
#include "qftv/random.hpp"

namespace qftv {

enum class NoiseKind { exact, diag_after, diag_before, depolarized, perturbed_unitary, mixed_unitary };

/// Which ideal unitary a noisy channel imitates.
enum class Target { inverse_qft, qft };

std::string_view noise_kind_name(NoiseKind kind);
std::optional<NoiseKind> parse_noise_kind(std::string_view name);
std::string_view target_name(Target t);
std::optional<Target> parse_target(std::string_view name);

/// Parameters of one imperfect-QFT channel.
///
///   diag_after / diag_before: `thetas` (length N), or empty to draw them
///       uniformly from [-theta_scale, theta_scale] using `seed`.
///   depolarized: `p` in [0, 1].
///   perturbed_unitary: `eps` in [0, 1]; random Hermitian from `seed`.
///   mixed_unitary: `count` equal-weight perturbed unitaries, each with `eps`.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::exact;
  int n = 2;
  std::vector<double> thetas;
  double theta_scale = 0.0;
  double p = 0.0;
  double eps = 0.0;
  int count = 1;
  std::uint64_t seed = 0;
};

/// Unitary channel of D F_N^{-1}, D = diag(e^{i theta_k}).
KrausChannel make_diag_after(const std::vector<double> &thetas, int n);
/// Unitary channel of F_N^{-1} D.
KrausChannel make_diag_before(const std::vector<double> &thetas, int n);
/// rho -> (1-p) F^{-1} rho F + p I/N.
KrausChannel make_depolarized(double p, int n);
/// exp(i eps H) F^{-1}, H seeded with unit operator norm.
KrausChannel make_perturbed_unitary(double eps, int n, std::uint64_t seed);
/// Equal mixture of `count` perturbed unitaries with independent H_j.
KrausChannel make_mixed_unitary(double eps, int count, int n, std::uint64_t seed);

/// Channel imitating F_N^{-1}.
KrausChannel make_c_channel(const NoiseSpec &spec);
/// Channel imitating F_N: D F, F D, depolarized F, exp(i eps H) F, mixtures.
KrausChannel make_p_channel(const NoiseSpec &spec);
KrausChannel make_channel(const NoiseSpec &spec, Target target);

/// The motivating counterexample: D F^{-1} at N = 4 with thetas (0, pi, 0, pi).
NoiseSpec adversarial_preset();

/// Thetas uniform on [-scale, scale].
std::vector<double> random_thetas(std::size_t count, double scale, std::uint64_t seed);

/// GUE-style draw (G + G^dagger)/2 rescaled to operator norm 1.
CMatrix random_hermitian(std::size_t dim, CounterRng &rng);
/// Haar-like unitary from QR of a complex Gaussian matrix with phase fix.
CMatrix random_unitary(std::size_t dim, CounterRng &rng);
/// Complex Gaussian matrix rescaled to operator norm 1.
CMatrix random_contraction(std::size_t dim, CounterRng &rng);

}  // namespace qftv

#endif  // QFTV_NOISE_HPP_
