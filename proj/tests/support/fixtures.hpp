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

#ifndef QFTV_TESTS_FIXTURES_HPP_
#define QFTV_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <vector>

#include "qftv/channel.hpp"
#include "qftv/noise.hpp"
#include "qftv/numerics.hpp"
#include "qftv/random.hpp"

namespace qftv::testing {

inline CMatrix gaussian(std::size_t rows, std::size_t cols, CounterRng &rng) {
    CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

inline PureState random_pure(std::size_t dim, CounterRng &rng) {
    return PureState::normalized(gaussian(dim, 1, rng).col(0));
}

/// Ginibre draw G G^dagger / Tr, full rank.
inline DensityOp random_density(std::size_t dim, CounterRng &rng) {
    CMatrix g = gaussian(dim, dim, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOp(0.5 * (rho + rho.adjoint()));
}

inline std::vector<CMatrix> kraus_of(const KrausChannel &c) { return c.kraus_ops(); }

/// A mixed bag of channels of every family at qubit count n.
inline std::vector<KrausChannel> channel_zoo(int n, std::uint64_t seed, Target target) {
    std::vector<KrausChannel> out;
    std::size_t big = std::size_t{1} << n;
    for (int j = 0; j < 3; ++j) {
        std::uint64_t s = seed * 97 + static_cast<std::uint64_t>(j);
        double strength = 0.15 * (j + 1);
        NoiseSpec spec;
        spec.n = n;
        spec.seed = s;
        spec.kind = NoiseKind::diag_after;
        spec.thetas = random_thetas(big, strength * 3.0, s);
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::diag_before;
        spec.thetas = random_thetas(big, strength * 3.0, s + 1);
        out.push_back(make_channel(spec, target));
        spec.thetas.clear();
        spec.kind = NoiseKind::depolarized;
        spec.p = strength;
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::perturbed_unitary;
        spec.eps = strength;
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::mixed_unitary;
        spec.count = 3;
        out.push_back(make_channel(spec, target));
    }
    return out;
}

}  // namespace qftv::testing

#endif  // QFTV_TESTS_FIXTURES_HPP_
