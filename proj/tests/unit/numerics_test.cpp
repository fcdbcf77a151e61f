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

#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qftv/numerics.hpp"

namespace qftv {
namespace {

using testing::random_density;
using testing::random_pure;

CMatrix pauli_x() {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

TEST(Tensor, IdentityAndDiagonal) {
    EXPECT_LT(max_abs(tensor(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)), 1e-15);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    CMatrix expect = CMatrix::Zero(4, 4);
    expect.diagonal() << 1, 1, 2, 2;
    EXPECT_LT(max_abs(tensor(d, CMatrix::Identity(2, 2)) - expect), 1e-15);
}

TEST(Tensor, XXFlipsBothBits) {
    CVector v = CVector::Zero(4);
    v(0) = 1.0;
    CVector out = tensor(pauli_x(), pauli_x()) * v;
    CVector expect = CVector::Zero(4);
    expect(3) = 1.0;
    EXPECT_LT((out - expect).norm(), 1e-15);
}

TEST(PartialTrace, ProductAndBell) {
    DensityOp zz = DensityOp::pure(PureState::basis(4, 0));
    DensityOp a = partial_trace(zz, 2, 2, Keep::first);
    EXPECT_NEAR(std::abs(a(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 1)), 0.0, 1e-15);

    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    DensityOp r = partial_trace(DensityOp::pure(PureState(bell)), 2, 2, Keep::first);
    EXPECT_LT(max_abs(r.matrix() - 0.5 * CMatrix::Identity(2, 2)), 1e-15);
    DensityOp s = partial_trace(DensityOp::pure(PureState(bell)), 2, 2, Keep::second);
    EXPECT_LT(max_abs(s.matrix() - 0.5 * CMatrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, TraceAndTensorRoute) {
    CounterRng rng(11, stream_id("test.partial_trace"));
    for (int trial = 0; trial < 20; ++trial) {
        DensityOp ra = random_density(3, rng);
        DensityOp rb = random_density(4, rng);
        DensityOp joint(tensor(ra.matrix(), rb.matrix()));
        EXPECT_LT(max_abs(partial_trace(joint, 3, 4, Keep::first).matrix() - ra.matrix()), tol::kEig);
        EXPECT_LT(max_abs(partial_trace(joint, 3, 4, Keep::second).matrix() - rb.matrix()), tol::kEig);
        DensityOp rho = random_density(6, rng);
        EXPECT_NEAR(partial_trace(rho, 2, 3, Keep::second).matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(PartialTrace, DimensionMismatchThrows) {
    EXPECT_THROW(partial_trace(DensityOp::maximally_mixed(4), 3, 2, Keep::first), std::invalid_argument);
}

TEST(HermEig, DiagonalAndPauliX) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    HermEig e = herm_eig(d);
    EXPECT_NEAR(e.values(0), 3.0, 1e-14);
    EXPECT_NEAR(e.values(1), 1.0, 1e-14);

    HermEig x = herm_eig(pauli_x());
    EXPECT_NEAR(x.values(0), 1.0, 1e-14);
    EXPECT_NEAR(x.values(1), -1.0, 1e-14);
    // columns are (1,1)/sqrt2 and (1,-1)/sqrt2 up to phase
    double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(x.vectors(0, 0)), r, 1e-14);
    EXPECT_NEAR(std::abs(x.vectors(1, 0)), r, 1e-14);
    EXPECT_NEAR(std::abs(x.vectors(0, 0) - x.vectors(1, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(x.vectors(0, 1) + x.vectors(1, 1)), 0.0, 1e-14);
}

TEST(HermEig, RandomReconstructionUpTo256) {
    CounterRng rng(5, stream_id("test.herm_eig"));
    for (std::size_t dim : {2u, 7u, 32u, 128u, 256u}) {
        CMatrix g = testing::gaussian(dim, dim, rng);
        CMatrix h = 0.5 * (g + g.adjoint());
        HermEig e = herm_eig(h);
        CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        double scale = std::max(1.0, operator_norm(h));
        EXPECT_LT(max_abs(back - h) / scale, tol::kEig) << "dim " << dim;
        EXPECT_LT(max_abs(e.vectors.adjoint() * e.vectors - CMatrix::Identity(h.rows(), h.cols())), tol::kUnitary);
        for (Eigen::Index i = 1; i < e.values.size(); ++i) {
            EXPECT_GE(e.values(i - 1), e.values(i));
        }
    }
}

TEST(HermEig, RejectsNonHermitian) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(herm_eig(m), std::invalid_argument);
}

TEST(States, ValidationRejectsBadInput) {
    CVector v = CVector::Ones(2);
    EXPECT_THROW(PureState{v}, std::invalid_argument);
    CMatrix m = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityOp{m}, std::invalid_argument);  // trace 2
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityOp{neg}, std::invalid_argument);
}

TEST(Fidelity, SpotValues) {
    DensityOp zero = DensityOp::pure(PureState::basis(2, 0));
    EXPECT_DOUBLE_EQ(fidelity_pure(zero, PureState::basis(2, 0)), 1.0);
    EXPECT_DOUBLE_EQ(fidelity_pure(zero, PureState::basis(2, 1)), 0.0);
    EXPECT_NEAR(fidelity_pure(DensityOp::maximally_mixed(2), PureState::basis(2, 0)), 0.5, 1e-15);
    EXPECT_THROW(fidelity_pure(zero, PureState::basis(3, 0)), std::invalid_argument);
}

TEST(TraceDistance, SpotValues) {
    DensityOp zero = DensityOp::pure(PureState::basis(2, 0));
    DensityOp one = DensityOp::pure(PureState::basis(2, 1));
    EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(DensityOp::maximally_mixed(2), zero), 0.5, 1e-14);
    EXPECT_THROW(trace_distance(zero, DensityOp::maximally_mixed(3)), std::invalid_argument);
}

TEST(ChainBound, SpotValues) {
    EXPECT_DOUBLE_EQ(fidelity_chain_bound(1.0, 1.0), 1.0);
    EXPECT_NEAR(fidelity_chain_bound(0.99, 0.99), 0.8, 1e-12);
    EXPECT_NEAR(fidelity_chain_bound(0.0, 1.0), 0.0, 1e-15);
    EXPECT_THROW(fidelity_chain_bound(1.2, 0.5), std::invalid_argument);
    EXPECT_THROW(fidelity_chain_bound(0.5, -0.1), std::invalid_argument);
}

TEST(Properties, FuchsVanDeGraafPureSecondArgument) {
    CounterRng rng(21, stream_id("test.fvdg"));
    int checked = 0;
    for (std::size_t dim = 2; dim <= 8; ++dim) {
        for (int trial = 0; trial < 30; ++trial) {
            DensityOp rho = random_density(dim, rng);
            PureState psi = random_pure(dim, rng);
            double f = fidelity_pure(rho, psi);
            double t = trace_distance(rho, DensityOp::pure(psi));
            EXPECT_LE(1.0 - std::sqrt(f), t + 1e-9);
            EXPECT_LE(1.0 - f, t + 1e-9);
            EXPECT_LE(t, std::sqrt(1.0 - f) + 1e-9);
            ++checked;
        }
    }
    EXPECT_GE(checked, 200);
}

TEST(Properties, ChainBoundIsSound) {
    CounterRng rng(22, stream_id("test.chain"));
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t dim = 2 + trial % 5;
        PureState psi = random_pure(dim, rng);
        CVector noise = testing::gaussian(dim, 1, rng).col(0);
        PureState phi = PureState::normalized(psi.amplitudes() + 0.2 * noise);
        DensityOp junk = random_density(dim, rng);
        double w = 0.05 * (trial % 4);
        DensityOp rho((1.0 - w) * phi.projector() + w * junk.matrix());
        double f_ab = fidelity_pure(rho, phi);
        double f_bc = std::norm(inner(phi, psi));
        EXPECT_GE(fidelity_pure(rho, psi) + 1e-9, fidelity_chain_bound(f_ab, std::min(1.0, f_bc)));
    }
}

TEST(OperatorNorm, Unitary) {
    EXPECT_NEAR(operator_norm(pauli_x()), 1.0, 1e-14);
    EXPECT_NEAR(operator_norm(3.0 * CMatrix::Identity(3, 3)), 3.0, 1e-14);
}

}  // namespace
}  // namespace qftv
