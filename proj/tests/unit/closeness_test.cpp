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
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qftv/closeness.hpp"
#include "qftv/noise.hpp"

namespace qftv {
namespace {

constexpr double kPi = std::numbers::pi;

KrausChannel finv(int n) { return unitary_channel(qft_matrix(n).adjoint()); }
KrausChannel fwd(int n) { return unitary_channel(qft_matrix(n)); }

// Population: every family, strengths spread over [0, 1].
std::vector<KrausChannel> population(int n, Target target, int per_family) {
    std::vector<KrausChannel> out;
    std::size_t big = std::size_t{1} << n;
    for (int j = 0; j < per_family; ++j) {
        double s = (j + 1.0) / per_family;
        std::uint64_t seed = 5000 + 31 * static_cast<std::uint64_t>(j) + static_cast<std::uint64_t>(n);
        NoiseSpec spec;
        spec.n = n;
        spec.seed = seed;
        spec.kind = NoiseKind::diag_after;
        spec.thetas = random_thetas(big, s * kPi, seed);
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::diag_before;
        out.push_back(make_channel(spec, target));
        spec.thetas.clear();
        spec.kind = NoiseKind::depolarized;
        spec.p = s;
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::perturbed_unitary;
        spec.eps = s;
        out.push_back(make_channel(spec, target));
        spec.kind = NoiseKind::mixed_unitary;
        spec.count = 1 + j % 4;
        out.push_back(make_channel(spec, target));
    }
    return out;
}

TEST(Measures, AgreeWithBruteForceOracle) {
    for (int n : {1, 2, 3}) {
        for (const auto &c : testing::channel_zoo(n, 40 + static_cast<std::uint64_t>(n), Target::inverse_qft)) {
            const auto &k = c.kraus_ops();
            EXPECT_NEAR(s1_measure(c), oracle::s1(k, n), 1e-12);
            EXPECT_NEAR(s2_measure(c), oracle::s2(k, n), 1e-12);
            EXPECT_NEAR(s3_measure(c), oracle::s3(k, n), 1e-12);
            EXPECT_NEAR(t1_measure(c), oracle::t1(k, n), 1e-12);
            EXPECT_NEAR(t2_measure(c), oracle::t2(k, n), 1e-12);
            EXPECT_NEAR(t3_measure(c), oracle::t3(k, n), 1e-12);
        }
    }
}

TEST(Measures, ExactChannelsScoreOne) {
    for (int n : {1, 2, 3, 4}) {
        EXPECT_NEAR(s1_measure(finv(n)), 1.0, 1e-12);
        EXPECT_NEAR(s2_measure(finv(n)), 1.0, 1e-12);
        EXPECT_NEAR(s3_measure(finv(n)), 1.0, 1e-12);
        EXPECT_NEAR(t1_measure(fwd(n)), 1.0, 1e-12);
        EXPECT_NEAR(t2_measure(fwd(n)), 1.0, 1e-12);
        EXPECT_NEAR(t3_measure(fwd(n)), 1.0, 1e-12);
    }
}

TEST(Measures, SpotValues) {
    EXPECT_NEAR(s1_measure(make_depolarized(1.0, 2)), 0.25, 1e-12);
    EXPECT_NEAR(s2_measure(identity_channel(4)), 0.25, 1e-12);
    EXPECT_NEAR(s3_measure(unitary_channel(std::polar(1.0, 1.3) * qft_matrix(3).adjoint())), 1.0, 1e-12);
    EXPECT_NEAR(s3_measure(make_diag_after({0, kPi, 0, kPi}, 2)), 0.0, 1e-12);
    EXPECT_NEAR(s3_measure(make_diag_after({0, 0, 0, kPi}, 2)), 0.25, 1e-12);
    for (int n : {2, 3}) {
        auto th = random_thetas(std::size_t{1} << n, kPi, 91);
        EXPECT_NEAR(s1_measure(make_diag_after(th, n)), 1.0, 1e-12);
        EXPECT_NEAR(s2_measure(make_diag_before(th, n)), 1.0, 1e-12);
    }
    // t-side of derived channels
    EXPECT_NEAR(t1_measure(compose(reflection_channel(3), finv(3))), 1.0, 1e-12);
    EXPECT_NEAR(t3_measure(channel_power(finv(3), 3)), 1.0, 1e-12);
}

TEST(DualRoute, AgreesAcrossFamilies) {
    for (int n : {1, 2, 3}) {
        for (const auto &c : population(n, Target::inverse_qft, 10)) {
            EXPECT_NEAR(s3_kraus_trace(c), s3_double_average(c), 1e-12);
            EXPECT_NEAR(t3_kraus_trace(c), t3_double_average(c), 1e-12);
        }
    }
}

TEST(CpTrace, SpotValues) {
    CounterRng rng(2, stream_id("test.cp"));
    KrausChannel c = finv(2);
    EXPECT_NEAR(cp_trace_measure(c, fwd(2)), 1.0, 1e-12);
    auto th = random_thetas(8, kPi, 12);
    CMatrix phi = CMatrix::Zero(8, 8);
    for (int k = 0; k < 8; ++k) phi(k, k) = std::polar(1.0, th[static_cast<std::size_t>(k)]);
    KrausChannel cp = unitary_channel(phi * qft_matrix(3).adjoint());
    KrausChannel pp = unitary_channel(qft_matrix(3) * phi.adjoint());
    EXPECT_NEAR(cp_trace_measure(cp, pp), 1.0, 1e-12);
    CMatrix d = CMatrix::Identity(4, 4);
    d(1, 1) = d(3, 3) = -1.0;
    EXPECT_NEAR(cp_trace_measure(c, unitary_channel(d * qft_matrix(2))), 0.0, 1e-12);
    EXPECT_THROW(cp_trace_measure(make_depolarized(0.1, 2), fwd(2)), std::invalid_argument);
}

TEST(Leakage, SpotValuesAndBound) {
    for (long long k = 1; k < 8; ++k) {
        EXPECT_NEAR(offdiag_leakage(finv(3), k), 0.0, 1e-12);
    }
    for (double p : {0.1, 0.5, 1.0}) {
        for (long long k = 1; k < 4; ++k) {
            EXPECT_NEAR(offdiag_leakage(make_depolarized(p, 2), k), p / 4.0, 1e-12);
        }
    }
    EXPECT_THROW(offdiag_leakage(finv(2), 0), std::invalid_argument);
    EXPECT_THROW(offdiag_leakage(finv(2), 4), std::invalid_argument);
    for (const auto &c : population(3, Target::inverse_qft, 10)) {
        double eta = 1.0 - s1_measure(c);
        for (long long k = 1; k < 8; ++k) {
            EXPECT_LE(offdiag_leakage(c, k), eta + 1e-9);
        }
    }
}

TEST(Leakage, MatchesDirectAverage) {
    int n = 2;
    for (const auto &c : testing::channel_zoo(n, 60, Target::inverse_qft)) {
        for (int k = 1; k < 4; ++k) {
            double acc = 0.0;
            for (int l = 0; l < 4; ++l) {
                oracle::Vec fl = oracle::fourier(l, n);
                acc += oracle::apply(c.kraus_ops(), fl * fl.adjoint())((k + l) % 4, (k + l) % 4).real();
            }
            EXPECT_NEAR(offdiag_leakage(c, k), acc / 4.0, 1e-12);
        }
    }
}

TEST(Orthobasis, EqualsS3OnAnyBasis) {
    CounterRng rng(4, stream_id("test.orthobasis"));
    int n = 3;
    KrausChannel c = make_diag_after(random_thetas(8, 1.5, 4), n);
    double s3 = s3_measure(c);
    EXPECT_NEAR(orthobasis_measure(c, CMatrix::Identity(8, 8)), s3, 1e-12);
    EXPECT_NEAR(orthobasis_measure(c, qft_matrix(n)), s3, 1e-9);
    for (int t = 0; t < 20; ++t) {
        CMatrix u = random_unitary(8, rng);
        double got = orthobasis_measure(c, u);
        EXPECT_NEAR(got, s3, 1e-9);
        // brute force directly from the definition
        oracle::Mat f = oracle::dft(n);
        oracle::C acc = 0.0;
        for (int k = 0; k < 8; ++k) {
            for (int l = 0; l < 8; ++l) {
                oracle::Mat x = f * u.col(k) * u.col(l).adjoint() * f.adjoint();
                acc += (u.col(k).adjoint() * oracle::apply(c.kraus_ops(), x) * u.col(l))(0, 0);
            }
        }
        EXPECT_NEAR(got, acc.real() / 64.0, 1e-12);
    }
    EXPECT_THROW(orthobasis_measure(c, 2.0 * CMatrix::Identity(8, 8)), std::invalid_argument);
}

TEST(PhaseCoherence, SpotValues) {
    PhaseCoherence ones = phase_coherence({1.0, 1.0, 1.0});
    EXPECT_NEAR(ones.mean_sq, 1.0, 1e-15);
    EXPECT_NEAR(ones.cos_avg, 1.0, 1e-15);
    PhaseCoherence pm = phase_coherence({1.0, -1.0});
    EXPECT_NEAR(pm.mean_sq, 0.0, 1e-15);
    EXPECT_NEAR(pm.cos_avg, 0.0, 1e-15);
    EXPECT_THROW(phase_coherence({Complex(1.1, 0.0)}), std::invalid_argument);
    EXPECT_NO_THROW(phase_coherence({Complex(1.0 + 5e-13, 0.0)}));
}

TEST(PhaseCoherence, CosAverageBound) {
    CounterRng rng(5, stream_id("test.coherence"));
    int checked = 0;
    for (int t = 0; t < 4000 && checked < 1000; ++t) {
        std::size_t m = 2 + rng.uniform_index(14);
        double spread = 0.05 + 0.6 * rng.next_double();
        std::vector<Complex> xs(m);
        for (auto &x : xs) {
            double r = 1.0 - 0.2 * rng.next_double() * spread;
            x = std::polar(r, spread * (2.0 * rng.next_double() - 1.0));
        }
        PhaseCoherence pc = phase_coherence(xs);
        double eta = 1.0 - pc.mean_sq;
        EXPECT_GE(pc.cos_avg, 1.0 - 2.0 * eta - 1e-12);
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(Theorems, CompositionForwardAndConverse) {
    for (int n : {2, 3}) {
        auto pop = population(n, Target::inverse_qft, 100);
        ASSERT_GE(pop.size(), 500u);
        for (const auto &c : pop) {
            ClosenessReport r = closeness_report(c);
            EXPECT_LE(r.eta_s3, r.eta_s1 + r.eta_s2 + 1e-9);
            EXPECT_LE(r.s3, std::min(r.s1, r.s2) + 1e-9);
        }
    }
}

TEST(Theorems, TSideComposition) {
    for (int n : {2, 3}) {
        for (const auto &p : population(n, Target::qft, 40)) {
            ClosenessReport r = closeness_report(p);
            EXPECT_LE(r.eta_t3, r.eta_t1 + r.eta_t2 + 1e-9);
            EXPECT_LE(r.t3, std::min(r.t1, r.t2) + 1e-9);
        }
    }
}

TEST(Theorems, ReflectionTransportAndCube) {
    for (int n : {2, 3}) {
        KrausChannel r = reflection_channel(n);
        for (const auto &c : population(n, Target::inverse_qft, 20)) {
            ClosenessReport s = closeness_report(c);
            ClosenessReport cr = closeness_report(compose(c, r));
            ClosenessReport rc = closeness_report(compose(r, c));
            EXPECT_GE(cr.t1, s.s1 - 1e-9);
            EXPECT_GE(cr.t2, s.s2 - 1e-9);
            EXPECT_GE(rc.t1, s.s1 - 1e-9);
            EXPECT_GE(rc.t2, s.s2 - 1e-9);
            ClosenessReport cube = closeness_report(channel_power(c, 3));
            double e1 = std::max(0.0, s.eta_s1), e2 = std::max(0.0, s.eta_s2), e3 = std::max(0.0, s.eta_s3);
            double mid = std::sqrt(std::sqrt(e1) + std::sqrt(e2));
            EXPECT_LE(cube.eta_t1, std::sqrt(e1) + mid + 1e-9);
            EXPECT_LE(cube.eta_t2, std::sqrt(e2) + mid + 1e-9);
            EXPECT_LE(cube.eta_t3, 2.0 * std::sqrt(e3) + 2.0 * std::sqrt(2.0) * std::pow(e3, 0.25) + 1e-9);
        }
    }
}

TEST(Report, FieldsInUnitRange) {
    for (const auto &c : population(2, Target::inverse_qft, 10)) {
        ClosenessReport r = closeness_report(c, fwd(2));
        for (double v : {r.s1, r.s2, r.s3, r.t1, r.t2, r.t3}) {
            EXPECT_GE(v, -1e-9);
            EXPECT_LE(v, 1.0 + 1e-9);
        }
        EXPECT_NEAR(r.eta_s3, 1.0 - r.s3, 1e-15);
        EXPECT_EQ(r.cp_trace.has_value(), c.is_unitary());
    }
}

}  // namespace
}  // namespace qftv
