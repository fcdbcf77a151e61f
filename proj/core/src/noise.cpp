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

#include "qftv/noise.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/QR>

namespace qftv {

namespace {

using Index = Eigen::Index;

constexpr std::array<std::pair<NoiseKind, std::string_view>, 6> kKindNames{{
    {NoiseKind::exact, "exact"},
    {NoiseKind::diag_after, "diag_after"},
    {NoiseKind::diag_before, "diag_before"},
    {NoiseKind::depolarized, "depolarized"},
    {NoiseKind::perturbed_unitary, "perturbed_unitary"},
    {NoiseKind::mixed_unitary, "mixed_unitary"},
}};

CMatrix ideal(int n, Target target) {
    CMatrix f = qft_matrix(n);
    if (target == Target::inverse_qft) {
        return f.adjoint();
    }
    return f;
}

CMatrix phase_diag(const std::vector<double> &thetas, int n, const char *who) {
    PhaseRegister reg(n);
    if (thetas.size() != reg.dim()) {
        std::ostringstream msg;
        msg << who << ": expected " << reg.dim() << " thetas, got " << thetas.size();
        throw std::invalid_argument(msg.str());
    }
    CVector d(static_cast<Index>(thetas.size()));
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        d(static_cast<Index>(k)) = std::polar(1.0, thetas[k]);
    }
    return d.asDiagonal();
}

CMatrix gaussian_matrix(std::size_t dim, CounterRng &rng) {
    auto d = static_cast<Index>(dim);
    CMatrix g(d, d);
    for (Index r = 0; r < d; ++r) {
        for (Index c = 0; c < d; ++c) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

CMatrix expi(const CMatrix &h, double eps) {
    HermEig eig = herm_eig(h);
    CVector phases(eig.values.size());
    for (Index j = 0; j < eig.values.size(); ++j) {
        phases(j) = std::polar(1.0, eps * eig.values(j));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

void require_eps(double eps, const char *who) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument(std::string(who) + ": eps must lie in [0, 1]");
    }
}

std::vector<CMatrix> perturbations(double eps, int count, int n, std::uint64_t seed) {
    PhaseRegister reg(n);
    std::vector<CMatrix> out;
    for (int j = 0; j < count; ++j) {
        CounterRng rng(seed, stream_id("noise.hermitian"), static_cast<std::uint64_t>(j));
        out.push_back(expi(random_hermitian(reg.dim(), rng), eps));
    }
    return out;
}

KrausChannel depolarized_around(const CMatrix &u, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("make_depolarized: p must lie in [0, 1]");
    }
    if (p == 0.0) {
        return unitary_channel(u);
    }
    auto dim = u.rows();
    std::vector<CMatrix> ops;
    ops.reserve(static_cast<std::size_t>(dim * dim + 1));
    if (p < 1.0) {
        ops.push_back(std::sqrt(1.0 - p) * u);
    }
    double w = std::sqrt(p / static_cast<double>(dim));
    for (Index a = 0; a < dim; ++a) {
        for (Index b = 0; b < dim; ++b) {
            CMatrix e = CMatrix::Zero(dim, dim);
            e(a, b) = w;
            ops.push_back(std::move(e));
        }
    }
    return KrausChannel(std::move(ops));
}

KrausChannel mixture(const std::vector<CMatrix> &left, const CMatrix &base) {
    double w = 1.0 / std::sqrt(static_cast<double>(left.size()));
    std::vector<CMatrix> ops;
    ops.reserve(left.size());
    for (const auto &v : left) {
        ops.push_back(w * (v * base));
    }
    return KrausChannel(std::move(ops));
}

std::vector<double> resolve_thetas(const NoiseSpec &spec) {
    if (!spec.thetas.empty()) {
        return spec.thetas;
    }
    PhaseRegister reg(spec.n);
    return random_thetas(reg.dim(), spec.theta_scale, spec.seed);
}

}  // namespace

std::string_view noise_kind_name(NoiseKind kind) {
    for (const auto &[k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view name) {
    for (const auto &[k, s] : kKindNames) {
        if (s == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view target_name(Target t) { return t == Target::qft ? "qft" : "inverse_qft"; }

std::optional<Target> parse_target(std::string_view name) {
    if (name == "qft") {
        return Target::qft;
    }
    if (name == "inverse_qft") {
        return Target::inverse_qft;
    }
    return std::nullopt;
}

KrausChannel make_diag_after(const std::vector<double> &thetas, int n) {
    CMatrix d = phase_diag(thetas, n, "make_diag_after");
    return unitary_channel(d * ideal(n, Target::inverse_qft));
}

KrausChannel make_diag_before(const std::vector<double> &thetas, int n) {
    CMatrix d = phase_diag(thetas, n, "make_diag_before");
    return unitary_channel(ideal(n, Target::inverse_qft) * d);
}

KrausChannel make_depolarized(double p, int n) {
    return depolarized_around(ideal(n, Target::inverse_qft), p);
}

KrausChannel make_perturbed_unitary(double eps, int n, std::uint64_t seed) {
    require_eps(eps, "make_perturbed_unitary");
    return unitary_channel(perturbations(eps, 1, n, seed).front() * ideal(n, Target::inverse_qft));
}

KrausChannel make_mixed_unitary(double eps, int count, int n, std::uint64_t seed) {
    require_eps(eps, "make_mixed_unitary");
    if (count < 1) {
        throw std::invalid_argument("make_mixed_unitary: count must be positive");
    }
    return mixture(perturbations(eps, count, n, seed), ideal(n, Target::inverse_qft));
}

KrausChannel make_channel(const NoiseSpec &spec, Target target) {
    CMatrix base = ideal(spec.n, target);
    switch (spec.kind) {
        case NoiseKind::exact:
            return unitary_channel(base);
        case NoiseKind::diag_after: {
            CMatrix d = phase_diag(resolve_thetas(spec), spec.n, "diag_after");
            return unitary_channel(d * base);
        }
        case NoiseKind::diag_before: {
            CMatrix d = phase_diag(resolve_thetas(spec), spec.n, "diag_before");
            return unitary_channel(base * d);
        }
        case NoiseKind::depolarized:
            return depolarized_around(base, spec.p);
        case NoiseKind::perturbed_unitary:
            require_eps(spec.eps, "perturbed_unitary");
            return unitary_channel(perturbations(spec.eps, 1, spec.n, spec.seed).front() * base);
        case NoiseKind::mixed_unitary:
            require_eps(spec.eps, "mixed_unitary");
            if (spec.count < 1) {
                throw std::invalid_argument("mixed_unitary: count must be positive");
            }
            return mixture(perturbations(spec.eps, spec.count, spec.n, spec.seed), base);
    }
    throw std::invalid_argument("make_channel: invalid noise kind");
}

KrausChannel make_c_channel(const NoiseSpec &spec) { return make_channel(spec, Target::inverse_qft); }

KrausChannel make_p_channel(const NoiseSpec &spec) { return make_channel(spec, Target::qft); }

NoiseSpec adversarial_preset() {
    NoiseSpec spec;
    spec.kind = NoiseKind::diag_after;
    spec.n = 2;
    spec.thetas = {0.0, std::numbers::pi, 0.0, std::numbers::pi};
    return spec;
}

std::vector<double> random_thetas(std::size_t count, double scale, std::uint64_t seed) {
    CounterRng rng(seed, stream_id("noise.thetas"));
    std::vector<double> out(count);
    for (auto &t : out) {
        t = scale * (2.0 * rng.next_double() - 1.0);
    }
    return out;
}

CMatrix random_hermitian(std::size_t dim, CounterRng &rng) {
    CMatrix g = gaussian_matrix(dim, rng);
    CMatrix h = 0.5 * (g + g.adjoint());
    HermEig eig = herm_eig(h);
    double norm = eig.values.cwiseAbs().maxCoeff();
    if (!(norm > 0.0)) {
        throw std::runtime_error("random_hermitian: degenerate draw");
    }
    return h / norm;
}

CMatrix random_unitary(std::size_t dim, CounterRng &rng) {
    CMatrix g = gaussian_matrix(dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < q.cols(); ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

CMatrix random_contraction(std::size_t dim, CounterRng &rng) {
    CMatrix g = gaussian_matrix(dim, rng);
    return g / operator_norm(g);
}

}  // namespace qftv
