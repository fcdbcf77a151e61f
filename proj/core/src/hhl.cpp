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

#include "qftv/hhl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qftv/closeness.hpp"
#include "qftv/noise.hpp"
#include "qftv/random.hpp"

namespace qftv {

namespace {

using Index = Eigen::Index;

constexpr double kPerfectTol = 1e-9;

constexpr std::array<std::pair<FKind, std::string_view>, 4> kFNames{{
    {FKind::identity, "identity"},
    {FKind::truncated_inverse, "truncated_inverse"},
    {FKind::one, "one"},
    {FKind::zero, "zero"},
}};

Complex turns(double t) {
    double a = 2.0 * std::numbers::pi * t;
    return {std::cos(a), std::sin(a)};
}

double nonneg(double eta) { return std::max(eta, 0.0); }

// Fractional part of j * x, computed so that x = p/N stays exact.
double frac_mul(Index j, double x) {
    double v = static_cast<double>(j) * x;
    return v - std::floor(v);
}

// Sum_j |j><j| (x) e^{sign * 2 pi i A_l j} (x) I_2.
CMatrix evolution(const HHLInstance &inst, long long l, double sign) {
    auto nn = static_cast<Index>(inst.big_n());
    auto d = static_cast<Index>(inst.d());
    Index block = 2 * d;
    double shift = static_cast<double>(l) / static_cast<double>(inst.big_n());
    CMatrix out = CMatrix::Zero(nn * block, nn * block);
    CMatrix id2 = CMatrix::Identity(2, 2);
    const CMatrix &v = inst.eigenvectors();
    for (Index j = 0; j < nn; ++j) {
        CVector ph(d);
        for (Index k = 0; k < d; ++k) {
            double t = frac_mul(j, inst.eigenvalues()(k)) + frac_mul(j, shift);
            ph(k) = turns(sign * t);
        }
        CMatrix ej = v * ph.asDiagonal() * v.adjoint();
        out.block(j * block, j * block, block, block) = tensor(ej, id2);
    }
    return out;
}

// Controlled rotation: |t>|s>|0> -> |t>|s>(f_t|0> + sqrt(1-f_t^2)|1>), with
// f_t = f(((t - l) mod N)/N).
CMatrix rotation(const HHLInstance &inst, long long l) {
    PhaseRegister reg(inst.n());
    auto nn = static_cast<Index>(inst.big_n());
    auto d = static_cast<Index>(inst.d());
    Index block = 2 * d;
    CMatrix out = CMatrix::Zero(nn * block, nn * block);
    for (Index t = 0; t < nn; ++t) {
        std::size_t shifted = reg.wrap(static_cast<long long>(t) - l);
        double x = static_cast<double>(shifted) / static_cast<double>(inst.big_n());
        double f = inst.f()(x, inst.big_n());
        double g = std::sqrt(std::max(0.0, 1.0 - f * f));
        CMatrix r(2, 2);
        r << f, -g, g, f;
        for (Index s = 0; s < d; ++s) {
            out.block(t * block + 2 * s, t * block + 2 * s, 2, 2) = r;
        }
    }
    return out;
}

CMatrix lift(const CMatrix &phase_op, const HHLInstance &inst) {
    auto rest = static_cast<Index>(2 * inst.d());
    return tensor(phase_op, CMatrix::Identity(rest, rest));
}

CVector initial_state(const HHLInstance &inst) {
    auto nn = static_cast<Index>(inst.big_n());
    CVector plus = CVector::Constant(nn, 1.0 / std::sqrt(static_cast<double>(nn)));
    CVector anc = CVector::Zero(2);
    anc(0) = 1.0;
    CVector out(nn * static_cast<Index>(inst.d()) * 2);
    CVector sys_anc(static_cast<Index>(inst.d()) * 2);
    for (Index s = 0; s < static_cast<Index>(inst.d()); ++s) {
        sys_anc(2 * s) = inst.b().amplitudes()(s);
        sys_anc(2 * s + 1) = 0.0;
    }
    for (Index a = 0; a < nn; ++a) {
        out.segment(a * sys_anc.size(), sys_anc.size()) = plus(a) * sys_anc;
    }
    return out;
}

struct Stages {
    CVector phi2;
    CMatrix w4;
    CMatrix tail;  // step 7 * step 6
};

Stages stages(const HHLInstance &inst, long long l) {
    Stages st;
    st.phi2 = evolution(inst, l, 1.0) * initial_state(inst);
    st.w4 = rotation(inst, l);
    st.tail = lift(hadamard_all(inst.n()), inst) * evolution(inst, l, -1.0);
    return st;
}

void require_channel_dim(const HHLInstance &inst, const KrausChannel &ch, const char *who) {
    if (ch.dim() != inst.big_n()) {
        std::ostringstream msg;
        msg << who << ": channel dim " << ch.dim() << " does not match N = " << inst.big_n();
        throw std::invalid_argument(msg.str());
    }
}

void require_k(int k, const char *who) {
    if (k < 2) {
        throw std::invalid_argument(std::string(who) + ": K must be at least 2");
    }
}

DensityOp as_density(const CMatrix &rho) { return DensityOp(0.5 * (rho + rho.adjoint())); }

std::string fmt_k(const char *pattern, int k) {
    std::ostringstream out;
    out << pattern << " [K=" << k << "]";
    return out.str();
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

// E_l T(rho_{7,l}, |phi_{7,l}>)^2 for the pipeline with (c, p).
std::vector<double> trace_distance_sq(const HHLInstance &inst, const KrausChannel &c,
                                      const KrausChannel &p) {
    std::vector<double> out;
    for (long long l = 0; l < static_cast<long long>(inst.big_n()); ++l) {
        DensityOp ideal = DensityOp::pure(run_ideal(inst, l));
        double t = trace_distance(run_noisy(inst, l, c, p), ideal);
        out.push_back(t * t);
    }
    return out;
}

void finish_distance(EnsembleResult &r, const HHLInstance &inst, double eta_total,
                     std::optional<int> k_param, const char *perfect_label,
                     const char *general_label) {
    r.measured = "trace_distance_sq";
    r.mean = mean_of(r.per_shift);
    if (inst.perfect_case()) {
        r.bound = 2.0 * std::sqrt(2.0 * eta_total);
        r.bound_formula = perfect_label;
    } else {
        if (!k_param) {
            throw std::invalid_argument("ensemble: general case needs K");
        }
        require_k(*k_param, "ensemble");
        double k = *k_param;
        r.bound = 4.0 * std::sqrt(2.0) / std::sqrt(k - 1.0) + 8.0 * k * std::sqrt(eta_total);
        r.bound_formula = fmt_k(general_label, *k_param);
        r.k_param = k_param;
    }
    r.pass = r.mean <= r.bound + kBoundSlack;
}

}  // namespace

std::string_view f_kind_name(FKind k) {
    for (const auto &[kind, name] : kFNames) {
        if (kind == k) {
            return name;
        }
    }
    return "unknown";
}

std::optional<FKind> parse_f_kind(std::string_view name) {
    for (const auto &[kind, s] : kFNames) {
        if (s == name) {
            return kind;
        }
    }
    return std::nullopt;
}

double ScalarFunction::operator()(double x, std::size_t big_n) const {
    switch (kind) {
        case FKind::identity:
            return std::clamp(x, -1.0, 1.0);
        case FKind::truncated_inverse: {
            if (!(cutoff > 0.0)) {
                throw std::invalid_argument("truncated_inverse: cutoff must be positive");
            }
            double nx = static_cast<double>(big_n) * x;
            if (nx < 1.0 - 1e-12) {
                return 0.0;
            }
            return std::min(1.0, cutoff / nx);
        }
        case FKind::one:
            return 1.0;
        case FKind::zero:
            return 0.0;
    }
    return 0.0;
}

HHLInstance::HHLInstance(CMatrix a, PureState b, ScalarFunction f, int n, bool perfect_case)
    : a_(std::move(a)), b_(std::move(b)), f_(f), n_(n), perfect_(perfect_case) {
    PhaseRegister reg(n);
    if (a_.rows() == 0 || a_.rows() != a_.cols()) {
        throw std::invalid_argument("HHLInstance: A must be square and nonempty");
    }
    if (b_.dim() != static_cast<std::size_t>(a_.rows())) {
        throw std::invalid_argument("HHLInstance: b does not match the dimension of A");
    }
    if (f_.kind == FKind::truncated_inverse && !(f_.cutoff > 0.0)) {
        throw std::invalid_argument("HHLInstance: truncated_inverse cutoff must be positive");
    }
    HermEig eig = herm_eig(a_);
    values_ = eig.values;
    vectors_ = eig.vectors;
    for (Index k = 0; k < values_.size(); ++k) {
        double s = values_(k);
        if (s < -tol::kEig || s >= 1.0) {
            std::ostringstream msg;
            msg << "HHLInstance: eigenvalue " << s << " outside [0, 1)";
            throw std::invalid_argument(msg.str());
        }
        if (perfect_) {
            double scaled = s * static_cast<double>(reg.dim());
            if (std::abs(scaled - std::round(scaled)) > kPerfectTol) {
                std::ostringstream msg;
                msg << "HHLInstance: perfect_case set but eigenvalue " << s
                    << " is not a multiple of 1/" << reg.dim();
                throw std::invalid_argument(msg.str());
            }
            // Snap to the exact grid point so phases are exact.
            values_(k) = std::round(scaled) / static_cast<double>(reg.dim());
        }
    }
}

HHLInstance HHLInstance::from_spectrum(const std::vector<double> &spectrum, PureState b,
                                       ScalarFunction f, int n, bool perfect_case,
                                       std::optional<std::uint64_t> seed) {
    if (spectrum.empty()) {
        throw std::invalid_argument("HHLInstance::from_spectrum: empty spectrum");
    }
    auto d = static_cast<Index>(spectrum.size());
    RVector diag(d);
    for (Index k = 0; k < d; ++k) {
        diag(k) = spectrum[static_cast<std::size_t>(k)];
    }
    CMatrix v = CMatrix::Identity(d, d);
    if (seed) {
        CounterRng rng(*seed, stream_id("hhl.eigenbasis"));
        v = random_unitary(static_cast<std::size_t>(d), rng);
    }
    CMatrix a = v * diag.cast<Complex>().asDiagonal() * v.adjoint();
    a = 0.5 * (a + a.adjoint());
    return HHLInstance(std::move(a), std::move(b), f, n, perfect_case);
}

PureState run_ideal(const HHLInstance &inst, long long l) {
    Stages st = stages(inst, l);
    CMatrix f = qft_matrix(inst.n());
    CVector v = lift(f.adjoint(), inst) * st.phi2;
    v = st.w4 * v;
    v = lift(f, inst) * v;
    v = st.tail * v;
    return PureState::normalized(v);
}

DensityOp run_noisy(const HHLInstance &inst, long long l, const KrausChannel &c,
                    const KrausChannel &p) {
    require_channel_dim(inst, c, "run_noisy");
    require_channel_dim(inst, p, "run_noisy");
    Stages st = stages(inst, l);
    std::size_t rest = 2 * inst.d();
    CMatrix rho = st.phi2 * st.phi2.adjoint();
    rho = apply_lifted(c, rho, rest);
    rho = st.w4 * rho * st.w4.adjoint();
    rho = apply_lifted(p, rho, rest);
    rho = st.tail * rho * st.tail.adjoint();
    return as_density(rho);
}

std::string_view ensemble_mode_name(EnsembleMode m) {
    switch (m) {
        case EnsembleMode::channel_pair:
            return "channel_pair";
        case EnsembleMode::unitary_inverse:
            return "unitary_inverse";
        case EnsembleMode::s1_t2_cp:
            return "s1_t2_cp";
    }
    return "unknown";
}

EnsembleResult ensemble_fidelity(const HHLInstance &inst, const KrausChannel &c,
                                 const KrausChannel &p, std::optional<int> k_param) {
    require_channel_dim(inst, c, "ensemble_fidelity");
    require_channel_dim(inst, p, "ensemble_fidelity");
    EnsembleResult r;
    r.mode = EnsembleMode::channel_pair;
    r.measured = "fidelity";
    double eta1 = nonneg(1.0 - s3_measure(c));
    double eta2 = nonneg(1.0 - t3_measure(p));
    r.etas = {{"eta_s3_c", eta1}, {"eta_t3_p", eta2}};
    for (long long l = 0; l < static_cast<long long>(inst.big_n()); ++l) {
        r.per_shift.push_back(fidelity_pure(run_noisy(inst, l, c, p), run_ideal(inst, l)));
    }
    r.mean = mean_of(r.per_shift);
    if (inst.perfect_case()) {
        r.bound = 1.0 - std::sqrt(eta1) - std::sqrt(eta2);
        r.bound_formula = "1 - sqrt(eta1) - sqrt(eta2)";
    } else {
        if (!k_param) {
            throw std::invalid_argument("ensemble_fidelity: general case needs K");
        }
        require_k(*k_param, "ensemble_fidelity");
        double k = *k_param;
        r.bound = 1.0 - (std::sqrt(eta1) + std::sqrt(eta2)) -
                  2.0 * std::sqrt(k) * (std::pow(eta1, 0.25) + std::pow(eta2, 0.25)) -
                  4.0 * std::sqrt(5.0) / std::pow(k - 1.0, 0.25);
        r.bound_formula = fmt_k(
            "1 - (eta1^1/2 + eta2^1/2) - 2 sqrt(K) (eta1^1/4 + eta2^1/4) - 4 sqrt(5) / (K-1)^1/4",
            *k_param);
        r.k_param = k_param;
    }
    r.pass = r.mean >= r.bound - kBoundSlack;
    return r;
}

ExpectationCheck expectation_error(const HHLInstance &inst, const KrausChannel &c,
                                   const KrausChannel &p, const CMatrix &m) {
    if (!inst.perfect_case()) {
        throw std::invalid_argument("expectation_error: perfect-case instance required");
    }
    auto dim = static_cast<Index>(inst.total_dim());
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("expectation_error: M does not match the register dimension");
    }
    HermEig gram = herm_eig(m.adjoint() * m);
    if (gram.values(0) > 1.0 + tol::kEig) {
        throw std::invalid_argument("expectation_error: ||M|| exceeds 1");
    }
    double eta1 = nonneg(1.0 - s3_measure(c));
    double eta2 = nonneg(1.0 - t3_measure(p));
    double total = 0.0;
    for (long long l = 0; l < static_cast<long long>(inst.big_n()); ++l) {
        PureState phi = run_ideal(inst, l);
        DensityOp rho = run_noisy(inst, l, c, p);
        Complex x = phi.amplitudes().dot(m * phi.amplitudes());
        Complex xt = (m * rho.matrix()).trace();
        total += std::abs(xt - x);
    }
    ExpectationCheck out;
    out.mean_abs_error = total / static_cast<double>(inst.big_n());
    out.bound = 2.0 * (std::pow(eta1, 0.25) + std::pow(eta2, 0.25));
    out.pass = out.mean_abs_error <= out.bound + kBoundSlack;
    return out;
}

EnsembleResult ensemble_unitary_inverse(const HHLInstance &inst, const KrausChannel &c,
                                        std::optional<int> k_param) {
    require_channel_dim(inst, c, "ensemble_unitary_inverse");
    if (!c.is_unitary()) {
        throw std::invalid_argument("ensemble_unitary_inverse: C must be unitary");
    }
    KrausChannel c_inv = inverse_channel(c);
    EnsembleResult r;
    r.mode = EnsembleMode::unitary_inverse;
    double eta = nonneg(1.0 - s1_measure(c));
    r.etas = {{"eta_s1_c", eta}};
    r.per_shift = trace_distance_sq(inst, c, c_inv);
    finish_distance(r, inst, eta, k_param, "2 sqrt(2 eta)",
                    "4 sqrt(2) / sqrt(K-1) + 8 K sqrt(eta)");
    return r;
}

double cp_lemma_lhs(const KrausChannel &c, const KrausChannel &p) {
    if (!c.is_unitary() || !p.is_unitary() || c.dim() != p.dim()) {
        throw std::invalid_argument("cp_lemma_lhs: needs two unitary channels of equal dim");
    }
    int n = 0;
    while ((std::size_t{1} << n) < c.dim()) {
        ++n;
    }
    CMatrix f = qft_matrix(n);
    CMatrix fp = f.adjoint() * p.unitary();  // <k^|P|k> on the diagonal
    CMatrix cf = c.unitary() * f;            // <k|C|k^> on the diagonal
    Complex acc = 0.0;
    for (Index k = 0; k < f.rows(); ++k) {
        acc += fp(k, k) * cf(k, k);
    }
    return std::abs(acc) / static_cast<double>(f.rows());
}

EnsembleResult ensemble_cp_mode(const HHLInstance &inst, const KrausChannel &c,
                                const KrausChannel &p, std::optional<int> k_param) {
    require_channel_dim(inst, c, "ensemble_cp_mode");
    require_channel_dim(inst, p, "ensemble_cp_mode");
    if (!c.is_unitary() || !p.is_unitary()) {
        throw std::invalid_argument("ensemble_cp_mode: C and P must be unitary");
    }
    EnsembleResult r;
    r.mode = EnsembleMode::s1_t2_cp;
    double eta1 = nonneg(1.0 - s1_measure(c));
    double eta2 = nonneg(1.0 - t2_measure(p));
    double eta3 = nonneg(1.0 - cp_trace_measure(c, p));
    r.etas = {{"eta_s1_c", eta1}, {"eta_t2_p", eta2}, {"eta_cp", eta3}};
    double total = eta1 + eta2 + eta3;
    r.lemma_lhs = cp_lemma_lhs(c, p);
    r.lemma_rhs = 1.0 - total;
    r.lemma_pass = *r.lemma_lhs >= *r.lemma_rhs - kBoundSlack;
    r.per_shift = trace_distance_sq(inst, c, p);
    finish_distance(r, inst, total, k_param, "2 sqrt(2 (eta1 + eta2 + eta3))",
                    "4 sqrt(2) / sqrt(K-1) + 8 K sqrt(eta1 + eta2 + eta3)");
    r.pass = r.pass && *r.lemma_pass;
    return r;
}

GoodSet good_set(double sigma, int n, int k_param) {
    require_k(k_param, "good_set");
    PhaseRegister reg(n);
    auto nn = static_cast<Index>(reg.dim());
    double scaled = sigma * static_cast<double>(nn);
    double base = std::abs(scaled - std::round(scaled)) <= kPerfectTol ? std::round(scaled)
                                                                        : std::floor(scaled);
    GoodSet gs;
    gs.sigma = sigma;
    gs.p_floor = reg.wrap(static_cast<long long>(base));
    std::vector<bool> in(static_cast<std::size_t>(nn), false);
    for (long long m = -k_param + 1; m <= k_param; ++m) {
        std::size_t g = reg.wrap(static_cast<long long>(gs.p_floor) + m);
        if (!in[g]) {
            in[g] = true;
            gs.members.push_back(g);
        }
    }
    std::sort(gs.members.begin(), gs.members.end());
    // alpha_g = (1/N) sum_j e^{2 pi i j (sigma - g/N)}
    gs.alpha.resize(static_cast<std::size_t>(nn));
    gs.norm_sq = 0.0;
    gs.tail_mass = 0.0;
    for (Index g = 0; g < nn; ++g) {
        Complex acc = 0.0;
        for (Index j = 0; j < nn; ++j) {
            double jg = static_cast<double>((j * g) % nn) / static_cast<double>(nn);
            acc += turns(frac_mul(j, sigma) - jg);
        }
        acc /= static_cast<double>(nn);
        gs.alpha[static_cast<std::size_t>(g)] = acc;
        double mass = std::norm(acc);
        gs.norm_sq += mass;
        if (!in[static_cast<std::size_t>(g)]) {
            gs.tail_mass += mass;
        }
    }
    gs.tail_bound = 2.0 / (k_param - 1.0);
    gs.within_bound = gs.tail_mass <= gs.tail_bound + 1e-12;
    return gs;
}

GoodSetDecomposition good_set_decompose(const HHLInstance &inst, int k_param) {
    require_k(k_param, "good_set_decompose");
    GoodSetDecomposition out;
    out.k_param = k_param;
    for (Index k = 0; k < inst.eigenvalues().size(); ++k) {
        out.sets.push_back(good_set(inst.eigenvalues()(k), inst.n(), k_param));
    }
    return out;
}

LemmaErrorCheck lemma_error_terms(const KrausChannel &c, const GoodSet &gs) {
    auto nn = static_cast<Index>(c.dim());
    if (static_cast<Index>(gs.alpha.size()) != nn) {
        throw std::invalid_argument("lemma_error_terms: good set and channel dims differ");
    }
    int n = 0;
    while ((Index{1} << n) < nn) {
        ++n;
    }
    CMatrix f = qft_matrix(n);
    double delta = gs.tail_mass;
    // phi_l = roll(alpha, l), psi_l = F phi_l.
    CMatrix phis(nn, nn);
    for (Index l = 0; l < nn; ++l) {
        for (Index g = 0; g < nn; ++g) {
            phis((g + l) % nn, l) = gs.alpha[static_cast<std::size_t>(g)];
        }
    }
    CMatrix psis = f * phis;
    double sum_sq = 0.0;
    for (const auto &a : c.kraus_ops()) {
        CMatrix ap = a * psis;
        Complex term1 = 0.0;
        for (Index l = 0; l < nn; ++l) {
            term1 += phis.col(l).dot(ap.col(l));
        }
        term1 /= static_cast<double>(nn);
        Complex term2 = (a * f).trace() / static_cast<double>(nn);
        sum_sq += std::norm(term1 - (1.0 - delta) * term2);
    }
    LemmaErrorCheck out;
    out.sum_sq = sum_sq;
    out.eta = nonneg(1.0 - s3_measure(c));
    out.delta = delta;
    double g = static_cast<double>(gs.members.size());
    out.bound = 2.0 * out.eta * g * g + 18.0 * delta;
    out.pass = out.sum_sq <= out.bound + kBoundSlack;
    return out;
}

}  // namespace qftv
