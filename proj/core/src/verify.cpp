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

#include "qftv/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qftv/random.hpp"

namespace qftv {

namespace {

using Index = Eigen::Index;

constexpr std::array<std::pair<Protocol, std::string_view>, 5> kNames{{
    {Protocol::ta1, "TA1"},
    {Protocol::ta2, "TA2"},
    {Protocol::tp1, "TP1"},
    {Protocol::tp2, "TP2"},
    {Protocol::cp, "CP"},
}};

int qubits_of(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if ((std::size_t{1} << n) != dim || n < 1) {
        throw std::invalid_argument("verify: channel dimension must be a power of two >= 2");
    }
    return n;
}

// Outcome distribution after preparing k and running the protocol's circuit,
// plus the outcome that counts as success.
struct Experiment {
    std::vector<RVector> cdf;  // cumulative, normalized
    std::vector<double> success_prob;
    std::vector<Index> target;
};

RVector diag_probs(const CMatrix &sigma) {
    RVector p = sigma.diagonal().real();
    for (Index i = 0; i < p.size(); ++i) {
        p(i) = std::max(p(i), 0.0);
    }
    return p;
}

void push(Experiment &e, const RVector &probs, Index target) {
    double total = probs.sum();
    RVector cdf(probs.size());
    double run = 0.0;
    for (Index i = 0; i < probs.size(); ++i) {
        run += probs(i);
        cdf(i) = run / total;
    }
    e.cdf.push_back(std::move(cdf));
    e.success_prob.push_back(probs(target));
    e.target.push_back(target);
}

Experiment build(Protocol which, const KrausChannel &ch, const KrausChannel *p) {
    std::size_t dim = ch.dim();
    int n = qubits_of(dim);
    PhaseRegister reg(n);
    auto nn = static_cast<Index>(dim);
    CMatrix h = hadamard_all(n);
    Experiment e;
    for (Index k = 0; k < nn; ++k) {
        CMatrix basis_k = CMatrix::Zero(nn, nn);
        basis_k(k, k) = 1.0;
        auto minus_k = static_cast<Index>(reg.wrap(-k));
        switch (which) {
            case Protocol::ta1: {
                CMatrix sigma = apply_to_operator(ch, fourier_basis_state(k, n).projector());
                push(e, diag_probs(sigma), k);
                break;
            }
            case Protocol::ta2: {
                CMatrix w = h * phase_unitary(k, n);
                CMatrix sigma = w * apply_to_operator(ch, basis_k) * w.adjoint();
                push(e, diag_probs(sigma), 0);
                break;
            }
            case Protocol::tp1: {
                CMatrix sigma = apply_to_operator(ch, fourier_basis_state(k, n).projector());
                push(e, diag_probs(sigma), minus_k);
                break;
            }
            case Protocol::tp2: {
                CMatrix w = h * phase_unitary(-k, n);
                CMatrix sigma = w * apply_to_operator(ch, basis_k) * w.adjoint();
                push(e, diag_probs(sigma), 0);
                break;
            }
            case Protocol::cp: {
                CMatrix sigma = apply_to_operator(ch, apply_to_operator(*p, basis_k));
                push(e, diag_probs(sigma), k);
                break;
            }
        }
    }
    return e;
}

ProtocolResult run(Protocol which, const KrausChannel &ch, const KrausChannel *p,
                   const ShotPlan &plan, std::uint64_t seed, double eta) {
    plan.validate();
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("protocol: eta must lie in (0, 1]");
    }
    Experiment e = build(which, ch, p);
    std::uint64_t stream = stream_id(protocol_name(which));
    auto nn = static_cast<std::uint64_t>(ch.dim());
    std::uint64_t successes = 0;
    for (std::uint64_t shot = 0; shot < plan.shots; ++shot) {
        CounterRng rng(seed, stream, shot);
        auto k = static_cast<std::size_t>(rng.uniform_index(nn));
        double u = rng.next_double();
        const RVector &cdf = e.cdf[k];
        const double *begin = cdf.data();
        const double *end = begin + cdf.size();
        auto it = std::upper_bound(begin, end, u);
        Index outcome = it == end ? cdf.size() - 1 : static_cast<Index>(it - begin);
        if (outcome == e.target[k]) {
            ++successes;
        }
    }
    ProtocolResult r;
    r.protocol = which;
    r.successes = successes;
    r.shots_used = plan.shots;
    r.estimate = static_cast<double>(successes) / static_cast<double>(plan.shots);
    r.seed = seed;
    r.epsilon = plan.epsilon;
    r.delta = plan.delta;
    r.threshold = 1.0 - eta + plan.epsilon;
    r.accept = r.estimate >= r.threshold;
    return r;
}

void require_unitary_pair(const KrausChannel &c, const KrausChannel &p) {
    if (!c.is_unitary() || !p.is_unitary()) {
        throw std::invalid_argument("run_cp_test: both channels must be unitary");
    }
    if (c.dim() != p.dim()) {
        throw std::invalid_argument("run_cp_test: dimension mismatch");
    }
}

}  // namespace

std::string_view protocol_name(Protocol p) {
    for (const auto &[k, name] : kNames) {
        if (k == p) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
    for (const auto &[k, s] : kNames) {
        if (s == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::uint64_t shots_needed(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("shots_needed: epsilon and delta must lie in (0, 1)");
    }
    double raw = std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
    return static_cast<std::uint64_t>(std::ceil(raw));
}

ShotPlan ShotPlan::calibrated(double epsilon, double delta) {
    return ShotPlan{epsilon, delta, shots_needed(epsilon, delta)};
}

void ShotPlan::validate() const {
    std::uint64_t need = shots_needed(epsilon, delta);
    if (shots < need) {
        std::ostringstream msg;
        msg << "ShotPlan: " << shots << " shots, need at least " << need;
        throw std::invalid_argument(msg.str());
    }
}

ProtocolResult run_ta1(const KrausChannel &c, const ShotPlan &plan, std::uint64_t seed, double eta) {
    return run(Protocol::ta1, c, nullptr, plan, seed, eta);
}

ProtocolResult run_ta2(const KrausChannel &c, const ShotPlan &plan, std::uint64_t seed, double eta) {
    return run(Protocol::ta2, c, nullptr, plan, seed, eta);
}

ProtocolResult run_tp1(const KrausChannel &p, const ShotPlan &plan, std::uint64_t seed, double eta) {
    return run(Protocol::tp1, p, nullptr, plan, seed, eta);
}

ProtocolResult run_tp2(const KrausChannel &p, const ShotPlan &plan, std::uint64_t seed, double eta) {
    return run(Protocol::tp2, p, nullptr, plan, seed, eta);
}

ProtocolResult run_cp_test(const KrausChannel &c, const KrausChannel &p, const ShotPlan &plan,
                           std::uint64_t seed, double eta) {
    require_unitary_pair(c, p);
    return run(Protocol::cp, c, &p, plan, seed, eta);
}

ProtocolResult run_protocol(Protocol which, const KrausChannel &ch, const ShotPlan &plan,
                            std::uint64_t seed, double eta) {
    if (which == Protocol::cp) {
        throw std::invalid_argument("run_protocol: CP needs two channels, use run_cp_test");
    }
    return run(which, ch, nullptr, plan, seed, eta);
}

double success_probability(Protocol which, const KrausChannel &ch, const KrausChannel *p) {
    if (which == Protocol::cp) {
        if (p == nullptr) {
            throw std::invalid_argument("success_probability: CP needs the P channel");
        }
        require_unitary_pair(ch, *p);
    }
    Experiment e = build(which, ch, p);
    double sum = 0.0;
    for (double s : e.success_prob) {
        sum += s;
    }
    return sum / static_cast<double>(e.success_prob.size());
}

S3Decision decide_s3(const ProtocolResult &ta1, const ProtocolResult &ta2, double eta,
                     double epsilon) {
    if (ta1.protocol != Protocol::ta1 || ta2.protocol != Protocol::ta2) {
        throw std::invalid_argument("decide_s3: expects a TA1 and a TA2 result");
    }
    if (!(eta > 0.0 && eta <= 1.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("decide_s3: eta must lie in (0, 1] and epsilon be positive");
    }
    if (epsilon >= eta / 2.0) {
        throw std::invalid_argument("decide_s3: epsilon >= eta/2 makes the decision uninformative");
    }
    if (ta1.epsilon > epsilon || ta2.epsilon > epsilon) {
        throw std::invalid_argument("decide_s3: a run used a plan looser than epsilon");
    }
    double threshold = 1.0 - eta + epsilon;
    S3Decision d;
    d.accept = ta1.estimate >= threshold && ta2.estimate >= threshold;
    std::ostringstream claim;
    claim.precision(17);
    if (d.accept) {
        d.certified_eta = 2.0 * eta + 2.0 * epsilon;
        claim << "C in S3(" << d.certified_eta << ")";
    } else {
        d.certified_eta = eta - 2.0 * epsilon;
        claim << "C not in S3(" << d.certified_eta << ")";
    }
    d.claim = claim.str();
    return d;
}

}  // namespace qftv
