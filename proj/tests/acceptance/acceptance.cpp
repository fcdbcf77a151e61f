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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qftv/closeness.hpp"
#include "qftv/hhl.hpp"
#include "qftv/noise.hpp"
#include "qftv/verify.hpp"

namespace qftv {
namespace {

constexpr double kPi = std::numbers::pi;

// every channel built here goes through track(); criterion 11 reads the tally
struct DualRouteTally {
    std::size_t channels = 0;
    double worst_s3 = 0.0;
    double worst_t3 = 0.0;
};
DualRouteTally g_tally;

const KrausChannel &track(const KrausChannel &c) {
    g_tally.channels++;
    g_tally.worst_s3 = std::max(g_tally.worst_s3, std::abs(s3_kraus_trace(c) - s3_double_average(c)));
    g_tally.worst_t3 = std::max(g_tally.worst_t3, std::abs(t3_kraus_trace(c) - t3_double_average(c)));
    return c;
}

struct Outcome {
    bool pass = true;
    std::size_t cases = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string &what) {
        ++cases;
        if (!ok) {
            if (pass || notes.size() < 5) notes.push_back("violated: " + what);
            pass = false;
        }
    }
    void note(const std::string &s) { notes.push_back(s); }
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

struct Family {
    NoiseKind kind;
    const char *name;
};
const Family kFamilies[] = {
    {NoiseKind::diag_after, "diag_after"},   {NoiseKind::diag_before, "diag_before"},
    {NoiseKind::depolarized, "depolarized"}, {NoiseKind::perturbed_unitary, "perturbed_unitary"},
    {NoiseKind::mixed_unitary, "mixed_unitary"},
};

NoiseSpec spec_for(NoiseKind kind, int n, double s, std::uint64_t seed) {
    NoiseSpec spec;
    spec.kind = kind;
    spec.n = n;
    spec.seed = seed;
    switch (kind) {
        case NoiseKind::diag_after:
        case NoiseKind::diag_before:
            spec.theta_scale = s * kPi;
            break;
        case NoiseKind::depolarized:
            spec.p = s;
            break;
        case NoiseKind::perturbed_unitary:
            spec.eps = s;
            break;
        case NoiseKind::mixed_unitary:
            spec.eps = s;
            spec.count = 3;
            break;
        case NoiseKind::exact:
            break;
    }
    return spec;
}

KrausChannel build(NoiseKind kind, int n, double s, std::uint64_t seed, Target t) {
    KrausChannel c = make_channel(spec_for(kind, n, s, seed), t);
    track(c);
    return c;
}

// 5 families x 7 strengths x n in {2,3,4}, plus exact channels (and the preset on the C side)
std::vector<KrausChannel> population(Target t) {
    std::vector<KrausChannel> out;
    std::uint64_t seed = t == Target::qft ? 5000 : 1000;
    for (int n : {2, 3, 4}) {
        out.push_back(build(NoiseKind::exact, n, 0.0, 0, t));
        for (const auto &fam : kFamilies) {
            for (int j = 0; j < 7; ++j) {
                out.push_back(build(fam.kind, n, 0.02 + 0.16 * j, ++seed, t));
            }
        }
    }
    if (t == Target::inverse_qft) {
        out.push_back(make_c_channel(adversarial_preset()));
        track(out.back());
    }
    return out;
}

const std::vector<KrausChannel> &c_population() {
    static const std::vector<KrausChannel> pop = population(Target::inverse_qft);
    return pop;
}
const std::vector<KrausChannel> &p_population() {
    static const std::vector<KrausChannel> pop = population(Target::qft);
    return pop;
}

int qubits_of(const KrausChannel &c) {
    int n = 0;
    while ((std::size_t{1} << n) < c.dim()) ++n;
    return n;
}

Outcome criterion_composition() {
    Outcome o;
    for (const auto &c : c_population()) {
        ClosenessReport r = closeness_report(c);
        o.check(r.eta_s3 <= r.eta_s1 + r.eta_s2 + 1e-9, fmt("eta_s3 %.3g > eta_s1 + eta_s2 %.3g", r.eta_s3, r.eta_s1 + r.eta_s2));
        o.check(r.s3 <= std::min(r.s1, r.s2) + 1e-9, fmt("s3 %.3g > min(s1, s2) %.3g", r.s3, std::min(r.s1, r.s2)));
    }
    o.note(fmt("%.0f channels over n in {2,3,4}", static_cast<double>(c_population().size())));
    return o;
}

Outcome criterion_t_side() {
    Outcome o;
    for (const auto &p : p_population()) {
        ClosenessReport r = closeness_report(p);
        o.check(r.eta_t3 <= r.eta_t1 + r.eta_t2 + 1e-9, fmt("eta_t3 %.3g > eta_t1 + eta_t2 %.3g", r.eta_t3, r.eta_t1 + r.eta_t2));
        o.check(r.t3 <= std::min(r.t1, r.t2) + 1e-9, "t3 > min(t1, t2)");
    }
    for (const auto &c : c_population()) {
        int n = qubits_of(c);
        KrausChannel r = reflection_channel(n);
        ClosenessReport s = closeness_report(c);
        ClosenessReport cr = closeness_report(track(compose(c, r)));
        ClosenessReport rc = closeness_report(track(compose(r, c)));
        o.check(cr.t1 >= s.s1 - 1e-9 && cr.t2 >= s.s2 - 1e-9, "C.R loses T1/T2 closeness");
        o.check(rc.t1 >= s.s1 - 1e-9 && rc.t2 >= s.s2 - 1e-9, "R.C loses T1/T2 closeness");
        ClosenessReport cube = closeness_report(track(channel_power(c, 3)));
        double e1 = std::max(0.0, s.eta_s1), e2 = std::max(0.0, s.eta_s2), e3 = std::max(0.0, s.eta_s3);
        double mid = std::sqrt(std::sqrt(e1) + std::sqrt(e2));
        o.check(cube.eta_t1 <= std::sqrt(e1) + mid + 1e-9, "C^3 T1 bound");
        o.check(cube.eta_t2 <= std::sqrt(e2) + mid + 1e-9, "C^3 T2 bound");
        double b3 = 2.0 * std::sqrt(e3) + 2.0 * std::sqrt(2.0) * std::pow(e3, 0.25);
        o.check(cube.eta_t3 <= b3 + 1e-9, fmt("C^3 eta_t3 %.4g > %.4g", cube.eta_t3, b3));
    }
    return o;
}

Outcome criterion_phase_coherence() {
    Outcome o;
    CounterRng rng(31, stream_id("acceptance.coherence"));
    double tightest = 1.0;
    while (o.cases < 1000) {
        std::size_t m = 2 + rng.uniform_index(31);
        double spread = 0.02 + 1.5 * rng.next_double();
        std::vector<Complex> xs(m);
        for (auto &x : xs) {
            double r = 1.0 - 0.3 * spread * rng.next_double();
            x = std::polar(std::max(0.0, r), spread * (2.0 * rng.next_double() - 1.0));
        }
        PhaseCoherence pc = phase_coherence(xs);
        double eta = 1.0 - pc.mean_sq;  // tightest eta the vector satisfies
        o.check(pc.cos_avg >= 1.0 - 2.0 * eta - 1e-12, fmt("cos_avg %.6g < 1 - 2 eta = %.6g", pc.cos_avg, 1.0 - 2.0 * eta));
        tightest = std::min(tightest, pc.cos_avg - (1.0 - 2.0 * eta));
    }
    o.note(fmt("smallest margin %.3g", tightest));
    return o;
}

Outcome criterion_leakage_basis() {
    Outcome o;
    for (const auto &c : c_population()) {
        double eta = 1.0 - s1_measure(c);
        for (long long k = 1; k < static_cast<long long>(c.dim()); ++k) {
            o.check(offdiag_leakage(c, k) <= eta + 1e-9, "leakage exceeds eta_s1");
        }
    }
    CounterRng rng(32, stream_id("acceptance.orthobasis"));
    const auto &pop = c_population();
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const KrausChannel &c = pop[(static_cast<std::size_t>(t) * 37 + 5) % pop.size()];
        CMatrix u = random_unitary(c.dim(), rng);
        double diff = std::abs(orthobasis_measure(c, u) - s3_measure(c));
        worst = std::max(worst, diff);
        o.check(diff <= 1e-9, fmt("orthobasis differs from s3 by %.3g", diff));
    }
    o.note(fmt("20 bases, worst basis deviation %.3g", worst));
    return o;
}

Outcome criterion_calibration() {
    Outcome o;
    const double eps = 0.05, delta = 0.05;
    const int reruns = 200;
    ShotPlan plan = ShotPlan::calibrated(eps, delta);
    const double allowed = delta + 3.0 * std::sqrt(delta * (1.0 - delta) / reruns);
    struct Run {
        Protocol proto;
        Target target;
    };
    int n = 3;
    std::uint64_t seed = 9000;
    double worst = 0.0;
    for (Run run : {Run{Protocol::ta1, Target::inverse_qft}, Run{Protocol::ta2, Target::inverse_qft},
                    Run{Protocol::tp1, Target::qft}, Run{Protocol::tp2, Target::qft}}) {
        std::vector<KrausChannel> chans;
        chans.push_back(build(NoiseKind::depolarized, n, 0.3, 0, run.target));
        chans.push_back(build(NoiseKind::perturbed_unitary, n, 0.4, ++seed, run.target));
        chans.push_back(build(NoiseKind::mixed_unitary, n, 0.5, ++seed, run.target));
        chans.push_back(build(NoiseKind::diag_after, n, 0.5, ++seed, run.target));
        chans.push_back(build(NoiseKind::diag_before, n, 0.5, ++seed, run.target));
        for (const auto &ch : chans) {
            double exact = success_probability(run.proto, ch);
            int failures = 0;
            for (int r = 0; r < reruns; ++r) {
                ProtocolResult res = run_protocol(run.proto, ch, plan, ++seed, 0.2);
                failures += std::abs(res.estimate - exact) > eps;
            }
            double frac = failures / static_cast<double>(reruns);
            worst = std::max(worst, frac);
            o.check(frac <= allowed, fmt("%s failure fraction %.3f > %.3f", frac, allowed) + " (" +
                                         std::string(protocol_name(run.proto)) + ")");
        }
    }
    o.note(fmt("shots %.0f, worst failure fraction %.3f, allowance %.3f", static_cast<double>(plan.shots), worst, allowed));
    return o;
}

PureState uniform(std::size_t d) { return PureState::normalized(CVector::Ones(static_cast<Eigen::Index>(d))); }

Outcome criterion_demo() {
    Outcome o;
    KrausChannel c = make_c_channel(adversarial_preset());
    track(c);
    ShotPlan plan = ShotPlan::calibrated(0.05, 0.05);
    ProtocolResult ta1 = run_ta1(c, plan, 1, 0.2);
    o.check(ta1.estimate == 1.0, fmt("TA1 estimate %.17g", ta1.estimate));
    double s3 = s3_measure(c);
    o.check(std::abs(s3) <= 1e-12, fmt("s3 %.3g", s3));
    HHLInstance inst = HHLInstance::from_spectrum({0.25, 0.5}, uniform(2), {}, 2, true, std::nullopt);
    KrausChannel p = unitary_channel(qft_matrix(2));
    track(p);
    EnsembleResult ens = ensemble_fidelity(inst, c, p);
    o.check(ens.mean < 0.6, fmt("HHL fidelity %.4g", ens.mean));
    o.check(ens.pass, "theorem bound on the preset");
    o.note(fmt("TA1 = %.3g, s3 = %.3g, mean fidelity %.4f", ta1.estimate, s3, ens.mean));
    return o;
}

// (C, P) pairs for the HHL matrices; strengths stay small so bounds are informative
struct Pair {
    KrausChannel c, p;
};

std::vector<Pair> pairs_for(int n, std::uint64_t seed, bool unitary_only) {
    std::vector<Pair> out;
    out.push_back({build(NoiseKind::exact, n, 0, 0, Target::inverse_qft), build(NoiseKind::exact, n, 0, 0, Target::qft)});
    const NoiseKind kinds[] = {NoiseKind::diag_after, NoiseKind::diag_before, NoiseKind::depolarized,
                               NoiseKind::perturbed_unitary, NoiseKind::mixed_unitary};
    const double strengths[] = {0.002, 0.01, 0.05, 0.15};
    int i = 0;
    for (NoiseKind kc : kinds) {
        if (unitary_only && (kc == NoiseKind::depolarized || kc == NoiseKind::mixed_unitary)) continue;
        NoiseKind kp = kinds[(i + 3) % 5];
        if (unitary_only && (kp == NoiseKind::depolarized || kp == NoiseKind::mixed_unitary)) kp = NoiseKind::perturbed_unitary;
        double s = strengths[i % 4];
        out.push_back({build(kc, n, s, ++seed, Target::inverse_qft), build(kp, n, s, ++seed, Target::qft)});
        ++i;
    }
    return out;
}

struct HhlCase {
    HHLInstance inst;
    Pair pair;
};

HhlCase make_case(int n, std::size_t d, bool perfect, std::uint64_t seed, const Pair &pair) {
    CounterRng rng(seed, stream_id("acceptance.instance"));
    std::size_t big = std::size_t{1} << n;
    std::vector<double> spec(d);
    for (auto &x : spec) {
        std::size_t p = 1 + rng.uniform_index(big - 1);
        x = perfect ? static_cast<double>(p) / big : (static_cast<double>(p) + 0.1 + 0.8 * rng.next_double()) / big;
        if (x >= 1.0) x = 0.99;
    }
    ScalarFunction f;
    if (seed % 3 == 1) f = ScalarFunction{FKind::truncated_inverse, 1.0};
    return {HHLInstance::from_spectrum(spec, testing::random_pure(d, rng), f, n, perfect, seed), pair};
}

// perfect-case matrix: n in {2,3}, d in {2,4}, three instances per (n, d), every pair
std::vector<HhlCase> perfect_matrix(bool unitary_only) {
    std::vector<HhlCase> out;
    std::uint64_t seed = unitary_only ? 7000 : 6000;
    for (int n : {2, 3}) {
        auto pairs = pairs_for(n, seed * 10 + static_cast<std::uint64_t>(n), unitary_only);
        for (std::size_t d : {2u, 4u}) {
            for (int rep = 0; rep < 3; ++rep) {
                for (const auto &pr : pairs) out.push_back(make_case(n, d, true, ++seed, pr));
            }
        }
    }
    return out;
}

const std::vector<HhlCase> &matrix() {
    static const std::vector<HhlCase> m = perfect_matrix(false);
    return m;
}

Outcome criterion_main_perfect() {
    Outcome o;
    double margin = 1e9;
    for (const auto &hc : matrix()) {
        EnsembleResult r = ensemble_fidelity(hc.inst, hc.pair.c, hc.pair.p);
        o.check(r.mean >= r.bound - 1e-9, fmt("fidelity %.6g < bound %.6g", r.mean, r.bound));
        margin = std::min(margin, r.mean - r.bound);
    }
    o.note(fmt("%.0f cases, smallest margin %.3g", static_cast<double>(o.cases), margin));
    return o;
}

Outcome criterion_expectation() {
    Outcome o;
    std::uint64_t seed = 0;
    for (const auto &hc : matrix()) {
        for (int j = 0; j < 5; ++j) {
            CounterRng rng(++seed, stream_id("acceptance.observable"));
            CMatrix m = random_contraction(hc.inst.total_dim(), rng);
            ExpectationCheck ex = expectation_error(hc.inst, hc.pair.c, hc.pair.p, m);
            o.check(ex.mean_abs_error <= ex.bound + 1e-9, fmt("E|dX| %.4g > %.4g", ex.mean_abs_error, ex.bound));
        }
    }
    return o;
}

Outcome criterion_general() {
    Outcome o;
    std::size_t vacuous = 0, informative = 0;
    int n = 4;
    std::uint64_t seed = 8000;
    auto pairs = pairs_for(n, 80, false);
    for (std::size_t d : {2u, 4u}) {
        for (const auto &pr : pairs) {
            HhlCase hc = make_case(n, d, false, ++seed, pr);
            for (int k : {4, 8}) {
                EnsembleResult r = ensemble_fidelity(hc.inst, pr.c, pr.p, k);
                if (r.bound > 0.0) {
                    ++informative;
                    o.check(r.mean >= r.bound - 1e-9, fmt("K=%.0f fidelity %.6g < bound %.6g", k, r.mean, r.bound));
                } else {
                    ++vacuous;
                }
                GoodSetDecomposition dec = good_set_decompose(hc.inst, k);
                for (const auto &gs : dec.sets) {
                    o.check(gs.tail_mass <= gs.tail_bound + 1e-12, fmt("tail %.4g > 2/(K-1) = %.4g", gs.tail_mass, gs.tail_bound));
                    o.check(std::abs(gs.norm_sq - 1.0) <= 1e-12, "good-set amplitudes not normalized");
                }
            }
        }
    }
    o.note(fmt("K in {4,8}: %.0f of %.0f fidelity bounds are non-positive at these K", static_cast<double>(vacuous),
               static_cast<double>(vacuous + informative)));
    // supplementary: near-exact channels where the bound is positive
    std::size_t extra = 0;
    double smallest = 1.0;
    for (std::size_t d : {2u, 4u}) {
        for (int rep = 0; rep < 3; ++rep) {
            Pair pr{build(NoiseKind::perturbed_unitary, n, 1e-9, ++seed, Target::inverse_qft),
                    build(rep == 0 ? NoiseKind::exact : NoiseKind::perturbed_unitary, n, 1e-9, ++seed, Target::qft)};
            HhlCase hc = make_case(n, d, false, ++seed, pr);
            for (int k : {10000, 1000000}) {
                EnsembleResult r = ensemble_fidelity(hc.inst, pr.c, pr.p, k);
                smallest = std::min(smallest, r.bound);
                o.check(r.bound > 0.0, fmt("supplementary bound not positive (%.4g) at K=%.0f", r.bound, k));
                o.check(r.mean >= r.bound - 1e-9, fmt("K=%.0f fidelity %.6g < bound %.6g", k, r.mean, r.bound));
                for (const auto &gs : good_set_decompose(hc.inst, k).sets) {
                    o.check(gs.tail_mass <= gs.tail_bound + 1e-12, "large-K tail bound");
                }
                ++extra;
            }
        }
    }
    o.note(fmt("plus %.0f near-exact cases at K in {1e4, 1e6} with positive bounds (smallest %.3g)",
               static_cast<double>(extra), smallest));
    return o;
}

Outcome criterion_unitary() {
    Outcome o;
    std::size_t inv_perfect = 0, inv_general = 0, cp = 0, lemma = 0, informative_general = 0;
    const auto cases = perfect_matrix(true);
    for (const auto &hc : cases) {
        EnsembleResult r = ensemble_unitary_inverse(hc.inst, hc.pair.c);
        o.check(r.mean <= r.bound + 1e-9, fmt("unitary inverse E[T^2] %.4g > %.4g", r.mean, r.bound));
        ++inv_perfect;
        EnsembleResult q = ensemble_cp_mode(hc.inst, hc.pair.c, hc.pair.p);
        o.check(q.mean <= q.bound + 1e-9, fmt("cp mode E[T^2] %.4g > %.4g", q.mean, q.bound));
        o.check(*q.lemma_pass, fmt("cp lemma %.6g < %.6g", *q.lemma_lhs, *q.lemma_rhs));
        ++cp;
        ++lemma;
    }
    // general case: non-grid spectra, K = 4 and a larger K with small eta
    std::uint64_t seed = 7500;
    for (int n : {2, 3}) {
        auto pairs = pairs_for(n, 75 + static_cast<std::uint64_t>(n), true);
        for (std::size_t d : {2u, 4u}) {
            for (const auto &pr : pairs) {
                HhlCase hc = make_case(n, d, false, ++seed, pr);
                for (int k : {4, 100}) {
                    EnsembleResult r = ensemble_unitary_inverse(hc.inst, pr.c, k);
                    o.check(r.mean <= r.bound + 1e-9, fmt("general unitary inverse %.4g > %.4g", r.mean, r.bound));
                    informative_general += r.bound < 1.0;
                    ++inv_general;
                    EnsembleResult q = ensemble_cp_mode(hc.inst, pr.c, pr.p, k);
                    o.check(q.mean <= q.bound + 1e-9, "general cp mode");
                    o.check(*q.lemma_pass, "cp lemma (general)");
                    ++lemma;
                }
            }
        }
    }
    o.check(inv_perfect >= 30 && cp >= 30 && inv_general >= 30, "fewer than 30 cases in a scenario");
    o.note(fmt("cases: unitary inverse %.0f perfect, %.0f general; cp mode %.0f", static_cast<double>(inv_perfect),
               static_cast<double>(inv_general), static_cast<double>(cp)));
    o.note(fmt("general bounds below 1: %.0f of %.0f; lemma checked on %.0f cases", static_cast<double>(informative_general),
               static_cast<double>(inv_general), static_cast<double>(lemma)));
    return o;
}

Outcome criterion_oracles() {
    Outcome o;
    double worst_ideal = 0.0;
    std::uint64_t seed = 9900;
    for (int n : {1, 2, 3, 4}) {
        KrausChannel c = build(NoiseKind::exact, n, 0, 0, Target::inverse_qft);
        KrausChannel p = build(NoiseKind::exact, n, 0, 0, Target::qft);
        for (std::size_t d : {1u, 2u, 4u}) {
            for (bool perfect : {true, false}) {
                if (n == 1 && d == 4 && perfect) continue;  // only two grid points
                HhlCase hc = make_case(n, d, perfect, ++seed, {c, p});
                for (long long l = 0; l < static_cast<long long>(hc.inst.big_n()); ++l) {
                    DensityOp ideal = DensityOp::pure(run_ideal(hc.inst, l));
                    double t = trace_distance(run_noisy(hc.inst, l, c, p), ideal);
                    worst_ideal = std::max(worst_ideal, t);
                    o.check(t <= 1e-9, fmt("run_noisy vs run_ideal trace distance %.3g", t));
                }
            }
        }
    }
    o.check(g_tally.worst_s3 <= kDualRouteTol, fmt("s3 dual-route gap %.3g", g_tally.worst_s3));
    o.check(g_tally.worst_t3 <= kDualRouteTol, fmt("t3 dual-route gap %.3g", g_tally.worst_t3));
    o.note(fmt("%.0f channels, worst s3 gap %.3g, worst t3 gap %.3g", static_cast<double>(g_tally.channels),
               g_tally.worst_s3, g_tally.worst_t3));
    o.note(fmt("worst exact-pipeline trace distance %.3g", worst_ideal));
    return o;
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace
}  // namespace qftv

int main() {
    using namespace qftv;
    const Criterion criteria[] = {
        {1, "composition of S1 and S2 into S3", criterion_composition},
        {2, "T-side composition and derived channels", criterion_t_side},
        {3, "phase coherence", criterion_phase_coherence},
        {4, "off-diagonal leakage and basis invariance", criterion_leakage_basis},
        {5, "protocol calibration", criterion_calibration},
        {6, "adversarial demo", criterion_demo},
        {7, "HHL fidelity, perfect case", criterion_main_perfect},
        {8, "HHL expectation values", criterion_expectation},
        {9, "HHL fidelity, general case and good sets", criterion_general},
        {10, "unitary-inverse and CP scenarios", criterion_unitary},
        {11, "oracle cross-checks", criterion_oracles},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  [%2d] %s (%zu checks, %.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.cases, secs);
        for (const auto &n : o.notes) std::printf("        %s\n", n.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of 11 criteria passed\n", 11 - failed);
    return failed == 0 ? 0 : 1;
}
