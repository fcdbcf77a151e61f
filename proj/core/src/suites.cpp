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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <set>

#include "qftv/channel_io.hpp"
#include "qftv/closeness.hpp"
#include "qftv/experiment.hpp"
#include "qftv/random.hpp"

namespace qftv {

namespace {

using json = nlohmann::json;

constexpr double kSlack = 1e-9;

double nonneg(double x) { return std::max(x, 0.0); }

std::string padded(std::size_t i, int width = 3) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, i);
    return buf;
}

json report_json(const ClosenessReport &r) {
    json j = {{"s1", r.s1}, {"s2", r.s2}, {"s3", r.s3}, {"t1", r.t1}, {"t2", r.t2}, {"t3", r.t3}};
    if (r.cp_trace) {
        j["cp_trace"] = *r.cp_trace;
    }
    return j;
}

json ensemble_json(const EnsembleResult &r) {
    json j = {{"mode", std::string(ensemble_mode_name(r.mode))},
              {"measured", r.measured},
              {"per_shift", r.per_shift},
              {"bound_formula", r.bound_formula}};
    if (r.k_param) {
        j["K"] = *r.k_param;
    }
    if (r.lemma_lhs) {
        j["lemma_lhs"] = *r.lemma_lhs;
        j["lemma_rhs"] = *r.lemma_rhs;
        j["lemma_pass"] = *r.lemma_pass;
    }
    return j;
}

struct NamedChannel {
    std::string id;
    Target target;
    std::shared_ptr<const KrausChannel> channel;
    int n;
};

KrausChannel build_channel(const ChannelEntry &e) {
    if (!e.path.empty()) {
        KrausChannel c = load_channel(e.path);
        if (c.dim() != (std::size_t{1} << e.spec.n)) {
            throw ConfigError({"channel '" + e.id + "': file dimension does not match n"});
        }
        return c;
    }
    return make_channel(e.spec, e.target);
}

NoiseSpec population_spec(NoiseKind kind, int n, double strength, std::uint64_t seed) {
    NoiseSpec s;
    s.kind = kind;
    s.n = n;
    s.seed = seed;
    switch (kind) {
        case NoiseKind::exact:
            break;
        case NoiseKind::diag_after:
        case NoiseKind::diag_before:
            s.theta_scale = strength * 3.141592653589793;
            break;
        case NoiseKind::depolarized:
            s.p = strength;
            break;
        case NoiseKind::perturbed_unitary:
            s.eps = strength;
            break;
        case NoiseKind::mixed_unitary:
            s.eps = strength;
            s.count = 3;
            break;
    }
    return s;
}

std::vector<NamedChannel> channel_population(const ExperimentConfig &cfg) {
    std::vector<NamedChannel> out;
    for (const auto &e : cfg.channels) {
        out.push_back({e.id, e.target, std::make_shared<KrausChannel>(build_channel(e)), e.spec.n});
    }
    if (cfg.population) {
        const PopulationSpec &pop = *cfg.population;
        for (Target t : pop.targets) {
            for (NoiseKind kind : pop.families) {
                for (int n : pop.ns) {
                    std::string stem = "pop/" + std::string(target_name(t)) + "/" +
                                       std::string(noise_kind_name(kind)) + "/n" + std::to_string(n);
                    for (int j = 0; j < pop.count; ++j) {
                        double strength = pop.strength * (j + 1) / pop.count;
                        std::uint64_t seed = derive_seed(cfg.seed, stem, static_cast<std::uint64_t>(j));
                        NoiseSpec spec = population_spec(kind, n, strength, seed);
                        out.push_back({stem + "/" + padded(static_cast<std::size_t>(j)), t,
                                       std::make_shared<KrausChannel>(make_channel(spec, t)), n});
                    }
                }
            }
        }
    }
    return out;
}

HHLInstance build_instance(const InstanceEntry &e) {
    CVector b(static_cast<Eigen::Index>(e.spectrum.size()));
    if (e.b.empty()) {
        b.setOnes();
    } else {
        for (std::size_t i = 0; i < e.b.size(); ++i) {
            b(static_cast<Eigen::Index>(i)) = e.b[i];
        }
    }
    if (!(b.norm() > 0.0)) {
        throw ConfigError({"instance '" + e.id + "': b is the zero vector"});
    }
    try {
        return HHLInstance::from_spectrum(e.spectrum, PureState::normalized(b), e.f, e.n, e.perfect_case,
                                          e.basis_seed);
    } catch (const std::invalid_argument &err) {
        throw ConfigError({"instance '" + e.id + "': " + err.what()});
    }
}

// ---------------------------------------------------------------- closeness

CaseRecord closeness_case(const NamedChannel &nc, bool derived) {
    const KrausChannel &c = *nc.channel;
    ClosenessReport rep = closeness_report(c);
    CaseRecord rec;
    rec.case_id = nc.id;
    rec.kind = "closeness";
    rec.relation = "<=";
    json checks = json::object();
    bool ok = true;
    auto check = [&](const std::string &name, double lhs, double rhs) {
        bool pass = lhs <= rhs + kSlack;
        checks[name] = {{"lhs", lhs}, {"rhs", rhs}, {"pass", pass}};
        ok = ok && pass;
    };
    if (nc.target == Target::inverse_qft) {
        rec.eta_inputs = {{"eta_s1", rep.eta_s1}, {"eta_s2", rep.eta_s2}};
        rec.measured = rep.eta_s3;
        rec.bound = rep.eta_s1 + rep.eta_s2;
        check("eta_s3<=eta_s1+eta_s2", rep.eta_s3, rep.eta_s1 + rep.eta_s2);
        check("s3<=min(s1,s2)", rep.s3, std::min(rep.s1, rep.s2));
        if (derived) {
            KrausChannel r = reflection_channel(nc.n);
            ClosenessReport cr = closeness_report(compose(c, r));
            ClosenessReport rc = closeness_report(compose(r, c));
            check("s1<=t1(C.R)", rep.s1, cr.t1);
            check("s2<=t2(C.R)", rep.s2, cr.t2);
            check("s1<=t1(R.C)", rep.s1, rc.t1);
            check("s2<=t2(R.C)", rep.s2, rc.t2);
            ClosenessReport cube = closeness_report(channel_power(c, 3));
            double e1 = nonneg(rep.eta_s1);
            double e2 = nonneg(rep.eta_s2);
            double e3 = nonneg(rep.eta_s3);
            double mid = std::sqrt(std::sqrt(e1) + std::sqrt(e2));
            check("eta_t1(C^3)", cube.eta_t1, std::sqrt(e1) + mid);
            check("eta_t2(C^3)", cube.eta_t2, std::sqrt(e2) + mid);
            check("eta_t3(C^3)", cube.eta_t3,
                  2.0 * std::sqrt(e3) + 2.0 * std::sqrt(2.0) * std::pow(e3, 0.25));
        }
    } else {
        rec.eta_inputs = {{"eta_t1", rep.eta_t1}, {"eta_t2", rep.eta_t2}};
        rec.measured = rep.eta_t3;
        rec.bound = rep.eta_t1 + rep.eta_t2;
        check("eta_t3<=eta_t1+eta_t2", rep.eta_t3, rep.eta_t1 + rep.eta_t2);
        check("t3<=min(t1,t2)", rep.t3, std::min(rep.t1, rep.t2));
    }
    rec.pass = ok;
    rec.details = {{"target", std::string(target_name(nc.target))},
                   {"kraus_count", c.kraus_count()},
                   {"measures", report_json(rep)},
                   {"checks", checks}};
    return rec;
}

std::vector<CaseRecord> run_closeness(const ExperimentConfig &cfg, bool derived) {
    std::vector<CaseRecord> out;
    for (const auto &nc : channel_population(cfg)) {
        out.push_back(closeness_case(nc, derived));
    }
    return out;
}

// ---------------------------------------------------------------- protocols

double exact_measure(Protocol p, const KrausChannel &c) {
    switch (p) {
        case Protocol::ta1:
            return s1_measure(c);
        case Protocol::ta2:
            return s2_measure(c);
        case Protocol::tp1:
            return t1_measure(c);
        case Protocol::tp2:
            return t2_measure(c);
        case Protocol::cp:
            break;
    }
    throw std::invalid_argument("exact_measure: no single-channel measure for CP");
}

std::vector<CaseRecord> run_calibration(const ExperimentConfig &cfg) {
    std::vector<CaseRecord> out;
    ShotPlan plan = ShotPlan::calibrated(cfg.epsilon, cfg.delta);
    double r = cfg.reruns;
    double allowance = cfg.delta + 3.0 * std::sqrt(cfg.delta * (1.0 - cfg.delta) / r);
    for (const auto &nc : channel_population(cfg)) {
        std::vector<Protocol> protocols = cfg.protocols;
        if (protocols.empty()) {
            protocols = nc.target == Target::inverse_qft ? std::vector<Protocol>{Protocol::ta1, Protocol::ta2}
                                                         : std::vector<Protocol>{Protocol::tp1, Protocol::tp2};
        }
        for (Protocol p : protocols) {
            std::string id = nc.id + "/" + std::string(protocol_name(p));
            double exact = success_probability(p, *nc.channel);
            double measure = exact_measure(p, *nc.channel);
            if (std::abs(exact - measure) > kSlack) {
                throw ConsistencyError(id + ": per-shot success probability " + std::to_string(exact) +
                                       " differs from the exact measure " + std::to_string(measure));
            }
            int failures = 0;
            double est_sum = 0.0;
            for (int k = 0; k < cfg.reruns; ++k) {
                std::uint64_t seed = derive_seed(cfg.seed, id, static_cast<std::uint64_t>(k));
                ProtocolResult res = run_protocol(p, *nc.channel, plan, seed, cfg.eta);
                est_sum += res.estimate;
                if (std::abs(res.estimate - exact) > cfg.epsilon) {
                    ++failures;
                }
            }
            CaseRecord rec;
            rec.case_id = id;
            rec.kind = "protocol";
            rec.eta_inputs = {{"exact_measure", measure}};
            rec.measured = failures / r;
            rec.bound = allowance;
            rec.relation = "<=";
            rec.pass = rec.measured <= rec.bound;
            rec.details = {{"protocol", std::string(protocol_name(p))},
                           {"epsilon", plan.epsilon},
                           {"delta", plan.delta},
                           {"shots", plan.shots},
                           {"reruns", cfg.reruns},
                           {"failures", failures},
                           {"mean_estimate", est_sum / r},
                           {"exact", exact}};
            out.push_back(std::move(rec));
        }
    }
    return out;
}

// ---------------------------------------------------------------- HHL suites

class Resolver {
 public:
    explicit Resolver(const ExperimentConfig &cfg) : cfg_(cfg) {}

    const KrausChannel &channel(const std::string &id) {
        auto it = channels_.find(id);
        if (it != channels_.end()) {
            return *it->second;
        }
        for (const auto &e : cfg_.channels) {
            if (e.id == id) {
                auto ch = std::make_shared<KrausChannel>(build_channel(e));
                channels_[id] = ch;
                return *ch;
            }
        }
        throw ConfigError({"unresolved channel '" + id + "'"});
    }

    const HHLInstance &instance(const std::string &id) {
        auto it = instances_.find(id);
        if (it != instances_.end()) {
            return *it->second;
        }
        for (const auto &e : cfg_.instances) {
            if (e.id == id) {
                auto inst = std::make_shared<HHLInstance>(build_instance(e));
                instances_[id] = inst;
                return *inst;
            }
        }
        throw ConfigError({"unresolved instance '" + id + "'"});
    }

    const KrausChannel &unitary(const std::string &id) {
        const KrausChannel &c = channel(id);
        if (!c.is_unitary()) {
            throw ConfigError({"channel '" + id + "' must be unitary for this suite"});
        }
        return c;
    }

 private:
    const ExperimentConfig &cfg_;
    std::map<std::string, std::shared_ptr<KrausChannel>> channels_;
    std::map<std::string, std::shared_ptr<HHLInstance>> instances_;
};

std::string pair_id(const PairEntry &p) {
    std::string id = p.c;
    if (!p.p.empty()) {
        id += "+" + p.p;
    }
    return id + "@" + p.instance;
}

CaseRecord ensemble_case(const std::string &id, const EnsembleResult &r) {
    CaseRecord rec;
    rec.case_id = id;
    rec.kind = "ensemble";
    rec.eta_inputs = r.etas;
    rec.measured = r.mean;
    rec.bound = r.bound;
    rec.relation = r.measured == "fidelity" ? ">=" : "<=";
    rec.pass = r.pass;
    rec.details = ensemble_json(r);
    rec.details["vacuous"] = r.measured == "fidelity" ? r.bound <= 0.0 : r.bound >= 1.0;
    return rec;
}

std::vector<CaseRecord> run_hhl_perfect(const ExperimentConfig &cfg) {
    Resolver res(cfg);
    std::vector<CaseRecord> out;
    for (const auto &pr : cfg.pairs) {
        const HHLInstance &inst = res.instance(pr.instance);
        if (!inst.perfect_case()) {
            throw ConfigError({"hhl_perfect: instance '" + pr.instance + "' is not a perfect-case instance"});
        }
        const KrausChannel &c = res.channel(pr.c);
        const KrausChannel &p = res.channel(pr.p);
        std::string id = pair_id(pr);
        EnsembleResult ens = ensemble_fidelity(inst, c, p);
        out.push_back(ensemble_case(id + "/fidelity", ens));
        for (int j = 0; j < cfg.observables; ++j) {
            CounterRng rng(derive_seed(cfg.seed, id + "/observable", static_cast<std::uint64_t>(j)),
                           stream_id("observable"));
            CMatrix m = random_contraction(inst.total_dim(), rng);
            ExpectationCheck ex = expectation_error(inst, c, p, m);
            CaseRecord rec;
            rec.case_id = id + "/expectation/" + padded(static_cast<std::size_t>(j));
            rec.kind = "expectation";
            rec.eta_inputs = ens.etas;
            rec.measured = ex.mean_abs_error;
            rec.bound = ex.bound;
            rec.relation = "<=";
            rec.pass = ex.pass;
            rec.details = {{"bound_formula", "2 (eta1^1/4 + eta2^1/4)"}};
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<CaseRecord> run_hhl_general(const ExperimentConfig &cfg) {
    Resolver res(cfg);
    std::vector<CaseRecord> out;
    std::set<std::string> seen_inst;
    std::set<std::string> seen_lemma;
    for (const auto &pr : cfg.pairs) {
        const HHLInstance &inst = res.instance(pr.instance);
        const KrausChannel &c = res.channel(pr.c);
        const KrausChannel &p = res.channel(pr.p);
        std::string id = pair_id(pr);
        for (int k : cfg.k_values) {
            std::string kid = "K" + padded(static_cast<std::size_t>(k), 4);
            out.push_back(ensemble_case(id + "/fidelity/" + kid, ensemble_fidelity(inst, c, p, k)));
            if (seen_inst.insert(pr.instance + "/" + kid).second) {
                GoodSetDecomposition gsd = good_set_decompose(inst, k);
                CaseRecord rec;
                rec.case_id = "goodset/" + pr.instance + "/" + kid;
                rec.kind = "good_set";
                rec.relation = "<=";
                rec.bound = 2.0 / (k - 1.0);
                rec.pass = true;
                json sets = json::array();
                for (const auto &gs : gsd.sets) {
                    rec.measured = std::max(rec.measured, gs.tail_mass);
                    bool norm_ok = std::abs(gs.norm_sq - 1.0) <= 1e-12;
                    rec.pass = rec.pass && gs.within_bound && norm_ok;
                    sets.push_back({{"sigma", gs.sigma},
                                    {"p", gs.p_floor},
                                    {"tail_mass", gs.tail_mass},
                                    {"norm_sq", gs.norm_sq},
                                    {"size", gs.members.size()}});
                }
                rec.details = {{"K", k}, {"sets", sets}};
                out.push_back(std::move(rec));
            }
            if (seen_lemma.insert(pr.c + "@" + pr.instance + "/" + kid).second) {
                GoodSetDecomposition gsd = good_set_decompose(inst, k);
                for (std::size_t e = 0; e < gsd.sets.size(); ++e) {
                    LemmaErrorCheck lc = lemma_error_terms(c, gsd.sets[e]);
                    CaseRecord rec;
                    rec.case_id = "lemma/" + pr.c + "@" + pr.instance + "/" + kid + "/e" + padded(e);
                    rec.kind = "lemma_error";
                    rec.eta_inputs = {{"eta_s3_c", lc.eta}, {"delta", lc.delta}};
                    rec.measured = lc.sum_sq;
                    rec.bound = lc.bound;
                    rec.relation = "<=";
                    rec.pass = lc.pass;
                    rec.details = {{"K", k}, {"bound_formula", "2 eta |G|^2 + 18 delta"}};
                    out.push_back(std::move(rec));
                }
            }
        }
    }
    return out;
}

template <class Fn>
std::vector<CaseRecord> run_distance_suite(const ExperimentConfig &cfg, Fn &&fn) {
    Resolver res(cfg);
    std::vector<CaseRecord> out;
    for (const auto &pr : cfg.pairs) {
        const HHLInstance &inst = res.instance(pr.instance);
        std::string id = pair_id(pr);
        if (inst.perfect_case()) {
            out.push_back(ensemble_case(id + "/perfect", fn(res, pr, inst, std::nullopt)));
        } else {
            for (int k : cfg.k_values) {
                out.push_back(ensemble_case(id + "/general/K" + padded(static_cast<std::size_t>(k), 4),
                                            fn(res, pr, inst, k)));
            }
        }
    }
    return out;
}

std::vector<CaseRecord> run_demo(const ExperimentConfig &cfg) {
    std::vector<CaseRecord> out;
    NoiseSpec preset = adversarial_preset();
    KrausChannel c = make_c_channel(preset);
    KrausChannel p = unitary_channel(qft_matrix(preset.n));
    if (cfg.epsilon >= cfg.eta / 2.0) {
        throw ConfigError({"adversarial_demo: plan.epsilon must be below eta/2"});
    }
    ShotPlan plan = ShotPlan::calibrated(cfg.epsilon, cfg.delta);
    ProtocolResult ta1 = run_ta1(c, plan, derive_seed(cfg.seed, "demo/TA1"), cfg.eta);
    ProtocolResult ta2 = run_ta2(c, plan, derive_seed(cfg.seed, "demo/TA2"), cfg.eta);
    S3Decision dec = decide_s3(ta1, ta2, cfg.eta, cfg.epsilon);
    ClosenessReport rep = closeness_report(c, p);

    auto protocol_json = [](const ProtocolResult &r) {
        return json{{"successes", r.successes}, {"shots", r.shots_used}, {"seed", r.seed},
                    {"threshold", r.threshold}, {"accept", r.accept}};
    };
    CaseRecord r1;
    r1.case_id = "demo/1_ta1";
    r1.kind = "protocol";
    r1.eta_inputs = {{"s1", rep.s1}};
    r1.measured = ta1.estimate;
    r1.bound = 1.0;
    r1.relation = "==";
    r1.pass = ta1.estimate == 1.0;
    r1.details = protocol_json(ta1);
    out.push_back(r1);

    CaseRecord r2;
    r2.case_id = "demo/2_ta2";
    r2.kind = "protocol";
    r2.eta_inputs = {{"s2", rep.s2}};
    r2.measured = ta2.estimate;
    r2.bound = 1.0;
    r2.relation = "<";
    r2.pass = ta2.estimate < 1.0;
    r2.details = protocol_json(ta2);
    out.push_back(r2);

    CaseRecord r3;
    r3.case_id = "demo/3_s3_exact";
    r3.kind = "closeness";
    r3.measured = rep.s3;
    r3.bound = 1e-12;
    r3.relation = "<=";
    r3.pass = std::abs(rep.s3) <= 1e-12;
    r3.details = {{"measures", report_json(rep)}};
    out.push_back(r3);

    CaseRecord r4;
    r4.case_id = "demo/4_decision";
    r4.kind = "decision";
    r4.eta_inputs = {{"eta", cfg.eta}, {"epsilon", cfg.epsilon}};
    r4.measured = dec.accept ? 1.0 : 0.0;
    r4.bound = 0.0;
    r4.relation = "==";
    r4.pass = !dec.accept;
    r4.details = {{"claim", dec.claim}, {"certified_eta", dec.certified_eta}};
    out.push_back(r4);

    CVector b = CVector::Ones(2);
    HHLInstance inst = HHLInstance::from_spectrum({0.25, 0.5}, PureState::normalized(b),
                                                  ScalarFunction{FKind::identity, 1.0}, preset.n, true,
                                                  std::nullopt);
    EnsembleResult ens = ensemble_fidelity(inst, c, p);
    CaseRecord r5 = ensemble_case("demo/5_hhl_fidelity", ens);
    r5.bound = 0.6;
    r5.relation = "<";
    r5.pass = ens.mean < 0.6;
    r5.details["theorem_bound"] = ens.bound;
    r5.details["theorem_pass"] = ens.pass;
    out.push_back(r5);
    out.push_back(ensemble_case("demo/6_hhl_theorem", ens));
    return out;
}

}  // namespace

std::size_t ReportRecord::passed() const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [](const CaseRecord &c) { return c.pass; }));
}

ReportRecord run_suite(const ExperimentConfig &cfg) {
    ReportRecord rec;
    rec.suite = std::string(suite_name(cfg.suite));
    rec.timestamp = utc_timestamp();
    rec.config_hash = config_hash(cfg);
    rec.seed = cfg.seed;
    switch (cfg.suite) {
        case Suite::closeness_audit:
            rec.cases = run_closeness(cfg, false);
            break;
        case Suite::theorem_s3:
            rec.cases = run_closeness(cfg, true);
            break;
        case Suite::protocol_calibration:
            rec.cases = run_calibration(cfg);
            break;
        case Suite::hhl_perfect:
            rec.cases = run_hhl_perfect(cfg);
            break;
        case Suite::hhl_general:
            rec.cases = run_hhl_general(cfg);
            break;
        case Suite::hhl_unitary_inverse:
            rec.cases = run_distance_suite(cfg, [](Resolver &res, const PairEntry &pr, const HHLInstance &inst,
                                                   std::optional<int> k) {
                return ensemble_unitary_inverse(inst, res.unitary(pr.c), k);
            });
            break;
        case Suite::hhl_cp_mode:
            rec.cases = run_distance_suite(cfg, [](Resolver &res, const PairEntry &pr, const HHLInstance &inst,
                                                   std::optional<int> k) {
                return ensemble_cp_mode(inst, res.unitary(pr.c), res.unitary(pr.p), k);
            });
            break;
        case Suite::adversarial_demo:
            rec.cases = run_demo(cfg);
            break;
    }
    std::stable_sort(rec.cases.begin(), rec.cases.end(),
                     [](const CaseRecord &a, const CaseRecord &b) { return a.case_id < b.case_id; });
    return rec;
}

}  // namespace qftv
