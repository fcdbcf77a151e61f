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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qftv/experiment.hpp"
#include "qftv/random.hpp"

namespace qftv {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<Suite, std::string_view>, 8> kSuites{{
    {Suite::closeness_audit, "closeness_audit"},
    {Suite::protocol_calibration, "protocol_calibration"},
    {Suite::theorem_s3, "theorem_s3"},
    {Suite::hhl_perfect, "hhl_perfect"},
    {Suite::hhl_general, "hhl_general"},
    {Suite::hhl_unitary_inverse, "hhl_unitary_inverse"},
    {Suite::hhl_cp_mode, "hhl_cp_mode"},
    {Suite::adversarial_demo, "adversarial_demo"},
}};

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (const auto &s : items) {
        out += "\n  - " + s;
    }
    return out;
}

// Collects problems instead of throwing on the first.
class Checker {
 public:
    void fail(const std::string &where, const std::string &what) {
        problems.push_back(where + ": " + what);
    }

    void known_keys(const json &obj, const std::string &where, std::initializer_list<const char *> keys) {
        if (!obj.is_object()) {
            fail(where, "expected an object");
            return;
        }
        std::set<std::string> allowed;
        for (const char *k : keys) {
            allowed.insert(k);
        }
        for (const auto &item : obj.items()) {
            if (!allowed.count(item.key())) {
                fail(where + "." + item.key(), "unknown key");
            }
        }
    }

    template <class T>
    std::optional<T> get(const json &obj, const std::string &where, const char *key, bool required) {
        if (!obj.is_object() || !obj.contains(key)) {
            if (required) {
                fail(where + "." + key, "missing required field");
            }
            return std::nullopt;
        }
        try {
            return obj.at(key).get<T>();
        } catch (const json::exception &) {
            fail(where + "." + key, "wrong type");
            return std::nullopt;
        }
    }

    std::optional<std::uint64_t> get_u64(const json &obj, const std::string &where, const char *key,
                                         bool required) {
        if (!obj.is_object() || !obj.contains(key)) {
            if (required) {
                fail(where + "." + key, "missing required field");
            }
            return std::nullopt;
        }
        const json &v = obj.at(key);
        if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
            return v.get<std::uint64_t>();
        }
        fail(where + "." + key, "must be a non-negative integer");
        return std::nullopt;
    }

    int qubits(const json &obj, const std::string &where) {
        auto n = get<int>(obj, where, "n", true);
        if (!n) {
            return 2;
        }
        if (*n < 1 || *n > kMaxQubits) {
            fail(where + ".n", "qubit count " + std::to_string(*n) + " outside [1, " +
                                   std::to_string(kMaxQubits) + "]");
            return 2;
        }
        return *n;
    }

    std::vector<std::string> problems;
};

Target parse_target_field(Checker &ck, const json &obj, const std::string &where) {
    auto t = ck.get<std::string>(obj, where, "target", false);
    if (!t) {
        return Target::inverse_qft;
    }
    auto parsed = parse_target(*t);
    if (!parsed) {
        ck.fail(where + ".target", "expected 'inverse_qft' or 'qft'");
        return Target::inverse_qft;
    }
    return *parsed;
}

ChannelEntry parse_channel(Checker &ck, const json &obj, const std::string &where,
                           std::uint64_t master) {
    ck.known_keys(obj, where,
                  {"id", "target", "kind", "n", "thetas", "theta_scale", "p", "eps", "count", "seed", "path"});
    ChannelEntry e;
    e.id = ck.get<std::string>(obj, where, "id", true).value_or("");
    e.target = parse_target_field(ck, obj, where);
    auto kind = ck.get<std::string>(obj, where, "kind", true).value_or("exact");
    if (kind == "file") {
        e.path = ck.get<std::string>(obj, where, "path", true).value_or("");
        e.spec.n = ck.qubits(obj, where);
        return e;
    }
    auto parsed = parse_noise_kind(kind);
    if (!parsed) {
        ck.fail(where + ".kind", "unknown channel kind '" + kind + "'");
    }
    e.spec.kind = parsed.value_or(NoiseKind::exact);
    e.spec.n = ck.qubits(obj, where);
    e.spec.thetas = ck.get<std::vector<double>>(obj, where, "thetas", false).value_or(std::vector<double>{});
    e.spec.theta_scale = ck.get<double>(obj, where, "theta_scale", false).value_or(0.0);
    e.spec.p = ck.get<double>(obj, where, "p", false).value_or(0.0);
    e.spec.eps = ck.get<double>(obj, where, "eps", false).value_or(0.0);
    e.spec.count = ck.get<int>(obj, where, "count", false).value_or(1);
    auto seed = ck.get_u64(obj, where, "seed", false);
    e.spec.seed = seed ? *seed : derive_seed(master, "channel:" + e.id);
    std::size_t big_n = std::size_t{1} << e.spec.n;
    if (!e.spec.thetas.empty() && e.spec.thetas.size() != big_n) {
        ck.fail(where + ".thetas", "expected " + std::to_string(big_n) + " entries");
    }
    if (e.spec.p < 0.0 || e.spec.p > 1.0) {
        ck.fail(where + ".p", "must lie in [0, 1]");
    }
    if (e.spec.eps < 0.0 || e.spec.eps > 1.0) {
        ck.fail(where + ".eps", "must lie in [0, 1]");
    }
    if (e.spec.count < 1) {
        ck.fail(where + ".count", "must be positive");
    }
    return e;
}

PopulationSpec parse_population(Checker &ck, const json &obj) {
    const std::string where = "population";
    ck.known_keys(obj, where, {"families", "n", "count", "strength", "targets"});
    PopulationSpec pop;
    for (const auto &name : ck.get<std::vector<std::string>>(obj, where, "families", true)
                                .value_or(std::vector<std::string>{})) {
        auto k = parse_noise_kind(name);
        if (!k) {
            ck.fail(where + ".families", "unknown family '" + name + "'");
        } else {
            pop.families.push_back(*k);
        }
    }
    for (int n : ck.get<std::vector<int>>(obj, where, "n", true).value_or(std::vector<int>{})) {
        if (n < 1 || n > kMaxQubits) {
            ck.fail(where + ".n", "qubit count " + std::to_string(n) + " outside [1, " +
                                      std::to_string(kMaxQubits) + "]");
        } else {
            pop.ns.push_back(n);
        }
    }
    pop.count = ck.get<int>(obj, where, "count", false).value_or(1);
    pop.strength = ck.get<double>(obj, where, "strength", false).value_or(0.1);
    if (pop.count < 1) {
        ck.fail(where + ".count", "must be positive");
    }
    if (pop.strength < 0.0 || pop.strength > 1.0) {
        ck.fail(where + ".strength", "must lie in [0, 1]");
    }
    if (obj.contains("targets")) {
        pop.targets.clear();
        for (const auto &name : ck.get<std::vector<std::string>>(obj, where, "targets", false)
                                    .value_or(std::vector<std::string>{})) {
            auto t = parse_target(name);
            if (!t) {
                ck.fail(where + ".targets", "unknown target '" + name + "'");
            } else {
                pop.targets.push_back(*t);
            }
        }
    }
    return pop;
}

std::vector<Complex> parse_amplitudes(Checker &ck, const json &v, const std::string &where) {
    std::vector<Complex> out;
    if (!v.is_array()) {
        ck.fail(where, "expected an array of numbers or [re, im] pairs");
        return out;
    }
    for (const auto &item : v) {
        if (item.is_number()) {
            out.emplace_back(item.get<double>(), 0.0);
        } else if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
            out.emplace_back(item[0].get<double>(), item[1].get<double>());
        } else {
            ck.fail(where, "entries must be numbers or [re, im] pairs");
            return {};
        }
    }
    return out;
}

InstanceEntry parse_instance(Checker &ck, const json &obj, const std::string &where) {
    ck.known_keys(obj, where, {"id", "n", "spectrum", "b", "f", "perfect_case", "basis_seed"});
    InstanceEntry e;
    e.id = ck.get<std::string>(obj, where, "id", true).value_or("");
    e.n = ck.qubits(obj, where);
    e.spectrum = ck.get<std::vector<double>>(obj, where, "spectrum", true).value_or(std::vector<double>{});
    if (e.spectrum.empty()) {
        ck.fail(where + ".spectrum", "must be a nonempty list");
    }
    for (double s : e.spectrum) {
        if (s < 0.0 || s >= 1.0) {
            ck.fail(where + ".spectrum", "eigenvalues must lie in [0, 1)");
            break;
        }
    }
    if (obj.is_object() && obj.contains("b")) {
        e.b = parse_amplitudes(ck, obj.at("b"), where + ".b");
        if (!e.b.empty() && e.b.size() != e.spectrum.size()) {
            ck.fail(where + ".b", "length must equal the spectrum length");
        }
    }
    if (obj.is_object() && obj.contains("f")) {
        const json &f = obj.at("f");
        ck.known_keys(f, where + ".f", {"kind", "cutoff"});
        auto kind = ck.get<std::string>(f, where + ".f", "kind", true).value_or("identity");
        auto parsed = parse_f_kind(kind);
        if (!parsed) {
            ck.fail(where + ".f.kind", "unknown function '" + kind + "'");
        }
        e.f.kind = parsed.value_or(FKind::identity);
        e.f.cutoff = ck.get<double>(f, where + ".f", "cutoff", false).value_or(1.0);
        if (!(e.f.cutoff > 0.0)) {
            ck.fail(where + ".f.cutoff", "must be positive");
        }
    }
    e.perfect_case = ck.get<bool>(obj, where, "perfect_case", true).value_or(true);
    e.basis_seed = ck.get_u64(obj, where, "basis_seed", false);
    return e;
}

bool suite_uses_hhl(Suite s) {
    return s == Suite::hhl_perfect || s == Suite::hhl_general || s == Suite::hhl_unitary_inverse ||
           s == Suite::hhl_cp_mode;
}

bool suite_needs_p(Suite s) { return s != Suite::hhl_unitary_inverse; }

void resolve_pairs(Checker &ck, const json &doc, ExperimentConfig &cfg) {
    std::map<std::string, const ChannelEntry *> by_id;
    for (const auto &c : cfg.channels) {
        by_id[c.id] = &c;
    }
    std::map<std::string, const InstanceEntry *> inst_by_id;
    for (const auto &i : cfg.instances) {
        inst_by_id[i.id] = &i;
    }
    bool need_p = suite_needs_p(cfg.suite);
    if (!doc.contains("pairs")) {
        ck.fail("pairs", "missing required field for suite " + std::string(suite_name(cfg.suite)));
        return;
    }
    const json &pairs = doc.at("pairs");
    if (pairs.is_string() && pairs.get<std::string>() == "all") {
        for (const auto &inst : cfg.instances) {
            for (const auto &c : cfg.channels) {
                if (c.target != Target::inverse_qft || c.spec.n != inst.n) {
                    continue;
                }
                if (!need_p) {
                    cfg.pairs.push_back({c.id, "", inst.id});
                    continue;
                }
                for (const auto &p : cfg.channels) {
                    if (p.target == Target::qft && p.spec.n == inst.n) {
                        cfg.pairs.push_back({c.id, p.id, inst.id});
                    }
                }
            }
        }
        if (cfg.pairs.empty()) {
            ck.fail("pairs", "'all' produced no (C, P, instance) combination with matching n");
        }
        return;
    }
    if (!pairs.is_array()) {
        ck.fail("pairs", "expected \"all\" or a list of {c, p, instance}");
        return;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::string where = "pairs[" + std::to_string(i) + "]";
        const json &obj = pairs[i];
        ck.known_keys(obj, where, {"c", "p", "instance"});
        PairEntry pe;
        pe.c = ck.get<std::string>(obj, where, "c", true).value_or("");
        pe.p = ck.get<std::string>(obj, where, "p", need_p).value_or("");
        pe.instance = ck.get<std::string>(obj, where, "instance", true).value_or("");
        auto ci = by_id.find(pe.c);
        auto ii = inst_by_id.find(pe.instance);
        if (!pe.c.empty() && ci == by_id.end()) {
            ck.fail(where + ".c", "unresolved channel '" + pe.c + "'");
        }
        if (!pe.instance.empty() && ii == inst_by_id.end()) {
            ck.fail(where + ".instance", "unresolved instance '" + pe.instance + "'");
        }
        if (need_p && !pe.p.empty() && !by_id.count(pe.p)) {
            ck.fail(where + ".p", "unresolved channel '" + pe.p + "'");
        }
        if (ci != by_id.end() && ii != inst_by_id.end() && ci->second->spec.n != ii->second->n) {
            ck.fail(where, "channel and instance qubit counts differ");
        }
        if (need_p && by_id.count(pe.p) && ii != inst_by_id.end() &&
            by_id.at(pe.p)->spec.n != ii->second->n) {
            ck.fail(where, "P channel and instance qubit counts differ");
        }
        cfg.pairs.push_back(pe);
    }
}

}  // namespace

std::string_view suite_name(Suite s) {
    for (const auto &[k, name] : kSuites) {
        if (k == s) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
    for (const auto &[k, s] : kSuites) {
        if (s == name) {
            return k;
        }
    }
    return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config:" + join(problems)), problems_(std::move(problems)) {}

std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
    CounterRng rng(master, stream_id(name), index);
    return rng.next_u64();
}

ExperimentConfig parse_config(const json &input, std::optional<std::uint64_t> seed_override) {
    Checker ck;
    ExperimentConfig cfg;
    json doc = input;
    if (!doc.is_object()) {
        throw ConfigError({"config: top level must be an object"});
    }
    if (seed_override) {
        doc["seed"] = *seed_override;
    }
    ck.known_keys(doc, "config",
                  {"schema_version", "suite", "seed", "output", "plan", "eta", "reruns", "protocols",
                   "k_values", "observables", "channels", "population", "instances", "pairs"});
    auto version = ck.get<int>(doc, "config", "schema_version", true);
    if (version && *version != kConfigSchemaVersion) {
        ck.fail("config.schema_version", "unsupported version " + std::to_string(*version));
    }
    auto suite = ck.get<std::string>(doc, "config", "suite", true);
    if (suite) {
        auto parsed = parse_suite(*suite);
        if (!parsed) {
            ck.fail("config.suite", "unknown suite '" + *suite + "'");
        } else {
            cfg.suite = *parsed;
        }
    }
    cfg.seed = ck.get_u64(doc, "config", "seed", true).value_or(0);
    cfg.output = ck.get<std::string>(doc, "config", "output", false).value_or("");
    if (doc.contains("plan")) {
        const json &plan = doc.at("plan");
        ck.known_keys(plan, "plan", {"epsilon", "delta"});
        cfg.epsilon = ck.get<double>(plan, "plan", "epsilon", false).value_or(cfg.epsilon);
        cfg.delta = ck.get<double>(plan, "plan", "delta", false).value_or(cfg.delta);
    }
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
        ck.fail("plan.epsilon", "must lie in (0, 1)");
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
        ck.fail("plan.delta", "must lie in (0, 1)");
    }
    cfg.eta = ck.get<double>(doc, "config", "eta", false).value_or(cfg.eta);
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) {
        ck.fail("config.eta", "must lie in (0, 1]");
    }
    cfg.reruns = ck.get<int>(doc, "config", "reruns", false).value_or(cfg.reruns);
    if (cfg.reruns < 1) {
        ck.fail("config.reruns", "must be positive");
    }
    for (const auto &name : ck.get<std::vector<std::string>>(doc, "config", "protocols", false)
                                .value_or(std::vector<std::string>{})) {
        auto p = parse_protocol(name);
        if (!p || *p == Protocol::cp) {
            ck.fail("config.protocols", "unknown single-channel protocol '" + name + "'");
        } else {
            cfg.protocols.push_back(*p);
        }
    }
    if (doc.contains("k_values")) {
        cfg.k_values = ck.get<std::vector<int>>(doc, "config", "k_values", false).value_or(std::vector<int>{});
    }
    for (int k : cfg.k_values) {
        if (k < 2) {
            ck.fail("config.k_values", "every K must be at least 2");
            break;
        }
    }
    cfg.observables = ck.get<int>(doc, "config", "observables", false).value_or(cfg.observables);
    if (cfg.observables < 0) {
        ck.fail("config.observables", "must be non-negative");
    }

    if (doc.contains("channels")) {
        const json &chs = doc.at("channels");
        if (!chs.is_array()) {
            ck.fail("channels", "expected a list");
        } else {
            std::set<std::string> seen;
            for (std::size_t i = 0; i < chs.size(); ++i) {
                std::string where = "channels[" + std::to_string(i) + "]";
                ChannelEntry e = parse_channel(ck, chs[i], where, cfg.seed);
                if (!seen.insert(e.id).second) {
                    ck.fail(where + ".id", "duplicate id '" + e.id + "'");
                }
                cfg.channels.push_back(std::move(e));
            }
        }
    }
    if (doc.contains("population")) {
        cfg.population = parse_population(ck, doc.at("population"));
    }
    if (doc.contains("instances")) {
        const json &insts = doc.at("instances");
        if (!insts.is_array()) {
            ck.fail("instances", "expected a list");
        } else {
            std::set<std::string> seen;
            for (std::size_t i = 0; i < insts.size(); ++i) {
                std::string where = "instances[" + std::to_string(i) + "]";
                InstanceEntry e = parse_instance(ck, insts[i], where);
                if (!seen.insert(e.id).second) {
                    ck.fail(where + ".id", "duplicate id '" + e.id + "'");
                }
                cfg.instances.push_back(std::move(e));
            }
        }
    }

    bool channel_suite = cfg.suite == Suite::closeness_audit || cfg.suite == Suite::theorem_s3 ||
                         cfg.suite == Suite::protocol_calibration;
    if (suite && channel_suite && cfg.channels.empty() && !cfg.population) {
        ck.fail("channels", "suite needs 'channels' or 'population'");
    }
    if (suite && suite_uses_hhl(cfg.suite)) {
        if (cfg.instances.empty()) {
            ck.fail("instances", "suite needs at least one instance");
        }
        resolve_pairs(ck, doc, cfg);
        if (cfg.suite == Suite::hhl_general && cfg.k_values.empty()) {
            ck.fail("k_values", "hhl_general needs at least one K");
        }
    }

    if (!ck.problems.empty()) {
        throw ConfigError(ck.problems);
    }
    cfg.canonical = doc;
    return cfg;
}

ExperimentConfig parse_config_text(const std::string &text, std::optional<std::uint64_t> seed_override) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("parse error: ") + e.what()});
    }
    return parse_config(doc, seed_override);
}

ExperimentConfig load_config(const std::string &path, std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"cannot read config file '" + path + "'"});
    }
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config_text(buf.str(), seed_override);
    // channel files are relative to the config's directory
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    for (auto &c : cfg.channels) {
        if (!c.path.empty() && std::filesystem::path(c.path).is_relative()) {
            c.path = (base / c.path).string();
        }
    }
    return cfg;
}

std::string config_hash(const ExperimentConfig &cfg) {
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.canonical.dump())));
    return out;
}

}  // namespace qftv
