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

// qftv: runs an experiment config and writes a report.
//
// Exit status: 0 all cases pass, 1 some bound failed, 2 bad config or
// usage, 3 internal consistency check tripped, 4 I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "qftv/experiment.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBoundFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConsistency = 3;
constexpr int kExitIo = 4;

constexpr const char *kDemoConfig = R"({
  "schema_version": 1,
  "suite": "adversarial_demo",
  "seed": 20260101
})";

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed_override;
    std::string out;
    std::string format = "structured";
    std::optional<double> epsilon;
    std::optional<double> delta;
};

std::set<qftv::Suite> suites_for(const std::string &verb) {
    using qftv::Suite;
    if (verb == "audit") {
        return {Suite::closeness_audit, Suite::theorem_s3};
    }
    if (verb == "verify") {
        return {Suite::protocol_calibration};
    }
    if (verb == "certify") {
        return {Suite::hhl_perfect, Suite::hhl_general, Suite::hhl_unitary_inverse, Suite::hhl_cp_mode};
    }
    return {Suite::adversarial_demo};
}

int run(const std::string &verb, const Options &opt) {
    auto format = qftv::parse_report_format(opt.format);
    if (!format) {
        std::cerr << "qftv: unknown --format '" << opt.format << "' (structured or tabular)\n";
        return kExitUsage;
    }
    qftv::ExperimentConfig cfg;
    if (opt.config.empty()) {
        if (verb != "demo") {
            std::cerr << "qftv " << verb << ": --config is required\n";
            return kExitUsage;
        }
        cfg = qftv::parse_config_text(kDemoConfig, opt.seed_override);
    } else {
        cfg = qftv::load_config(opt.config, opt.seed_override);
    }
    if (!suites_for(verb).count(cfg.suite)) {
        std::cerr << "qftv " << verb << ": config suite '" << qftv::suite_name(cfg.suite)
                  << "' does not belong to this verb\n";
        return kExitUsage;
    }
    if (opt.epsilon) {
        cfg.epsilon = *opt.epsilon;
    }
    if (opt.delta) {
        cfg.delta = *opt.delta;
    }

    qftv::ReportRecord report = qftv::run_suite(cfg);
    std::string out = opt.out.empty() ? cfg.output : opt.out;
    if (out.empty() || out == "-") {
        std::cout << qftv::render_report(report, *format);
    } else {
        qftv::emit_report(report, *format, out);
    }
    std::cerr << "qftv " << verb << ": " << report.suite << " " << report.passed() << "/"
              << report.cases.size() << " cases pass (seed " << report.seed << ", config "
              << report.config_hash << ")\n";
    return report.all_pass() ? kExitPass : kExitBoundFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qftv: closeness audits, verification protocols and HHL bound certification"};
    app.require_subcommand(1, 1);

    Options opt;
    auto add_common = [&opt](CLI::App *sub, bool config_required) {
        auto *c = sub->add_option("--config", opt.config, "Experiment config (JSON, comments allowed)");
        if (config_required) {
            c->required()->check(CLI::ExistingFile);
        } else {
            c->check(CLI::ExistingFile);
        }
        sub->add_option("--seed-override", opt.seed_override, "Replace the config's master seed");
        sub->add_option("--out", opt.out, "Report path; '-' or absent means stdout unless the config sets one");
        sub->add_option("--format", opt.format, "structured (JSON) or tabular (CSV)")
            ->check(CLI::IsMember({"structured", "tabular", "json", "csv"}));
    };
    add_common(app.add_subcommand("audit", "Closeness audits (closeness_audit, theorem_s3)"), true);
    auto *verify = app.add_subcommand("verify", "Protocol calibration (protocol_calibration)");
    add_common(verify, true);
    verify->add_option("--epsilon", opt.epsilon, "Override plan.epsilon")->check(CLI::Range(1e-6, 0.5));
    verify->add_option("--delta", opt.delta, "Override plan.delta")->check(CLI::Range(1e-12, 0.5));
    add_common(app.add_subcommand("certify", "HHL bound certification (hhl_* suites)"), true);
    add_common(app.add_subcommand("demo", "Adversarial preset (adversarial_demo)"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }
    std::string verb = app.get_subcommands().front()->get_name();

    try {
        return run(verb, opt);
    } catch (const qftv::ConfigError &e) {
        std::cerr << "qftv " << verb << ": invalid config\n";
        for (const auto &p : e.problems()) {
            std::cerr << "  - " << p << "\n";
        }
        return kExitUsage;
    } catch (const qftv::ConsistencyError &e) {
        std::cerr << "qftv " << verb << ": internal consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::invalid_argument &e) {
        std::cerr << "qftv " << verb << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "qftv " << verb << ": " << e.what() << "\n";
        return kExitIo;
    }
}
