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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qftv/experiment.hpp"

namespace qftv {

namespace {

using json = nlohmann::json;

constexpr const char *kReportMagic = "qftv-report";

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// CSV field quoting for ids that might contain commas or quotes.
std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

json case_to_json(const CaseRecord &c) {
    json etas = json::object();
    for (const auto &[k, v] : c.eta_inputs) {
        etas[k] = v;
    }
    return {{"case_id", c.case_id}, {"kind", c.kind},       {"eta_inputs", etas},
            {"measured", c.measured}, {"bound", c.bound},   {"relation", c.relation},
            {"pass", c.pass},         {"details", c.details}};
}

CaseRecord case_from_json(const json &j) {
    CaseRecord c;
    c.case_id = j.at("case_id").get<std::string>();
    c.kind = j.at("kind").get<std::string>();
    for (const auto &[k, v] : j.at("eta_inputs").items()) {
        c.eta_inputs.emplace_back(k, v.get<double>());
    }
    c.measured = j.at("measured").get<double>();
    c.bound = j.at("bound").get<double>();
    c.relation = j.at("relation").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.details = j.at("details");
    return c;
}

std::string render_structured(const ReportRecord &r) {
    json cases = json::array();
    for (const auto &c : r.cases) {
        cases.push_back(case_to_json(c));
    }
    std::size_t passed = r.passed();
    json doc = {{"format", kReportMagic},
                {"format_version", kReportFormatVersion},
                {"suite", r.suite},
                {"timestamp", r.timestamp},
                {"config_hash", r.config_hash},
                {"seed", r.seed},
                {"cases", cases},
                {"summary", {{"cases", r.cases.size()}, {"passed", passed}, {"failed", r.cases.size() - passed}}}};
    return doc.dump(2) + "\n";
}

std::string render_tabular(const ReportRecord &r) {
    std::ostringstream out;
    out << "# " << kReportMagic << " " << kReportFormatVersion << "\n";
    out << "suite,case_id,eta_inputs,measured,bound,pass\n";
    for (const auto &c : r.cases) {
        std::string etas;
        for (const auto &[k, v] : c.eta_inputs) {
            if (!etas.empty()) {
                etas += ';';
            }
            etas += k + "=" + num(v);
        }
        out << csv_field(r.suite) << ',' << csv_field(c.case_id) << ',' << csv_field(etas) << ','
            << num(c.measured) << ',' << num(c.bound) << ',' << (c.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "structured" || name == "json") {
        return ReportFormat::structured;
    }
    if (name == "tabular" || name == "csv") {
        return ReportFormat::tabular;
    }
    return std::nullopt;
}

std::string render_report(const ReportRecord &record, ReportFormat format) {
    return format == ReportFormat::structured ? render_structured(record) : render_tabular(record);
}

ReportRecord parse_report(const std::string &structured) {
    json doc = json::parse(structured);
    if (doc.value("format", std::string()) != kReportMagic) {
        throw std::runtime_error("parse_report: not a qftv report");
    }
    int version = doc.at("format_version").get<int>();
    if (version != kReportFormatVersion) {
        throw std::runtime_error("parse_report: unsupported format_version " + std::to_string(version));
    }
    ReportRecord r;
    r.suite = doc.at("suite").get<std::string>();
    r.timestamp = doc.at("timestamp").get<std::string>();
    r.config_hash = doc.at("config_hash").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto &c : doc.at("cases")) {
        r.cases.push_back(case_from_json(c));
    }
    return r;
}

void emit_report(const ReportRecord &record, ReportFormat format, const std::string &path) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("emit_report: cannot open " + tmp.string());
        }
        out << render_report(record, format);
        out.flush();
        if (!out) {
            throw std::runtime_error("emit_report: write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("emit_report: rename to " + path + " failed: " + ec.message());
    }
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace qftv
