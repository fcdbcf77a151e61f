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

#ifndef QFTV_EXPERIMENT_HPP_
#define QFTV_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qftv/hhl.hpp"
#include "qftv/noise.hpp"
#include "qftv/verify.hpp"

namespace qftv {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportFormatVersion = 1;

enum class Suite {
  closeness_audit,
  protocol_calibration,
  theorem_s3,
  hhl_perfect,
  hhl_general,
  hhl_unitary_inverse,
  hhl_cp_mode,
  adversarial_demo,
};

std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

/// Every problem found while validating a config, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string> &problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct ChannelEntry {
  std::string id;
  Target target = Target::inverse_qft;
  NoiseSpec spec;
  std::string path;  // set for kind "file"; spec is then unused
};

struct PopulationSpec {
  std::vector<NoiseKind> families;
  std::vector<int> ns;
  int count = 1;           // channels per (family, n)
  double strength = 0.1;   // largest noise strength; channel j gets strength*(j+1)/count
  std::vector<Target> targets{Target::inverse_qft};
};

struct InstanceEntry {
  std::string id;
  int n = 2;
  std::vector<double> spectrum;
  std::vector<Complex> b;  // empty: uniform superposition
  ScalarFunction f;
  bool perfect_case = true;
  std::optional<std::uint64_t> basis_seed;
};

struct PairEntry {
  std::string c;
  std::string p;  // empty when the suite needs only C
  std::string instance;
};

struct ExperimentConfig {
  Suite suite = Suite::adversarial_demo;
  std::uint64_t seed = 0;
  std::string output;
  double epsilon = 0.05;
  double delta = 0.05;
  double eta = 0.2;
  int reruns = 200;
  std::vector<Protocol> protocols;
  std::vector<int> k_values{4, 8};
  int observables = 5;
  std::vector<ChannelEntry> channels;
  std::optional<PopulationSpec> population;
  std::vector<InstanceEntry> instances;
  std::vector<PairEntry> pairs;
  /// Parsed document with seed overrides applied; the hash input.
  nlohmann::json canonical;
};

/// Parses and validates. Throws ConfigError listing all problems.
ExperimentConfig parse_config(const nlohmann::json &doc,
                              std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig parse_config_text(const std::string &text,
                                   std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::string &path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

/// FNV-1a of the canonical (sorted-key, compact) serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig &cfg);

/// Seed for a named substream of the master seed (suite -> case -> shot).
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index = 0);

struct CaseRecord {
  std::string case_id;
  std::string kind;
  std::vector<std::pair<std::string, double>> eta_inputs;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // how measured compares with bound when pass is true
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  bool operator==(const CaseRecord &) const = default;
};

struct ReportRecord {
  std::string suite;
  std::string timestamp;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<CaseRecord> cases;

  std::size_t passed() const;
  bool all_pass() const { return passed() == cases.size(); }
  bool operator==(const ReportRecord &) const = default;
};

/// Runs every case. A failed bound is recorded, not thrown; a ConsistencyError
/// propagates. Cases are sorted by id.
ReportRecord run_suite(const ExperimentConfig &cfg);

enum class ReportFormat { structured, tabular };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Structured: JSON with a format/version header. Tabular: CSV, one row per
/// case, no timestamp.
std::string render_report(const ReportRecord &record, ReportFormat format);
ReportRecord parse_report(const std::string &structured);

/// Writes via a temporary file and rename.
void emit_report(const ReportRecord &record, ReportFormat format, const std::string &path);

std::string utc_timestamp();

}  // namespace qftv

#endif  // QFTV_EXPERIMENT_HPP_
