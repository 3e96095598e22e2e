#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sharpconst/entire_probe.hpp"
#include "sharpconst/sharp_constants.hpp"

namespace sharpconst {

enum class Task { SweepM, SweepP, SweepN, LimitE, VerifyInequalities, Extract };
enum class Parity { All, Odd, Even };

struct NRange {
  int min = 1;
  int max = 1;
  int step = 1;
  Parity parity = Parity::All;

  /// Ascending; empty ranges are rejected by parse_config.
  std::vector<int> values() const;
};

struct RunConfig {
  Task task = Task::SweepM;
  double p = 2.0;
  int m = 1;
  std::string body = "box:1";
  DiffOperator D = DiffOperator::identity(1);
  NRange n;
  Resolution resolution;
  std::uint64_t seed = 0;
  int restarts = 16;
  bool stability_check = true;
  /// sweep-N exponent; defaults to 2m/p.
  std::optional<double> mu;
  /// verify-inequalities; empty = every suite.
  std::vector<std::string> suites;
  std::string out;
  std::string format = "csv";
  bool timing = false;
  /// The document as read, echoed into JSON reports.
  nlohmann::json echo;
};

/// Reads a schema-1 config document. Throws ConfigError naming the field.
///
///   {"schema": 1, "task": "sweep-M", "p": 2 | "inf", "m": 1, "body": "box:1",
///    "N": 1, "weights": [{"alpha": [1], "re": 1, "im": 0}],
///    "n": {"min": 1, "max": 12, "step": 1, "parity": "all|odd|even"},
///    "resolution": {"radial": 0, "angular": 0, "torus": 0},
///    "seed": 0, "restarts": 16, "stability_check": true, "mu": 2.0,
///    "suites": ["triangle"], "out": "path", "format": "csv|json"}
///
/// Without "weights" the operator is the identity for N = 0 and d^N/dx^N
/// for m = 1.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

struct RunRow {
  int n = 0;
  double p = 0.0;
  int N = 0;
  int m = 1;
  std::string body;
  std::string kind;
  double value = 0.0;
  std::string method;
  double stability_delta = 0.0;
  bool unstable = false;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
  bool failed = false;
  std::string error;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<CheckResult> checks;
};

struct RunReport {
  RunConfig config;
  std::vector<RunRow> rows;
  std::optional<ELimitEstimate> limit;
  std::optional<ExtractionReport> extraction;
  std::vector<SuiteResult> suites;

  bool verification_failed() const;
};

/// Executes the task with `jobs` workers. Rows come back in n order; a row
/// whose solve throws is marked failed and the sweep continues.
RunReport run(const RunConfig& config, int jobs = 1);

std::string to_csv(const RunReport& report);
nlohmann::json to_json(const RunReport& report);
/// Writes to a temporary file next to `path`, then renames it into place.
void write_atomic(const std::string& path, const std::string& content);

const std::vector<std::string>& suite_names();
/// Runs one property suite with fixed seeds derived from `seed`.
/// Throws ConfigError for an unknown name.
SuiteResult verify_suite(const std::string& name, std::uint64_t seed = 0);

std::string tool_version();

}  // namespace sharpconst
