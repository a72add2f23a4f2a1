#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace stablab::cli {

enum ExitCode : int { kSuccess = 0, kAcceptanceFailure = 1, kUsageError = 2, kNumericFailure = 3 };

struct Overrides {
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

/// Writes samples.csv (column `value`) and resolved_config.json.
int cmd_sample(const ExperimentConfig& config, std::ostream& log);
/// Writes curve.csv, fit.json and resolved_config.json; 1 if any pass flag fails.
int cmd_rate(const ExperimentConfig& config, std::ostream& log);
/// Writes check_report.json and resolved_config.json; 1 if any check fails.
int cmd_check(const ExperimentConfig& config, std::ostream& log);

struct CheckResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// The property suites behind `check`, in report order.
std::vector<CheckResult> run_checks(const ExperimentConfig& config, std::ostream& log);

/// Loads the config (defaults when no path), applies overrides, runs the
/// command and maps failures to exit codes. Nothing is written on failure.
int run_command(const std::string& command, const std::optional<std::string>& config_path, const Overrides& overrides,
                std::ostream& log, std::ostream& err);

/// 17 significant digits.
std::string format_number(double v);

}  // namespace stablab::cli
