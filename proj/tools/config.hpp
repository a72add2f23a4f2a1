#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablab/clt.hpp"
#include "stablab/rate.hpp"

namespace stablab::cli {

/// Command-line usage or configuration problem (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  std::string kind = "doa";  // "doa" or "stable"
  double alpha = 1.5;
  double scale = 1.0;
  double gamma = 0.6;
  double a = 1.0;
  double x0 = 4.0;
  std::optional<double> c;  // tail constant; matched to the limit when absent
};

struct RateConfig {
  std::size_t m = 100000;
  std::vector<std::uint64_t> n_grid{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<std::string> metrics{"zeta_upper", "cf_distance"};
  std::vector<double> cf_t{1.0};
  double window = 10.0;
  std::size_t blocks = 10;
  double floor_factor = 3.0;
  double slope_margin = 0.10;
  double min_r_squared = 0.9;
  bool enforce_conditions = true;
  double budget = 2e10;
};

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double emp_tol = 1e-8;
  double cap = 1e8;
};

struct SampleConfig {
  std::size_t count = 10;
};

struct CheckConfig {
  std::size_t power_gap_triples = 1000000;
  std::size_t homogeneity_pairs = 100;
  std::size_t regularity_triples = 20;
  std::size_t regularity_size = 20000;
  std::size_t ks_n = 100000;
  std::vector<double> ks_alphas{1.3, 1.5, 1.7};
  std::vector<std::uint64_t> stability_n{2, 16, 256};
  std::size_t stability_m = 100000;
  std::uint64_t chi_n = 1024;
  std::size_t chi_m = 100000;
  std::vector<double> t_values{0.5, 1.0, 2.0};
};

struct ExperimentConfig {
  ModelConfig model;
  double r = 2.0;
  std::uint64_t master_seed = 20240917;
  unsigned threads = 1;
  std::string out = ".";
  RateConfig rate;
  QuadratureConfig quadrature;
  SampleConfig sample;
  CheckConfig check;

  StableParams limit() const;
  /// The summand law: the DOA model with its (possibly matched) tail
  /// constant, or the limit law itself for control runs.
  Summand summand() const;
  DoaModel doa() const;
  RateOptions rate_options() const;
  std::vector<MetricSpec> metric_specs() const;
};

/// Defaults overlaid with `doc`. Unknown keys and wrong types throw UsageError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Cross-field checks for each command; throws DomainError naming the field.
void validate_for_sample(const ExperimentConfig& config);
void validate_for_rate(const ExperimentConfig& config);
void validate_for_check(const ExperimentConfig& config);

}  // namespace stablab::cli
