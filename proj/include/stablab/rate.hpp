#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stablab/clt.hpp"
#include "stablab/metrics.hpp"

namespace stablab {

/// Decay exponent (alpha - r) / alpha of the rate bound. Requires
/// 1 < alpha < 2 and alpha < r <= 2.
double theoretical_slope(double alpha, double r);

enum class MetricKind { zeta_upper, wasserstein1, cf_distance };

/// Distance measured along a rate curve.
struct MetricSpec {
  MetricKind kind = MetricKind::zeta_upper;
  double r = 2.0;  // zeta_upper only
  double t = 1.0;  // cf_distance only

  static MetricSpec zeta(double r) { return {MetricKind::zeta_upper, r, 0.0}; }
  static MetricSpec w1() { return {MetricKind::wasserstein1, 1.0, 0.0}; }
  static MetricSpec cf(double t) { return {MetricKind::cf_distance, 2.0, t}; }

  /// "zeta_upper_r=2", "wasserstein1", "cf_distance@t=1".
  std::string tag() const;
};

struct RateEntry {
  std::uint64_t n = 0;
  double distance = 0.0;
  double mc_stderr = 0.0;
};

struct RateCurve {
  std::vector<RateEntry> entries;
  std::string metric_tag;
  double alpha = 0.0;
  double r = 0.0;
  /// NaN when the metric has no predicted exponent (wasserstein1).
  double theoretical_slope = 0.0;
  /// Distance of an m-sample of the limit law to the law itself.
  double floor = 0.0;
  double floor_stderr = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // log of the fitted constant
  double r_squared = 0.0;
  double theoretical_slope = 0.0;
  std::size_t points_used = 0;
  bool floor_filtered = false;
};

struct RateOptions {
  /// Empirical distances of order r >= alpha are infinite over the whole
  /// line, so kappa-type metrics are integrated over [-window, window].
  double window = 10.0;
  QuadConfig quad{};
  EnsembleOptions ensemble{};
  std::size_t blocks = 10;
  bool measure_floor = true;
  /// Require gamma > r - alpha and a tail constant matched to the limit.
  bool enforce_conditions = true;
};

/// One ensemble per n (master seed stream_seed(master_seed, n)), every
/// metric evaluated on it against the limit law. mc_stderr is the standard
/// error over `blocks` equal blocks of the ensemble. The floor uses
/// stream_seed(master_seed, 0).
std::vector<RateCurve> rate_curves(const Summand& model, const StableParams& limit, const std::vector<MetricSpec>& metrics,
                                   const std::vector<std::uint64_t>& n_grid, std::size_t m, std::uint64_t master_seed,
                                   const RateOptions& options = {});

/// Single zeta_upper curve of order `order`.
RateCurve rate_curve(const Summand& model, const StableParams& limit, const MetricOrder& order,
                     const std::vector<std::uint64_t>& n_grid, std::size_t m, std::uint64_t master_seed,
                     const RateOptions& options = {});

/// Least squares of log distance on log n. Entries below floor_factor times
/// the curve's floor are dropped first unless fewer than three would remain;
/// floor_factor = 0 keeps everything.
RateFit fit_slope(const RateCurve& curve, double floor_factor = 3.0);

/// 2 kappa_r(V_1, limit) over the whole line, the n = 1 constant of the
/// rate bound. Throws DivergenceError when gamma <= r - alpha or the tails
/// are mismatched.
double rate_constant(const DoaModel& model, const StableParams& limit, const MetricOrder& order, const QuadConfig& quad = {});

struct ChiRow {
  double t = 0.0;
  double chi = 0.0;
  double chi_stderr = 0.0;
  double bound = 0.0;  // t^2 * zeta_upper
  double allowance = 0.0;  // 3 combined standard errors
  bool pass = false;
};

struct ChiBoundReport {
  std::uint64_t n = 0;
  std::size_t m = 0;
  double zeta_upper = 0.0;
  double zeta_stderr = 0.0;
  std::vector<ChiRow> rows;
  bool all_pass = false;
};

/// chi_t(S_n, limit) <= t^2 zeta_2 upper bound + 3 standard errors, for each t.
ChiBoundReport chi_bound_check(const Summand& model, const StableParams& limit, const std::vector<double>& t_values,
                               std::uint64_t n, std::size_t m, std::uint64_t master_seed, const RateOptions& options = {});

}  // namespace stablab
