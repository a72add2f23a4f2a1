#include "stablab/rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool is_kappa(const MetricSpec& metric) { return metric.kind != MetricKind::cf_distance; }

double metric_order(const MetricSpec& metric) {
  switch (metric.kind) {
    case MetricKind::zeta_upper: return metric.r;
    case MetricKind::wasserstein1: return 1.0;
    case MetricKind::cf_distance: return 2.0;
  }
  return 0.0;
}

double predicted_slope(const MetricSpec& metric, double alpha) {
  if (metric.kind == MetricKind::wasserstein1) return std::numeric_limits<double>::quiet_NaN();
  const double r = metric_order(metric);
  if (!(r > alpha)) return std::numeric_limits<double>::quiet_NaN();
  return theoretical_slope(alpha, r);
}

void check_conditions(const Summand& model, const StableParams& limit, const std::vector<MetricSpec>& metrics) {
  limit.require_symmetric();
  if (const auto* sp = std::get_if<StableParams>(&model)) {
    sp->require_symmetric();
    require(sp->alpha == limit.alpha, "model alpha must equal the limit alpha");
    return;
  }
  const auto& m = std::get<DoaModel>(model);
  m.validate();
  require(m.alpha == limit.alpha, "model alpha must equal the limit alpha");
  const double c = tail_constant(limit);
  require(std::abs(m.c - c) <= 1e-6 * c, "tail constant c must match the limit law (expected " + fmt(c) + ")");
  for (const auto& metric : metrics) {
    const double r = metric_order(metric);
    if (metric.kind == MetricKind::wasserstein1) continue;
    require(r > m.alpha && r <= 2.0, "r must lie in (alpha, 2]");
    require(verify_strong_doa(m, r).condition_met,
            metric.kind == MetricKind::cf_distance ? "gamma must exceed 2 - alpha" : "gamma must exceed r - alpha");
  }
}

struct Context {
  const StableParams& limit;
  AnalyticCdf law;
  QuadConfig windowed;
  QuadConfig full;
};

std::vector<double> evaluate(const std::vector<MetricSpec>& metrics, const std::vector<double>& xs, const Context& ctx) {
  std::vector<double> out;
  out.reserve(metrics.size());
  std::optional<EmpiricalCdf> ecdf;
  for (const auto& metric : metrics) {
    if (is_kappa(metric) && !ecdf) ecdf.emplace(xs);
    switch (metric.kind) {
      case MetricKind::zeta_upper:
        out.push_back(zeta_r_upper(*ecdf, ctx.law, MetricOrder::of(metric.r), ctx.windowed));
        break;
      case MetricKind::wasserstein1:
        out.push_back(wasserstein1(*ecdf, ctx.law, ctx.full));
        break;
      case MetricKind::cf_distance:
        out.push_back(cf_distance(xs, ctx.limit, metric.t));
        break;
    }
  }
  return out;
}

struct Measurement {
  std::vector<double> value;
  std::vector<double> stderr_;
};

// Metrics on the whole sample plus the spread of the same metrics over
// contiguous blocks.
Measurement measure(const std::vector<MetricSpec>& metrics, const std::vector<double>& xs, std::size_t blocks,
                    const Context& ctx) {
  Measurement out{evaluate(metrics, xs, ctx), std::vector<double>(metrics.size(), 0.0)};
  if (blocks < 2 || xs.size() < 2 * blocks) return out;
  std::vector<std::vector<double>> per_block;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = xs.size() * b / blocks;
    const std::size_t end = xs.size() * (b + 1) / blocks;
    per_block.push_back(evaluate(metrics, std::vector<double>(xs.begin() + begin, xs.begin() + end), ctx));
  }
  const double nb = static_cast<double>(blocks);
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    double mean = 0.0;
    for (const auto& row : per_block) mean += row[k];
    mean /= nb;
    double ss = 0.0;
    for (const auto& row : per_block) ss += (row[k] - mean) * (row[k] - mean);
    out.stderr_[k] = std::sqrt(ss / (nb - 1.0) / nb);
  }
  return out;
}

Context make_context(const StableParams& limit, const RateOptions& options) {
  Context ctx{limit, analytic_cdf(StableLaw(limit)), options.quad, options.quad};
  ctx.windowed.window = options.window;
  ctx.full.window.reset();
  return ctx;
}

std::vector<double> draw(const Summand& model, std::uint64_t n, std::size_t m, std::uint64_t seed,
                         const RateOptions& options) {
  return ensemble(PartialSumSpec{model, n}, seed, m, options.ensemble);
}

}  // namespace

double theoretical_slope(double alpha, double r) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha < 2.0, "theoretical_slope: alpha must lie in (1, 2)");
  require(std::isfinite(r) && r > alpha && r <= 2.0, "theoretical_slope: r must lie in (alpha, 2]");
  return (alpha - r) / alpha;
}

std::string MetricSpec::tag() const {
  switch (kind) {
    case MetricKind::zeta_upper: return "zeta_upper_r=" + fmt(r);
    case MetricKind::wasserstein1: return "wasserstein1";
    case MetricKind::cf_distance: return "cf_distance@t=" + fmt(t);
  }
  return "";
}

std::vector<RateCurve> rate_curves(const Summand& model, const StableParams& limit, const std::vector<MetricSpec>& metrics,
                                   const std::vector<std::uint64_t>& n_grid, std::size_t m, std::uint64_t master_seed,
                                   const RateOptions& options) {
  require(!n_grid.empty(), "n_grid must not be empty");
  require(!metrics.empty(), "at least one metric is required");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    require(n_grid[i] >= 1, "n_grid entries must be at least 1");
    require(i == 0 || n_grid[i] > n_grid[i - 1], "n_grid must be strictly increasing");
  }
  require(m >= 2 * options.blocks, "m must be at least twice the number of blocks");
  require(options.window > 0.0, "window must be positive");
  if (options.enforce_conditions) {
    check_conditions(model, limit, metrics);
  } else {
    limit.require_symmetric();
    PartialSumSpec{model, 1}.validate();
  }

  const Context ctx = make_context(limit, options);
  const double alpha = summand_alpha(model);
  std::vector<RateCurve> curves(metrics.size());
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    curves[k].metric_tag = metrics[k].tag();
    curves[k].alpha = alpha;
    curves[k].r = metric_order(metrics[k]);
    curves[k].theoretical_slope = predicted_slope(metrics[k], alpha);
  }

  if (options.measure_floor) {
    const auto xs = draw(Summand{limit}, 1, m, stream_seed(master_seed, 0), options);
    const auto floor = measure(metrics, xs, options.blocks, ctx);
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      curves[k].floor = floor.value[k];
      curves[k].floor_stderr = floor.stderr_[k];
    }
  }

  for (std::uint64_t n : n_grid) {
    Measurement point;
    try {
      point = measure(metrics, draw(model, n, m, stream_seed(master_seed, n), options), options.blocks, ctx);
    } catch (const DivergenceError& e) {
      throw DivergenceError("n = " + std::to_string(n) + ": " + e.what(), e.increment_ratio(), e.reached());
    } catch (const NumericFailure& e) {
      throw NumericFailure("n = " + std::to_string(n) + ": " + e.what(), e.error_estimate());
    } catch (const BudgetError& e) {
      throw BudgetError("n = " + std::to_string(n) + ": " + e.what());
    }
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      curves[k].entries.push_back({n, point.value[k], point.stderr_[k]});
    }
  }
  return curves;
}

RateCurve rate_curve(const Summand& model, const StableParams& limit, const MetricOrder& order,
                     const std::vector<std::uint64_t>& n_grid, std::size_t m, std::uint64_t master_seed,
                     const RateOptions& options) {
  return rate_curves(model, limit, {MetricSpec::zeta(order.r)}, n_grid, m, master_seed, options).front();
}

RateFit fit_slope(const RateCurve& curve, double floor_factor) {
  require(curve.entries.size() >= 3, "fit_slope: need at least three entries");
  for (const auto& e : curve.entries) {
    require(std::isfinite(e.distance) && e.distance > 0.0, "fit_slope: distances must be positive");
  }
  RateFit fit;
  fit.theoretical_slope = curve.theoretical_slope;

  std::vector<RateEntry> used;
  if (floor_factor > 0.0 && curve.floor > 0.0) {
    for (const auto& e : curve.entries) {
      if (e.distance >= floor_factor * curve.floor) used.push_back(e);
    }
  }
  fit.floor_filtered = used.size() >= 3 && used.size() < curve.entries.size();
  if (used.size() < 3) used = curve.entries;
  fit.points_used = used.size();

  const double n = static_cast<double>(used.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& e : used) {
    mx += std::log(static_cast<double>(e.n));
    my += std::log(e.distance);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& e : used) {
    const double dx = std::log(static_cast<double>(e.n)) - mx;
    const double dy = std::log(e.distance) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 0.0, "fit_slope: n values must not all coincide");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    const double residual = syy - fit.slope * sxy;
    fit.r_squared = std::clamp(1.0 - residual / syy, 0.0, 1.0);
  }
  return fit;
}

double rate_constant(const DoaModel& model, const StableParams& limit, const MetricOrder& order, const QuadConfig& quad) {
  QuadConfig full = quad;
  full.window.reset();
  return zeta_r_upper(analytic_cdf(model), analytic_cdf(StableLaw(limit)), order, full);
}

ChiBoundReport chi_bound_check(const Summand& model, const StableParams& limit, const std::vector<double>& t_values,
                               std::uint64_t n, std::size_t m, std::uint64_t master_seed, const RateOptions& options) {
  require(n >= 1, "n must be at least 1");
  require(m >= 2 * options.blocks, "m must be at least twice the number of blocks");
  std::vector<MetricSpec> metrics{MetricSpec::zeta(2.0)};
  for (double t : t_values) {
    require(std::isfinite(t), "t values must be finite");
    metrics.push_back(MetricSpec::cf(t));
  }
  if (options.enforce_conditions) check_conditions(model, limit, {MetricSpec::cf(1.0)});

  const Context ctx = make_context(limit, options);
  const auto point = measure(metrics, draw(model, n, m, stream_seed(master_seed, n), options), options.blocks, ctx);

  ChiBoundReport report;
  report.n = n;
  report.m = m;
  report.zeta_upper = point.value[0];
  report.zeta_stderr = point.stderr_[0];
  report.all_pass = true;
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    ChiRow row;
    row.t = t_values[k];
    row.chi = point.value[k + 1];
    row.chi_stderr = point.stderr_[k + 1];
    const double t2 = row.t * row.t;
    row.bound = t2 * report.zeta_upper;
    row.allowance = 3.0 * std::hypot(row.chi_stderr, t2 * report.zeta_stderr);
    row.pass = row.chi <= row.bound + row.allowance;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace stablab
