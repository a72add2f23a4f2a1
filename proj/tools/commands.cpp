#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include "stablab/errors.hpp"

namespace stablab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Collects output files and writes them only once every one is ready, each
// through a temporary name and a rename.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

  void commit() const {
    for (const auto& [name, content] : files_) {
      const fs::path target = dir_ / name;
      const fs::path temp = dir_ / ("." + name + ".tmp");
      {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
          std::error_code ignored;
          fs::remove(temp, ignored);
          throw UsageError("cannot write " + target.string());
        }
      }
      std::error_code ec;
      fs::rename(temp, target, ec);
      if (ec) {
        fs::remove(temp, ec);
        throw UsageError("cannot write " + target.string());
      }
    }
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

fs::path output_dir(const ExperimentConfig& config) {
  const fs::path dir(config.out);
  if (!fs::is_directory(dir)) throw UsageError("output directory does not exist: " + config.out);
  return dir;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_sample(const ExperimentConfig& config, std::ostream& log) {
  validate_for_sample(config);
  const auto dir = output_dir(config);
  EnsembleOptions opts;
  opts.threads = config.threads;
  opts.budget = config.rate.budget;
  const auto values = ensemble(PartialSumSpec{config.summand(), 1}, config.master_seed, config.sample.count, opts);

  std::string csv = "value\n";
  for (double v : values) csv += format_number(v) + "\n";
  OutputSet out(dir);
  out.add("samples.csv", std::move(csv));
  out.add("resolved_config.json", dump(to_json(config)));
  out.commit();
  log << "wrote " << values.size() << " " << config.model.kind << " draws to " << (dir / "samples.csv").string() << "\n";
  return kSuccess;
}

int cmd_rate(const ExperimentConfig& config, std::ostream& log) {
  validate_for_rate(config);
  const auto dir = output_dir(config);
  const auto limit = config.limit();
  const auto options = config.rate_options();
  const auto metrics = config.metric_specs();
  const bool control = config.model.kind == "stable";

  json fit_doc;
  fit_doc["model"] = config.model.kind;
  fit_doc["alpha"] = config.model.alpha;
  fit_doc["r"] = config.r;
  fit_doc["window"] = config.rate.window;
  if (!control) {
    // The n = 1 constant over the whole line comes first: it fails fast when
    // the tail conditions do not hold.
    const auto model = config.doa();
    QuadConfig windowed = options.quad;
    windowed.window = options.window;
    log << "computing the n = 1 constant\n";
    fit_doc["constant_C"] = rate_constant(model, limit, MetricOrder::of(config.r), options.quad);
    fit_doc["constant_C_window"] =
        zeta_r_upper(analytic_cdf(model), analytic_cdf(StableLaw(limit)), MetricOrder::of(config.r), windowed);
  } else {
    fit_doc["constant_C"] = nullptr;
    fit_doc["constant_C_window"] = nullptr;
  }

  log << "running " << config.rate.n_grid.size() << " ensembles of " << config.rate.m << " partial sums\n";
  const auto curves =
      rate_curves(config.summand(), limit, metrics, config.rate.n_grid, config.rate.m, config.master_seed, options);

  std::string csv = "n,distance,mc_stderr,metric_tag\n";
  bool all_pass = true;
  json fits = json::array();
  const RateCurve* zeta2 = nullptr;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& curve = curves[k];
    for (const auto& e : curve.entries) {
      csv += std::to_string(e.n) + "," + format_number(e.distance) + "," + format_number(e.mc_stderr) + "," +
             curve.metric_tag + "\n";
    }
    if (metrics[k].kind == MetricKind::zeta_upper && metrics[k].r == 2.0) zeta2 = &curve;

    const auto fit = fit_slope(curve, config.rate.floor_factor);
    json f;
    f["metric_tag"] = curve.metric_tag;
    f["slope"] = fit.slope;
    f["intercept"] = fit.intercept;
    f["r_squared"] = fit.r_squared;
    f["theoretical_slope"] = number_or_null(fit.theoretical_slope);
    f["points_used"] = fit.points_used;
    f["floor_filtered"] = fit.floor_filtered;
    f["floor"] = curve.floor;
    f["floor_stderr"] = curve.floor_stderr;
    bool pass = true;
    if (control) {
      f["pass_control_slope"] = std::abs(fit.slope) <= config.rate.slope_margin;
      pass = f["pass_control_slope"];
    } else if (std::isfinite(fit.theoretical_slope)) {
      f["pass_slope"] = fit.slope <= fit.theoretical_slope + config.rate.slope_margin;
      pass = f["pass_slope"];
      if (metrics[k].kind == MetricKind::zeta_upper) {
        f["pass_r_squared"] = fit.r_squared >= config.rate.min_r_squared;
        pass = pass && f["pass_r_squared"].get<bool>();
      }
    }
    f["pass"] = pass;
    all_pass = all_pass && pass;
    fits.push_back(f);
    log << curve.metric_tag << ": slope " << format_number(fit.slope) << ", r^2 " << format_number(fit.r_squared)
        << (pass ? " (pass)" : " (FAIL)") << "\n";
  }
  fit_doc["curves"] = fits;

  // chi_t <= t^2 * zeta_2 upper bound + 3 combined standard errors, per n.
  json chi = json::array();
  if (zeta2 != nullptr) {
    for (std::size_t k = 0; k < curves.size(); ++k) {
      if (metrics[k].kind != MetricKind::cf_distance) continue;
      const double t2 = metrics[k].t * metrics[k].t;
      for (std::size_t i = 0; i < curves[k].entries.size(); ++i) {
        const auto& c = curves[k].entries[i];
        const auto& z = zeta2->entries[i];
        const double bound = t2 * z.distance;
        const double allowance = 3.0 * std::hypot(c.mc_stderr, t2 * z.mc_stderr);
        const bool pass = c.distance <= bound + allowance;
        all_pass = all_pass && pass;
        chi.push_back({{"n", c.n}, {"t", metrics[k].t}, {"chi", c.distance}, {"bound", bound},
                       {"allowance", allowance}, {"pass", pass}});
      }
    }
  }
  fit_doc["chi_bound"] = chi;
  fit_doc["pass"] = all_pass;

  OutputSet out(dir);
  out.add("curve.csv", std::move(csv));
  out.add("fit.json", dump(fit_doc));
  out.add("resolved_config.json", dump(to_json(config)));
  out.commit();
  log << (all_pass ? "all acceptance flags pass\n" : "some acceptance flags FAIL\n");
  return all_pass ? kSuccess : kAcceptanceFailure;
}

int cmd_check(const ExperimentConfig& config, std::ostream& log) {
  validate_for_check(config);
  const auto dir = output_dir(config);
  const auto results = run_checks(config, log);

  json report;
  json list = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    list.push_back({{"name", r.name},
                    {"passed", r.passed},
                    {"statistic", number_or_null(r.statistic)},
                    {"threshold", number_or_null(r.threshold)},
                    {"detail", r.detail}});
    all_pass = all_pass && r.passed;
  }
  report["checks"] = list;
  report["all_pass"] = all_pass;

  OutputSet out(dir);
  out.add("check_report.json", dump(report));
  out.add("resolved_config.json", dump(to_json(config)));
  out.commit();
  log << (all_pass ? "all checks pass\n" : "some checks FAIL\n");
  return all_pass ? kSuccess : kAcceptanceFailure;
}

int run_command(const std::string& command, const std::optional<std::string>& config_path, const Overrides& overrides,
                std::ostream& log, std::ostream& err) {
  try {
    ExperimentConfig config = config_path ? load_config(*config_path) : ExperimentConfig{};
    if (overrides.out) config.out = *overrides.out;
    if (overrides.threads) config.threads = *overrides.threads;
    if (overrides.seed) config.master_seed = *overrides.seed;
    if (command == "sample") return cmd_sample(config, log);
    if (command == "rate") return cmd_rate(config, log);
    if (command == "check") return cmd_check(config, log);
    throw UsageError("unknown command " + command);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kUsageError;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace stablab::cli
