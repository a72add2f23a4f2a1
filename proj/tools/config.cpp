#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "stablab/errors.hpp"

namespace stablab::cli {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

class Section {
 public:
  Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw UsageError("config " + where() + " must be a JSON object");
  }

  template <class T>
  void read(const char* key, T& dst) {
    known_.insert(key);
    if (!doc_.contains(key)) return;
    try {
      dst = doc_.at(key).get<T>();
    } catch (const json::exception&) {
      throw UsageError("config field '" + name(key) + "' has the wrong type");
    }
  }

  void read(const char* key, std::optional<double>& dst) {
    known_.insert(key);
    if (!doc_.contains(key)) return;
    if (doc_.at(key).is_null()) {
      dst.reset();
      return;
    }
    double v = 0.0;
    read(key, v);
    dst = v;
  }

  Section child(const char* key) {
    known_.insert(key);
    static const json empty = json::object();
    return Section(doc_.contains(key) ? doc_.at(key) : empty, name(key));
  }

  void finish() const {
    for (const auto& item : doc_.items()) {
      if (!known_.count(item.key())) throw UsageError("unknown config key '" + name(item.key()) + "'");
    }
  }

 private:
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "document" : "section '" + path_ + "'"; }

  const json& doc_;
  std::string path_;
  std::set<std::string> known_;
};

void validate_model(const ExperimentConfig& c, bool theorem_range) {
  const auto& m = c.model;
  require(m.kind == "doa" || m.kind == "stable", "model.kind must be \"doa\" or \"stable\"");
  if (theorem_range || m.kind == "doa") {
    require(std::isfinite(m.alpha) && m.alpha > 1.0 && m.alpha < 2.0, "model.alpha must lie in (1, 2)");
  } else {
    require(std::isfinite(m.alpha) && m.alpha > 0.0 && m.alpha <= 2.0, "model.alpha must lie in (0, 2]");
  }
  require(std::isfinite(m.scale) && m.scale > 0.0, "model.scale must be positive");
  if (m.kind == "doa") {
    require(std::isfinite(m.gamma) && m.gamma > 0.0, "model.gamma must be positive");
    require(std::isfinite(m.x0) && m.x0 > 0.0, "model.x0 must be positive");
    require(!m.c || (std::isfinite(*m.c) && *m.c > 0.0), "model.c must be positive");
    c.doa().validate();
  }
  require(c.threads >= 1, "threads must be at least 1");
}

void validate_theorem(const ExperimentConfig& c, bool needs_cf, bool enforce) {
  const auto& m = c.model;
  require(std::isfinite(c.r) && c.r > m.alpha && c.r <= 2.0, "r must lie in (alpha, 2]");
  if (m.kind != "doa" || !enforce) return;
  require(m.gamma > c.r - m.alpha, "gamma must exceed r - alpha");
  if (needs_cf) require(m.gamma > 2.0 - m.alpha, "gamma must exceed 2 - alpha");
  const double matched = tail_constant(c.limit());
  require(!m.c || std::abs(*m.c - matched) <= 1e-6 * matched,
          "model.c must match the limit tail constant (omit it to use the matched value)");
}

}  // namespace

StableParams ExperimentConfig::limit() const { return StableParams::symmetric(model.alpha, model.scale); }

DoaModel ExperimentConfig::doa() const {
  const double c = model.c ? *model.c : tail_constant(limit());
  return DoaModel::make(model.alpha, c, model.gamma, model.a, model.x0);
}

Summand ExperimentConfig::summand() const {
  if (model.kind == "stable") return limit();
  return doa();
}

RateOptions ExperimentConfig::rate_options() const {
  RateOptions o;
  o.window = rate.window;
  o.quad.abs_tol = quadrature.abs_tol;
  o.quad.emp_tol = quadrature.emp_tol;
  o.quad.cap = quadrature.cap;
  o.ensemble.threads = threads;
  o.ensemble.budget = rate.budget;
  o.blocks = rate.blocks;
  o.enforce_conditions = rate.enforce_conditions;
  return o;
}

std::vector<MetricSpec> ExperimentConfig::metric_specs() const {
  std::vector<MetricSpec> out;
  for (const auto& name : rate.metrics) {
    if (name == "zeta_upper") {
      out.push_back(MetricSpec::zeta(r));
    } else if (name == "wasserstein1") {
      out.push_back(MetricSpec::w1());
    } else if (name == "cf_distance") {
      for (double t : rate.cf_t) out.push_back(MetricSpec::cf(t));
    } else {
      throw DomainError("rate.metrics: unknown metric \"" + name + "\" (use zeta_upper, wasserstein1, cf_distance)");
    }
  }
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  Section top(doc, "");
  {
    auto s = top.child("model");
    s.read("kind", c.model.kind);
    s.read("alpha", c.model.alpha);
    s.read("scale", c.model.scale);
    s.read("gamma", c.model.gamma);
    s.read("a", c.model.a);
    s.read("x0", c.model.x0);
    s.read("c", c.model.c);
    s.finish();
  }
  top.read("r", c.r);
  top.read("master_seed", c.master_seed);
  top.read("threads", c.threads);
  top.read("out", c.out);
  {
    auto s = top.child("rate");
    s.read("m", c.rate.m);
    s.read("n_grid", c.rate.n_grid);
    s.read("metrics", c.rate.metrics);
    s.read("cf_t", c.rate.cf_t);
    s.read("window", c.rate.window);
    s.read("blocks", c.rate.blocks);
    s.read("floor_factor", c.rate.floor_factor);
    s.read("slope_margin", c.rate.slope_margin);
    s.read("min_r_squared", c.rate.min_r_squared);
    s.read("enforce_conditions", c.rate.enforce_conditions);
    s.read("budget", c.rate.budget);
    s.finish();
  }
  {
    auto s = top.child("quadrature");
    s.read("abs_tol", c.quadrature.abs_tol);
    s.read("emp_tol", c.quadrature.emp_tol);
    s.read("cap", c.quadrature.cap);
    s.finish();
  }
  {
    auto s = top.child("sample");
    s.read("count", c.sample.count);
    s.finish();
  }
  {
    auto s = top.child("check");
    s.read("power_gap_triples", c.check.power_gap_triples);
    s.read("homogeneity_pairs", c.check.homogeneity_pairs);
    s.read("regularity_triples", c.check.regularity_triples);
    s.read("regularity_size", c.check.regularity_size);
    s.read("ks_n", c.check.ks_n);
    s.read("ks_alphas", c.check.ks_alphas);
    s.read("stability_n", c.check.stability_n);
    s.read("stability_m", c.check.stability_m);
    s.read("chi_n", c.check.chi_n);
    s.read("chi_m", c.check.chi_m);
    s.read("t_values", c.check.t_values);
    s.finish();
  }
  top.finish();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = {{"kind", c.model.kind}, {"alpha", c.model.alpha}, {"scale", c.model.scale},
                {"gamma", c.model.gamma}, {"a", c.model.a},         {"x0", c.model.x0}};
  if (c.model.kind == "doa") {
    j["model"]["c"] = c.doa().c;
  } else {
    j["model"]["c"] = c.model.c ? json(*c.model.c) : json(nullptr);
  }
  j["r"] = c.r;
  j["master_seed"] = c.master_seed;
  j["rate"] = {{"m", c.rate.m},
               {"n_grid", c.rate.n_grid},
               {"metrics", c.rate.metrics},
               {"cf_t", c.rate.cf_t},
               {"window", c.rate.window},
               {"blocks", c.rate.blocks},
               {"floor_factor", c.rate.floor_factor},
               {"slope_margin", c.rate.slope_margin},
               {"min_r_squared", c.rate.min_r_squared},
               {"enforce_conditions", c.rate.enforce_conditions},
               {"budget", c.rate.budget}};
  j["quadrature"] = {{"abs_tol", c.quadrature.abs_tol}, {"emp_tol", c.quadrature.emp_tol}, {"cap", c.quadrature.cap}};
  j["sample"] = {{"count", c.sample.count}};
  j["check"] = {{"power_gap_triples", c.check.power_gap_triples},
                {"homogeneity_pairs", c.check.homogeneity_pairs},
                {"regularity_triples", c.check.regularity_triples},
                {"regularity_size", c.check.regularity_size},
                {"ks_n", c.check.ks_n},
                {"ks_alphas", c.check.ks_alphas},
                {"stability_n", c.check.stability_n},
                {"stability_m", c.check.stability_m},
                {"chi_n", c.check.chi_n},
                {"chi_m", c.check.chi_m},
                {"t_values", c.check.t_values}};
  return j;
}

void validate_for_sample(const ExperimentConfig& c) {
  validate_model(c, false);
  require(c.sample.count >= 1, "sample.count must be at least 1");
}

void validate_for_rate(const ExperimentConfig& c) {
  validate_model(c, true);
  const auto metrics = c.metric_specs();
  bool needs_cf = false;
  for (const auto& m : metrics) needs_cf = needs_cf || m.kind == MetricKind::cf_distance;
  validate_theorem(c, needs_cf, c.rate.enforce_conditions);
  require(!c.rate.n_grid.empty(), "rate.n_grid must not be empty");
  for (std::size_t i = 0; i < c.rate.n_grid.size(); ++i) {
    require(c.rate.n_grid[i] >= 1, "rate.n_grid entries must be at least 1");
    require(i == 0 || c.rate.n_grid[i] > c.rate.n_grid[i - 1], "rate.n_grid must be strictly increasing");
  }
  require(c.rate.blocks >= 2, "rate.blocks must be at least 2");
  require(c.rate.m >= 2 * c.rate.blocks, "rate.m must be at least twice rate.blocks");
  require(c.rate.window > 0.0, "rate.window must be positive");
  require(!metrics.empty(), "rate.metrics must not be empty");
  for (double t : c.rate.cf_t) require(std::isfinite(t), "rate.cf_t entries must be finite");
  require(c.quadrature.abs_tol > 0.0 && c.quadrature.emp_tol > 0.0, "quadrature tolerances must be positive");
  require(c.quadrature.cap > 1.0, "quadrature.cap must exceed 1");
}

void validate_for_check(const ExperimentConfig& c) {
  validate_model(c, true);
  validate_theorem(c, true, true);
  require(c.check.ks_n >= 1 && c.check.stability_m >= 1, "check sample sizes must be at least 1");
  require(c.check.chi_m >= 2 * c.rate.blocks, "check.chi_m must be at least twice rate.blocks");
  require(c.check.regularity_size >= 2 * c.rate.blocks, "check.regularity_size must be at least twice rate.blocks");
  for (double a : c.check.ks_alphas) {
    require(std::isfinite(a) && a > 0.0 && a <= 2.0, "check.ks_alphas entries must lie in (0, 2]");
  }
  for (double t : c.check.t_values) require(std::isfinite(t), "check.t_values entries must be finite");
}

}  // namespace stablab::cli
