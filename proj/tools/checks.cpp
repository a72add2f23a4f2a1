#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "checks.hpp"
#include "stablab/errors.hpp"

namespace stablab::cli {

namespace {

// Symmetric, centered families for the metric-axiom checks.
double family_draw(int family, double scale, Rng& g) {
  switch (family) {
    case 0: {
      const double radius = std::sqrt(-2.0 * std::log(g.uniform()));
      return scale * radius * std::cos(2.0 * std::numbers::pi * g.uniform());
    }
    case 1: {
      const double u = g.uniform();
      return scale * (u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u)));
    }
    case 2:
      return scale * (2.0 * g.uniform() - 1.0);
    default: {
      const double u = g.uniform();
      return scale * std::log(u / (1.0 - u));
    }
  }
}

struct Family {
  int kind;
  double scale;
};

Family pick_family(Rng& g) {
  const int kind = static_cast<int>(g.next_u64() % 4);
  return {kind, g.uniform(0.5, 2.0)};
}

std::vector<double> family_sample(const Family& f, Rng& g, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = family_draw(f.kind, f.scale, g);
  return out;
}

std::vector<double> family_sample(Rng& g, std::size_t n) { return family_sample(pick_family(g), g, n); }

std::vector<double> plus(const std::vector<double>& x, const std::vector<double>& z) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + z[i];
  return out;
}

std::vector<double> slice(const std::vector<double>& x, std::size_t b, std::size_t blocks) {
  return {x.begin() + x.size() * b / blocks, x.begin() + x.size() * (b + 1) / blocks};
}

double ek(const std::vector<double>& x, const std::vector<double>& y, double r) {
  return kappa_r(EmpiricalCdf(x), EmpiricalCdf(y), MetricOrder::of(r));
}

}  // namespace

CheckResult check_power_gap(const ExperimentConfig& c, std::uint64_t seed) {
  Rng g(seed);
  double worst = HUGE_VAL;
  for (std::size_t i = 0; i < c.check.power_gap_triples; ++i) {
    const double x = g.uniform(-1e3, 1e3);
    const double y = g.uniform(-1e3, 1e3);
    const double r = g.uniform(1.0, 2.0);
    worst = std::min(worst, power_gap(x, y, r));
  }
  return {"power_gap_sweep", worst >= -1e-12, worst, -1e-12,
          "minimum gap over " + std::to_string(c.check.power_gap_triples) + " random (x, y, r)"};
}

CheckResult check_homogeneity(const ExperimentConfig& c, std::uint64_t seed) {
  Rng g(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.check.homogeneity_pairs; ++i) {
    auto s = family_sample(g, 100 + g.next_u64() % 900);
    auto t = family_sample(g, 100 + g.next_u64() % 900);
    const double sign = g.uniform() < 0.5 ? -1.0 : 1.0;
    const double factor = sign * std::exp(g.uniform(std::log(0.1), std::log(10.0)));
    const double r = g.uniform(1.0, 2.0);
    const double base = ek(s, t, r);
    for (auto& v : s) v *= factor;
    for (auto& v : t) v *= factor;
    const double expected = std::pow(std::abs(factor), r) * base;
    worst = std::max(worst, std::abs(ek(s, t, r) - expected) / expected);
  }
  return {"kappa_homogeneity", worst <= 1e-9, worst, 1e-9, "max relative deviation from |c|^r scaling"};
}

CheckResult check_triangle(const ExperimentConfig& c, std::uint64_t seed) {
  Rng g(seed);
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < c.check.regularity_triples; ++i) {
    const auto x = family_sample(g, 200 + g.next_u64() % 600);
    const auto y = family_sample(g, 200 + g.next_u64() % 600);
    const auto z = family_sample(g, 200 + g.next_u64() % 600);
    const double r = g.uniform(1.0, 2.0);
    const double xy = ek(x, y, r);
    const double yz = ek(y, z, r);
    worst = std::max(worst, (ek(x, z, r) - xy - yz) / (xy + yz));
  }
  return {"kappa_triangle", worst <= 1e-9, worst, 1e-9, "max of (k(X,Z) - k(X,Y) - k(Y,Z)) / (k(X,Y) + k(Y,Z))"};
}

CheckResult check_regularity(const ExperimentConfig& c, std::uint64_t seed) {
  Rng g(seed);
  const std::size_t n = c.check.regularity_size;
  const std::size_t blocks = c.rate.blocks;
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < c.check.regularity_triples; ++i) {
    const auto x = family_sample(g, n);
    const auto y = family_sample(g, n);
    const Family fz = pick_family(g);
    const auto z1 = family_sample(fz, g, n);
    const auto z2 = family_sample(fz, g, n);
    const double r = g.uniform(1.0, 2.0);
    const auto xz = plus(x, z1);
    const auto yz = plus(y, z2);
    const double excess = ek(xz, yz, r) - ek(x, y, r);
    std::vector<double> d(blocks);
    double mean = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      d[b] = ek(slice(xz, b, blocks), slice(yz, b, blocks), r) - ek(slice(x, b, blocks), slice(y, b, blocks), r);
      mean += d[b] / static_cast<double>(blocks);
    }
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / static_cast<double>(blocks - 1)) / std::sqrt(static_cast<double>(blocks));
    worst = std::max(worst, excess / se);
  }
  return {"kappa_regularity", worst <= 3.0, worst, 3.0,
          "max of (k(X+Z,Y+Z) - k(X,Y)) in Monte Carlo standard errors"};
}

CheckResult check_ks_sampler(const ExperimentConfig& c, double alpha, std::uint64_t seed) {
  const auto p = StableParams::symmetric(alpha);
  EnsembleOptions opts;
  opts.threads = c.threads;
  const auto xs = ensemble(PartialSumSpec{p, 1}, seed, c.check.ks_n, opts);
  const StableLaw law(p);
  const double d = ks_statistic(EmpiricalCdf(xs), [&law](double x) { return law.cdf(x); });
  const double crit = ks_critical_001(xs.size());
  char name[48];
  std::snprintf(name, sizeof name, "ks_sampler_alpha_%g", alpha);
  return {name, d <= crit, d, crit, "KS statistic of stable draws against the numeric CDF"};
}

CheckResult check_stability(const ExperimentConfig& c, const StableLaw& law, std::uint64_t n, std::uint64_t seed) {
  EnsembleOptions opts;
  opts.threads = c.threads;
  opts.budget = c.rate.budget;
  const auto xs = ensemble(PartialSumSpec{law.params(), n}, seed, c.check.stability_m, opts);
  const double d = ks_statistic(EmpiricalCdf(xs), [&law](double x) { return law.cdf(x); });
  const double crit = ks_critical_001(xs.size());
  return {"stability_identity_n_" + std::to_string(n), d <= crit, d, crit,
          "KS statistic of normalized stable partial sums against the limit CDF"};
}

CheckResult check_tail_expansion(const ExperimentConfig& c) {
  const auto p = StableParams::symmetric(c.model.alpha);
  double previous = HUGE_VAL;
  bool decreasing = true;
  double last = 0.0;
  std::string detail = "relative error of the two-term tail at u = 10, 20, 50:";
  for (double u : {10.0, 20.0, 50.0}) {
    const double exact = stable_sf(u, p);
    last = std::abs(stable_tail(u, p).first - exact) / exact;
    decreasing = decreasing && last < previous;
    previous = last;
    detail += " " + format_number(last);
  }
  return {"tail_expansion", decreasing && last < 0.01, last, 0.01, detail};
}

CheckResult check_tail_constant() {
  double worst = 0.0;
  for (double alpha : {1.3, 1.5, 1.7}) {
    const auto p = StableParams::symmetric(alpha);
    const double c = tail_constant(p);
    for (double u : {50.0, 100.0, 1000.0}) {
      worst = std::max(worst, std::abs(std::pow(u, alpha) * stable_sf(u, p) / c - 1.0));
    }
  }
  return {"tail_constant_limit", worst < 0.01, worst, 0.01,
          "max relative gap of u^alpha (1 - F(u)) to the tail constant, u >= 50, alpha in {1.3, 1.5, 1.7}"};
}

CheckResult check_cdf_closed_forms() {
  double worst = 0.0;
  const auto cauchy = StableParams::symmetric(1.0);
  const auto gauss = StableParams::symmetric(2.0);
  for (int i = -400; i <= 400; ++i) {
    const double x = 0.05 * i;
    worst = std::max(worst, std::abs(stable_cdf(x, cauchy) - (0.5 + std::atan(x) / std::numbers::pi)));
    worst = std::max(worst, std::abs(stable_cdf(x, gauss) - 0.5 * std::erfc(-x / 2.0)));
  }
  return {"cdf_closed_forms", worst <= 1e-8, worst, 1e-8, "max |F - oracle| on [-20, 20], Cauchy and Gaussian"};
}

CheckResult check_quantile_roundtrip(const ExperimentConfig& c, std::uint64_t seed) {
  const auto m = c.doa();
  Rng g(seed);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = g.uniform();
    worst = std::max(worst, std::abs(doa_survival(doa_quantile(u, m), m) - (1.0 - u)));
  }
  return {"doa_quantile_roundtrip", worst < 1e-10, worst, 1e-10, "max |S(Q(u)) - (1 - u)| over 1000 u"};
}

CheckResult check_strong_doa(const ExperimentConfig& c) {
  const auto report = verify_strong_doa(c.doa(), c.r);
  return {"strong_domain_of_attraction", report.within_bound && report.condition_met, report.K_observed, report.K_bound,
          std::string("observed remainder constant against K; gamma > r - alpha: ") +
              (report.condition_met ? "yes" : "no")};
}

CheckResult check_finiteness(const ExperimentConfig& c) {
  const auto limit = c.limit();
  const double matched = tail_constant(limit);
  const double value = rate_constant(c.doa(), limit, MetricOrder::of(c.r));
  const double bad_gamma = std::max(0.05, c.r - c.model.alpha - 0.1);
  const auto bad = DoaModel::make(c.model.alpha, 1.25 * matched, bad_gamma, c.model.a, c.model.x0);
  bool diverged = false;
  double ratio = 0.0;
  try {
    rate_constant(bad, limit, MetricOrder::of(c.r));
  } catch (const DivergenceError& e) {
    diverged = true;
    ratio = e.increment_ratio();
  }
  return {"kappa_finiteness_boundary", std::isfinite(value) && diverged, value, HUGE_VAL,
          "2 kappa_r(V1, limit) = " + format_number(value) + " for the configured model; mismatched model with gamma = " +
              format_number(bad_gamma) + (diverged ? " diverges (increment ratio " + format_number(ratio) + ")"
                                                   : " did not diverge")};
}

std::vector<CheckResult> check_chi_bounds(const ExperimentConfig& c, std::uint64_t seed) {
  const auto report =
      chi_bound_check(c.summand(), c.limit(), c.check.t_values, c.check.chi_n, c.check.chi_m, seed, c.rate_options());
  std::vector<CheckResult> out;
  for (const auto& row : report.rows) {
    out.push_back({"chi_bound_t_" + format_number(row.t), row.pass, row.chi, row.bound + row.allowance,
                   "chi_t against t^2 * 2 kappa_2 (window " + format_number(c.rate.window) + ") = " +
                       format_number(row.bound) + " plus 3 standard errors, n = " + std::to_string(report.n)});
  }
  return out;
}

std::vector<CheckResult> run_checks(const ExperimentConfig& c, std::ostream& log) {
  std::vector<CheckResult> out;
  auto seed = [&c](std::uint64_t k) { return stream_seed(c.master_seed, 1000 + k); };
  auto add = [&](CheckResult r) {
    log << (r.passed ? "pass  " : "FAIL  ") << r.name << "  " << format_number(r.statistic) << "\n";
    out.push_back(std::move(r));
  };

  add(check_power_gap(c, seed(1)));
  add(check_homogeneity(c, seed(2)));
  add(check_triangle(c, seed(3)));
  add(check_regularity(c, seed(4)));
  add(check_cdf_closed_forms());
  for (std::size_t i = 0; i < c.check.ks_alphas.size(); ++i) add(check_ks_sampler(c, c.check.ks_alphas[i], seed(10 + i)));
  {
    const StableLaw law(c.limit());
    for (std::size_t i = 0; i < c.check.stability_n.size(); ++i) {
      add(check_stability(c, law, c.check.stability_n[i], seed(20 + i)));
    }
  }
  add(check_tail_expansion(c));
  add(check_tail_constant());
  if (c.model.kind == "doa") {
    add(check_quantile_roundtrip(c, seed(5)));
    add(check_strong_doa(c));
    add(check_finiteness(c));
  }
  for (auto& r : check_chi_bounds(c, seed(6))) add(std::move(r));
  return out;
}

}  // namespace stablab::cli
