#include "stablab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "stablab/errors.hpp"
#include "stablab/quadrature.hpp"

namespace stablab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

void require_computable(const MetricOrder& order) {
  require(order.r >= 1.0 && order.r <= 2.0, "kappa_r: r must lie in [1, 2]");
}

// int_a^b r |u|^(r-1) du for a <= b, without cancellation for nearby a, b.
double power_mass(double a, double b, double r) {
  if (b <= a) return 0.0;
  if (a >= 0.0) {
    if (a == 0.0) return std::pow(b, r);
    return std::pow(a, r) * std::expm1(r * std::log1p((b - a) / a));
  }
  if (b <= 0.0) return power_mass(-b, -a, r);
  return std::pow(-a, r) + std::pow(b, r);
}

double weight(double u, double r) { return r * std::pow(std::abs(u), r - 1.0); }

std::pair<double, double> clip(double lo, double hi, const QuadConfig& quad) {
  if (!quad.window) return {lo, hi};
  return {std::max(lo, -*quad.window), std::min(hi, *quad.window)};
}

// r int_lo^hi |u|^(r-1) |d(u)| du where d is monotone and lo, hi lie on one
// side of zero. Splits at the sign change so each piece is smooth.
template <class D>
double monotone_piece(const D& d, double lo, double hi, double r, double tol) {
  if (!(hi > lo)) return 0.0;
  auto integrand = [&](double u) { return weight(u, r) * d(u); };
  const double dl = d(lo);
  const double dh = d(hi);
  if ((dl > 0.0 && dh < 0.0) || (dl < 0.0 && dh > 0.0)) {
    std::uintmax_t iterations = 100;
    auto tol_fn = boost::math::tools::eps_tolerance<double>(50);
    const auto root = boost::math::tools::toms748_solve(d, lo, hi, dl, dh, tol_fn, iterations);
    const double mid = 0.5 * (root.first + root.second);
    return std::abs(quad::adaptive(integrand, lo, mid, 0.5 * tol).value) +
           std::abs(quad::adaptive(integrand, mid, hi, 0.5 * tol).value);
  }
  return std::abs(quad::adaptive(integrand, lo, hi, tol).value);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// r int_start^inf u^(r-1) h(u) du for h >= 0 and start > 0, integrated over
// doubling checkpoints. Once the increments shrink geometrically the rest
// is summed as a geometric series; increments that stop shrinking by the
// cap mean the integral diverges.
template <class H>
double tail_closure(const H& h, double start, double r, const QuadConfig& quad) {
  auto integrand = [&](double u) { return weight(u, r) * h(u); };
  const double tol = quad.abs_tol / 64.0;
  double total = 0.0;
  double previous = -1.0;
  double ratio = kInf;
  for (double u = start; u < quad.cap; u *= 2.0) {
    const double increment = std::abs(quad::adaptive(integrand, u, 2.0 * u, tol).value);
    total += increment;
    if (previous >= 0.0) {
      if (increment == 0.0 && previous == 0.0) return total;
      ratio = previous > 0.0 ? increment / previous : kInf;
      if (ratio < 1.0 && increment * ratio / (1.0 - ratio) < tol) {
        return total + increment * ratio / (1.0 - ratio);
      }
    }
    previous = increment;
    if (2.0 * u >= quad.cap) {
      if (ratio >= 1.0) {
        throw DivergenceError("kappa_r diverges: tail increments grow by a factor " + fmt(ratio) +
                                  " per doubling up to |u| = " + fmt(2.0 * u),
                              ratio, 2.0 * u);
      }
      return total + increment * ratio / (1.0 - ratio);
    }
  }
  return total;
}

}  // namespace

MetricOrder MetricOrder::of(double r) {
  require(std::isfinite(r) && r > 0.0 && r <= 2.0, "metric order r must lie in (0, 2]");
  MetricOrder order;
  order.r = r;
  order.m = static_cast<int>(std::ceil(r)) - 1;
  order.beta = r - order.m;
  return order;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : points_(std::move(samples)) {
  require(!points_.empty(), "empirical_cdf: sample is empty");
  for (double x : points_) require(!std::isnan(x), "empirical_cdf: sample contains NaN");
  std::sort(points_.begin(), points_.end());
}

std::size_t EmpiricalCdf::rank(double x) const {
  return static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), x) - points_.begin());
}

double EmpiricalCdf::cdf(double x) const {
  return static_cast<double>(rank(x)) / static_cast<double>(points_.size());
}

double EmpiricalCdf::sf(double x) const {
  return static_cast<double>(points_.size() - rank(x)) / static_cast<double>(points_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

AnalyticCdf analytic_cdf(const StableLaw& law) {
  AnalyticCdf out;
  out.cdf = [law](double x) { return law.cdf(x); };
  out.sf = [law](double x) { return law.sf(x); };
  const double edge = law.options().tail_crossover * law.params().scale;
  out.kinks = {-edge, edge};
  out.scale = law.params().scale;
  return out;
}

AnalyticCdf analytic_cdf(const DoaModel& model) {
  model.validate();
  AnalyticCdf out;
  out.cdf = [model](double x) { return doa_cdf(x, model); };
  out.sf = [model](double x) { return doa_survival(x, model); };
  out.kinks = {-model.x0, model.x0};
  out.scale = model.x0;
  return out;
}

double kappa_r(const EmpiricalCdf& f, const EmpiricalCdf& g, const MetricOrder& order, const QuadConfig& quad) {
  require_computable(order);
  const auto& p = f.points();
  const auto& q = g.points();
  const std::uint64_t nf = p.size();
  const std::uint64_t ng = q.size();
  std::size_t i = 0;
  std::size_t j = 0;
  double previous = -kInf;
  double total = 0.0;
  while (i < nf || j < ng) {
    const double x = std::min(i < nf ? p[i] : kInf, j < ng ? q[j] : kInf);
    if (i > 0 || j > 0) {
      // Both step functions are constant on [previous, x).
      const std::uint64_t lhs = i * ng;
      const std::uint64_t rhs = j * nf;
      const double diff = static_cast<double>(lhs > rhs ? lhs - rhs : rhs - lhs) / static_cast<double>(nf * ng);
      const auto [lo, hi] = clip(previous, x, quad);
      if (diff > 0.0) total += diff * power_mass(lo, hi, order.r);
    }
    while (i < nf && p[i] == x) ++i;
    while (j < ng && q[j] == x) ++j;
    previous = x;
  }
  return total;
}

double kappa_r(const EmpiricalCdf& f, const AnalyticCdf& g, const MetricOrder& order, const QuadConfig& quad) {
  require_computable(order);
  const double r = order.r;
  const auto& x = f.points();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  const double tol = quad.emp_tol / static_cast<double>(2 * n + 4);

  // F_n - G on a stretch where F_n = k/n, evaluated from the side of zero
  // that avoids cancellation.
  auto piece = [&](std::size_t k, double lo, double hi) {
    std::tie(lo, hi) = clip(lo, hi, quad);
    if (!(hi > lo)) return 0.0;
    const double level = static_cast<double>(k) / nd;
    const double upper = static_cast<double>(n - k) / nd;
    auto below = [&](double u) { return level - g.cdf(u); };
    auto above = [&](double u) { return g.sf(u) - upper; };
    double sum = 0.0;
    if (lo < 0.0) sum += monotone_piece(below, lo, std::min(hi, 0.0), r, tol);
    if (hi > 0.0) sum += monotone_piece(above, std::max(lo, 0.0), hi, r, tol);
    return sum;
  };

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (x[k + 1] > x[k]) total += piece(k + 1, x[k], x[k + 1]);
  }
  if (quad.window) {
    total += piece(0, -kInf, x.front());
    total += piece(n, x.back(), kInf);
    return total;
  }

  // Unbounded outer stretches: F_n = 0 below the sample, 1 above it.
  const double reach = std::max({std::abs(x.front()), std::abs(x.back()), g.scale});
  auto left_mass = [&](double u) { return g.cdf(-u); };
  auto right_mass = [&](double u) { return g.sf(u); };
  total += piece(0, -reach, x.front()) + tail_closure(left_mass, reach, r, quad);
  total += piece(n, x.back(), reach) + tail_closure(right_mass, reach, r, quad);
  return total;
}

double kappa_r(const AnalyticCdf& f, const EmpiricalCdf& g, const MetricOrder& order, const QuadConfig& quad) {
  return kappa_r(g, f, order, quad);
}

double kappa_r(const AnalyticCdf& f, const AnalyticCdf& g, const MetricOrder& order, const QuadConfig& quad) {
  require_computable(order);
  const double r = order.r;

  double core = 8.0 * std::max(f.scale, g.scale);
  for (double k : f.kinks) core = std::max(core, 2.0 * std::abs(k));
  for (double k : g.kinks) core = std::max(core, 2.0 * std::abs(k));
  if (quad.window) core = *quad.window;

  // Breakpoints on [0, core]; the negative side mirrors them.
  std::vector<double> cuts{0.0, core};
  for (const auto* kinks : {&f.kinks, &g.kinks}) {
    for (double k : *kinks) {
      if (std::abs(k) > 0.0 && std::abs(k) < core) cuts.push_back(std::abs(k));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto right = [&](double u) { return std::abs(f.sf(u) - g.sf(u)); };
  auto left = [&](double u) { return std::abs(f.cdf(-u) - g.cdf(-u)); };
  auto right_w = [&](double u) { return weight(u, r) * right(u); };
  auto left_w = [&](double u) { return weight(u, r) * left(u); };
  const double tol = quad.abs_tol / static_cast<double>(4 * cuts.size());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    total += quad::adaptive(right_w, cuts[k], cuts[k + 1], tol).value;
    total += quad::adaptive(left_w, cuts[k], cuts[k + 1], tol).value;
  }
  if (!quad.window) {
    total += tail_closure(right, core, r, quad);
    total += tail_closure(left, core, r, quad);
  }
  return total;
}

std::complex<double> empirical_cf(const std::vector<double>& samples, double t) {
  require(!samples.empty(), "empirical_cf: sample is empty");
  require(std::isfinite(t), "cf_distance: t must be finite");
  double re = 0.0;
  double im = 0.0;
  for (double x : samples) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  const double n = static_cast<double>(samples.size());
  return {re / n, im / n};
}

double cf_distance(const std::vector<double>& x, const std::vector<double>& y, double t) {
  if (t == 0.0) return 0.0;
  return std::abs(empirical_cf(x, t) - empirical_cf(y, t));
}

double cf_distance(const std::vector<double>& x, const StableParams& limit, double t) {
  if (t == 0.0) return 0.0;
  return std::abs(empirical_cf(x, t) - stable_cf(t, limit));
}

double power_gap(double x, double y, double r) {
  require(std::isfinite(r) && r >= 1.0, "power_gap: r must be at least 1");
  const double px = std::pow(std::abs(x), r - 1.0);
  const double py = std::pow(std::abs(y), r - 1.0);
  return 2.0 * std::abs(x * px - y * py) - std::abs(x - y) * std::max(px, py);
}

double ks_statistic(const EmpiricalCdf& f, const std::function<double(double)>& cdf) {
  const auto& x = f.points();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double g = cdf(x[i]);
    d = std::max({d, static_cast<double>(j) / n - g, g - static_cast<double>(i) / n});
    i = j;
  }
  return d;
}

double ks_critical_001(std::size_t n) { return 1.949 / std::sqrt(static_cast<double>(n)); }

}  // namespace stablab
