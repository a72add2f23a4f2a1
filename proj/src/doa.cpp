#include "stablab/doa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

double tail_survival(double x, const DoaModel& m) {
  return m.c * std::pow(x, -m.alpha) * (1.0 + m.a * std::pow(x, -m.gamma));
}

// Solves S(x) = p for p in (0, 1/2]; returns x >= 0.
double upper_inverse(double p, const DoaModel& m) {
  const double s0 = m.tail_mass();
  if (p >= s0) {
    const double body = 1.0 - 2.0 * s0;
    if (body <= 0.0) return m.x0 * (p >= 0.5 ? 0.0 : 1.0);
    return m.x0 * (1.0 - 2.0 * p) / body;
  }
  if (m.a == 0.0) return std::pow(m.c / p, 1.0 / m.alpha);

  // Newton on z = log x, where log S is close to linear.
  const double log_c = std::log(m.c);
  const double log_p = std::log(p);
  const double z_lo = std::log(m.x0);
  const double z_hi = (std::log(m.c * std::max(1.0, 1.0 + m.a * std::pow(m.x0, -m.gamma))) - log_p) / m.alpha;
  auto g = [&](double z) {
    const double e = m.a * std::exp(-m.gamma * z);
    const double value = log_c - m.alpha * z + std::log1p(e) - log_p;
    const double slope = -m.alpha - m.gamma * e / (1.0 + e);
    return std::make_pair(value, slope);
  };
  const double guess = std::clamp((log_c - log_p) / m.alpha, z_lo, z_hi);
  std::uintmax_t iterations = 60;
  const double z = boost::math::tools::newton_raphson_iterate(g, guess, z_lo, z_hi, 50, iterations);
  return std::exp(z);
}

double quantile_unchecked(double u, const DoaModel& m) {
  if (u > 0.5) return upper_inverse(1.0 - u, m);
  if (u < 0.5) return -upper_inverse(u, m);
  return 0.0;
}

}  // namespace

DoaModel DoaModel::make(double alpha, double c, double gamma, double a, double x0) {
  DoaModel m{alpha, c, gamma, a, x0, c * std::abs(a)};
  m.validate();
  return m;
}

DoaModel DoaModel::matched(const StableParams& limit, double gamma, double a, double x0) {
  limit.require_symmetric();
  return make(limit.alpha, tail_constant(limit), gamma, a, x0);
}

void DoaModel::validate() const {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha < 2.0, "alpha must lie in (1, 2)");
  require(std::isfinite(c) && c > 0.0, "c must be positive");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be positive");
  require(std::isfinite(a), "a must be finite");
  require(std::isfinite(x0) && x0 > 0.0, "x0 must be positive");
  const double decay = std::pow(x0, -gamma);
  require(1.0 + a * decay > 0.0, "a too negative: survival must stay positive beyond x0");
  require(alpha + a * (alpha + gamma) * decay > 0.0, "a too negative: survival must decrease beyond x0");
  require(tail_mass() <= 0.5, "S(x0) must not exceed 1/2 (increase x0 or reduce c, a)");
  require(std::isfinite(K) && K >= c * std::abs(a) * (1.0 - 1e-12), "K must be at least c*|a|");
}

double DoaModel::tail_mass() const { return tail_survival(x0, *this); }

double doa_survival(double x, const DoaModel& m) {
  m.validate();
  if (x < 0.0) return 1.0 - doa_survival(-x, m);
  if (x >= m.x0) return tail_survival(x, m);
  return 0.5 * (1.0 - (1.0 - 2.0 * m.tail_mass()) * (x / m.x0));
}

double doa_cdf(double x, const DoaModel& m) {
  if (x < 0.0) return doa_survival(-x, m);
  return 1.0 - doa_survival(x, m);
}

double doa_quantile(double u, const DoaModel& m) {
  m.validate();
  require(u > 0.0 && u < 1.0, "doa_quantile: u must lie in (0, 1)");
  return quantile_unchecked(u, m);
}

double doa_draw(const DoaModel& m, Rng& rng) { return quantile_unchecked(rng.uniform(), m); }

std::vector<double> doa_sample(const DoaModel& m, Rng& rng, std::size_t n) {
  m.validate();
  std::vector<double> out(n);
  for (auto& x : out) x = doa_draw(m, rng);
  return out;
}

StrongDoaReport verify_strong_doa(const DoaModel& m, double r, std::size_t grid_points) {
  m.validate();
  require(std::isfinite(r) && r > m.alpha && r <= 2.0, "verify_strong_doa: r must lie in (alpha, 2]");
  require(grid_points >= 2, "verify_strong_doa: need at least two grid points");

  StrongDoaReport report;
  report.r = r;
  report.K_bound = m.K;
  report.grid_points = grid_points;
  const double lo = std::log(m.x0);
  const double hi = std::log(std::max(1e6, m.x0));
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1));
    const double h = std::pow(x, m.alpha) * doa_survival(x, m) - m.c;
    report.K_observed = std::max(report.K_observed, std::abs(h) * std::pow(x, m.gamma));
  }
  report.within_bound = std::isfinite(report.K_observed) && report.K_observed <= m.K + 1e-12;
  report.condition_met = m.gamma > r - m.alpha;
  return report;
}

}  // namespace stablab
