#include "stablab/stable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "stablab/errors.hpp"
#include "stablab/quadrature.hpp"

namespace stablab {

namespace {

constexpr double kPi = std::numbers::pi;
// Inversion results are accepted when the summed quadrature error estimate
// stays below this (absolute, on the probability scale).
constexpr double kMaxInversionError = 1e-9;

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

// Smallest T with exp(-T^alpha) / T below the envelope.
double truncation_point(double alpha, double envelope) {
  const double log_inv = -std::log(envelope);
  double t = std::pow(log_inv, 1.0 / alpha);
  for (int i = 0; i < 50; ++i) {
    const double next = std::pow(std::max(log_inv - std::log(t), 1e-3), 1.0 / alpha);
    if (std::abs(next - t) < 1e-12 * t) break;
    t = next;
  }
  return std::max(t, 1.0);
}

// Returns (int_0^T cos(ty) e^{-t^a} dt, int_0^T sin(ty) e^{-t^a}/t dt) for the
// standard law, panel by panel between zeros of sin(ty).
std::complex<double> inversion_integrals(double y, double alpha, const CdfOptions& opts) {
  const double upper = truncation_point(alpha, opts.envelope);
  const double ay = std::abs(y);
  double width = 1.0;
  if (ay > 0.0) width = std::min(width, kPi / ay);
  const auto panels = static_cast<std::size_t>(std::ceil(upper / width));
  const double panel_tol = opts.abs_tol / static_cast<double>(panels);

  auto integrand = [y, alpha](double t) {
    const double damp = std::exp(-std::pow(t, alpha));
    const double sinc = t == 0.0 ? y : std::sin(t * y) / t;
    return std::complex<double>(std::cos(t * y) * damp, sinc * damp);
  };

  std::complex<double> total{};
  double error = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) * width;
    const double b = std::min(upper, a + width);
    if (b <= a) break;
    const auto piece = quad::adaptive(integrand, a, b, panel_tol);
    total += piece.value;
    error += piece.error;
  }
  if (error / kPi > kMaxInversionError) {
    throw NumericFailure("stable CDF inversion did not converge at x = " + std::to_string(y) +
                             " (error estimate " + fmt_sci(error / kPi) + ")",
                         error / kPi);
  }
  return total;
}

// Survival of the standard symmetric law at y >= 0.
double standard_sf(double y, double alpha, const CdfOptions& opts) {
  if (y == 0.0) return 0.5;
  if (alpha < 2.0 && y > opts.tail_crossover) return stable_tail_series(y, alpha);
  if (alpha == 2.0 && y > opts.tail_crossover) return 0.5 * std::erfc(0.5 * y);
  const double sine_part = inversion_integrals(y, alpha, opts).imag();
  return std::clamp(0.5 - sine_part / kPi, 0.0, 0.5);
}

}  // namespace

StableParams StableParams::symmetric(double alpha, double scale) {
  StableParams p;
  p.alpha = alpha;
  p.scale = scale;
  if (alpha > 0.0 && alpha < 2.0 && scale > 0.0) {
    p.c1 = p.c2 = tail_constant(alpha, scale);
  }
  p.validate();
  return p;
}

void StableParams::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
  require(std::isfinite(scale) && scale > 0.0, "scale must be positive");
  require(std::isfinite(c1) && c1 >= 0.0, "c1 must be nonnegative");
  require(std::isfinite(c2) && c2 >= 0.0, "c2 must be nonnegative");
  require(alpha == 2.0 || c1 + c2 > 0.0, "c1 + c2 must be positive when alpha < 2");
  require(b == 0.0, "b (location) must be 0 for a strictly stable law");
}

void StableParams::require_symmetric() const {
  validate();
  require(is_symmetric(), "symmetric mode requires c1 == c2 and b == 0");
}

std::complex<double> stable_cf(double t, const StableParams& p) {
  p.require_symmetric();
  if (t == 0.0) return {1.0, 0.0};
  return {std::exp(-std::pow(p.scale * std::abs(t), p.alpha)), 0.0};
}

double stable_sf(double x, const StableParams& p, const CdfOptions& opts) {
  p.require_symmetric();
  const double y = x / p.scale;
  if (y >= 0.0) return standard_sf(y, p.alpha, opts);
  return 1.0 - standard_sf(-y, p.alpha, opts);
}

double stable_cdf(double x, const StableParams& p, const CdfOptions& opts) {
  p.require_symmetric();
  const double y = x / p.scale;
  if (y <= 0.0) return standard_sf(-y, p.alpha, opts);
  return 1.0 - standard_sf(y, p.alpha, opts);
}

double stable_pdf(double x, const StableParams& p, const CdfOptions& opts) {
  p.require_symmetric();
  const double y = std::abs(x / p.scale);
  return inversion_integrals(y, p.alpha, opts).real() / (kPi * p.scale);
}

double stable_draw(const StableParams& p, Rng& rng) {
  const double a = p.alpha;
  const double v = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double x = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
  return p.scale * x;
}

std::vector<double> stable_sample(const StableParams& p, Rng& rng, std::size_t n) {
  p.require_symmetric();
  std::vector<double> out(n);
  for (auto& x : out) x = stable_draw(p, rng);
  return out;
}

std::pair<double, double> stable_tail(double u, const StableParams& p) {
  p.validate();
  require(p.alpha < 2.0, "stable_tail: alpha = 2 has no power tail");
  require(u > 0.0, "stable_tail: u must be positive");
  const double first = std::pow(u, -p.alpha);
  const double second = first * first;
  return {p.c1 * first + p.c2 * second, p.c2 * first + p.c1 * second};
}

double tail_constant(double alpha, double scale) {
  require(alpha > 0.0 && alpha < 2.0, "tail_constant: alpha must lie in (0, 2)");
  require(scale > 0.0, "tail_constant: scale must be positive");
  return std::pow(scale, alpha) * std::tgamma(alpha) * std::sin(0.5 * kPi * alpha) / kPi;
}

double tail_constant(const StableParams& p) {
  p.require_symmetric();
  return tail_constant(p.alpha, p.scale);
}

double stable_tail_series(double y, double alpha) {
  require(y > 0.0, "stable_tail_series: y must be positive");
  const double log_y = std::log(y);
  double sum = 0.0;
  double previous = HUGE_VAL;
  for (int k = 1; k <= 40; ++k) {
    const double kd = k;
    const double magnitude = std::exp(std::lgamma(kd * alpha) - std::lgamma(kd + 1.0) - kd * alpha * log_y);
    if (magnitude > previous) break;  // asymptotic series started to diverge
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += sign * magnitude * std::sin(0.5 * kPi * kd * alpha);
    if (magnitude < 1e-17 * std::abs(sum)) break;
    previous = magnitude;
  }
  return sum / kPi;
}

StableLaw::StableLaw(const StableParams& p, const CdfOptions& opts, double step)
    : params_(p), opts_(opts), step_(step), tail_constant_(0.0) {
  p.require_symmetric();
  require(step > 0.0, "StableLaw: table step must be positive");
  if (p.alpha < 2.0) tail_constant_ = stablab::tail_constant(p.alpha, p.scale);

  const auto nodes = static_cast<std::size_t>(std::ceil(opts.tail_crossover / step)) + 2;
  auto sf = std::make_shared<std::vector<double>>(nodes);
  auto pdf = std::make_shared<std::vector<double>>(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double y = static_cast<double>(i) * step;
    const auto both = inversion_integrals(y, p.alpha, opts);
    (*pdf)[i] = both.real() / kPi;
    (*sf)[i] = y == 0.0 ? 0.5 : std::clamp(0.5 - both.imag() / kPi, 0.0, 0.5);
  }
  sf_ = std::move(sf);
  pdf_ = std::move(pdf);

  // Spot-check the interpolant halfway between nodes.
  const std::size_t stride = std::max<std::size_t>(1, nodes / 64);
  for (std::size_t i = 0; i + 1 < nodes; i += stride) {
    const double y = (static_cast<double>(i) + 0.5) * step;
    if (y > opts.tail_crossover) break;
    const double direct = standard_sf(y, p.alpha, opts);
    table_error_ = std::max(table_error_, std::abs(direct - upper(y)));
  }
}

double StableLaw::upper(double y) const {
  if (y > opts_.tail_crossover) {
    if (params_.alpha == 2.0) return 0.5 * std::erfc(0.5 * y);
    return stable_tail_series(y, params_.alpha);
  }
  const auto& s = *sf_;
  const auto& f = *pdf_;
  const double pos = y / step_;
  auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= s.size()) i = s.size() - 2;
  const double t = pos - static_cast<double>(i);
  // Cubic Hermite with derivative -pdf.
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double v = h00 * s[i] - h10 * step_ * f[i] + h01 * s[i + 1] - h11 * step_ * f[i + 1];
  return std::clamp(v, 0.0, 0.5);
}

double StableLaw::sf(double x) const {
  const double y = x / params_.scale;
  return y >= 0.0 ? upper(y) : 1.0 - upper(-y);
}

double StableLaw::cdf(double x) const {
  const double y = x / params_.scale;
  return y <= 0.0 ? upper(-y) : 1.0 - upper(y);
}

}  // namespace stablab
