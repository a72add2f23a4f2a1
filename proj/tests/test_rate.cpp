#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablab/errors.hpp"
#include "stablab/rate.hpp"

using namespace stablab;

namespace {

RateCurve power_curve(double c, double slope, double noise = 0.0, std::uint64_t seed = 1) {
  RateCurve curve;
  curve.theoretical_slope = -1.0 / 3.0;
  Rng g(seed);
  for (std::uint64_t n = 16; n <= 4096; n *= 2) {
    const double eps = noise == 0.0 ? 0.0 : g.uniform(-noise, noise);
    curve.entries.push_back({n, c * std::pow(static_cast<double>(n), slope) * (1.0 + eps), 0.0});
  }
  return curve;
}

}  // namespace

TEST_CASE("theoretical slope") {
  CHECK(theoretical_slope(1.5, 2.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(theoretical_slope(1.2, 2.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  const double near = theoretical_slope(1.5, 1.5 + 1e-9);
  CHECK(near < 0.0);
  CHECK(near > -1e-8);
  CHECK_THROWS_AS(theoretical_slope(1.5, 1.5), DomainError);
  CHECK_THROWS_AS(theoretical_slope(2.0, 2.0), DomainError);
  CHECK_THROWS_AS(theoretical_slope(1.5, 2.5), DomainError);
}

TEST_CASE("slope fit") {
  const auto exact = fit_slope(power_curve(3.0, -1.0 / 3.0));
  CHECK(exact.slope == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(exact.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(exact.theoretical_slope == doctest::Approx(-1.0 / 3.0));

  const auto flat = fit_slope(power_curve(2.0, 0.0));
  CHECK(flat.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(flat.r_squared == 1.0);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CHECK(std::abs(fit_slope(power_curve(3.0, -1.0 / 3.0, 0.02, seed)).slope + 1.0 / 3.0) <= 0.02);
  }

  auto bad = power_curve(1.0, -0.5);
  bad.entries[2].distance = 0.0;
  CHECK_THROWS_AS(fit_slope(bad), DomainError);
  bad.entries.resize(2);
  CHECK_THROWS_AS(fit_slope(bad), DomainError);
}

TEST_CASE("floor filtering") {
  auto curve = power_curve(1.0, -0.5);
  curve.floor = 0.01;  // entries below 0.03 (n > 1024) are dropped
  const auto fit = fit_slope(curve);
  CHECK(fit.floor_filtered);
  CHECK(fit.points_used == 7);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
  curve.floor = 1.0;  // nothing survives: fall back to every entry
  CHECK(fit_slope(curve).points_used == curve.entries.size());
  CHECK_FALSE(fit_slope(curve).floor_filtered);
}

TEST_CASE("rate curve preconditions") {
  const auto limit = StableParams::symmetric(1.5);
  const auto model = DoaModel::matched(limit, 0.6, 1.0, 4.0);
  const auto order = MetricOrder::of(2.0);
  CHECK_THROWS_AS(rate_curve(model, limit, order, {}, 1000, 1), DomainError);
  CHECK_THROWS_AS(rate_curve(model, limit, order, {8, 4}, 1000, 1), DomainError);
  CHECK_THROWS_WITH_AS(rate_curve(DoaModel::matched(limit, 0.4, 1.0, 4.0), limit, order, {4, 8, 16}, 1000, 1),
                       "gamma must exceed r - alpha", DomainError);
  CHECK_THROWS_AS(rate_curve(DoaModel::make(1.5, 0.25, 0.6, 1.0, 4.0), limit, order, {4, 8, 16}, 1000, 1), DomainError);
}

TEST_CASE("control experiment: stable summands stay at the floor") {
  const auto limit = StableParams::symmetric(1.5);
  RateOptions options;
  const auto curve = rate_curve(limit, limit, MetricOrder::of(2.0), {2, 4, 8, 16, 32, 64, 128, 256}, 100000, 3, options);
  CHECK(curve.entries.size() == 8);
  CHECK(curve.floor > 0.0);
  for (const auto& e : curve.entries) {
    CHECK(std::abs(e.distance - curve.floor) <= 3.0 * std::hypot(e.mc_stderr, curve.floor_stderr));
  }
  // Zero slope within three regression standard errors.
  const auto fit = fit_slope(curve);
  double mx = 0.0;
  for (const auto& e : curve.entries) mx += std::log(static_cast<double>(e.n)) / 8.0;
  double sxx = 0.0;
  double rss = 0.0;
  for (const auto& e : curve.entries) {
    const double x = std::log(static_cast<double>(e.n));
    sxx += (x - mx) * (x - mx);
    const double resid = std::log(e.distance) - fit.intercept - fit.slope * x;
    rss += resid * resid;
  }
  CHECK(std::abs(fit.slope) <= 3.0 * std::sqrt(rss / 6.0 / sxx));
}

TEST_CASE("heavy-tailed summands: distances decrease") {
  const auto limit = StableParams::symmetric(1.5);
  const auto model = DoaModel::matched(limit, 0.6, 1.0, 4.0);
  const auto curves = rate_curves(model, limit, {MetricSpec::zeta(2.0), MetricSpec::cf(1.0)}, {16, 256, 4096}, 20000, 8);
  CHECK(curves[0].metric_tag == "zeta_upper_r=2");
  CHECK(curves[1].metric_tag == "cf_distance@t=1");
  for (const auto& c : curves) {
    CHECK(c.entries[0].distance > c.entries[1].distance);
    CHECK(c.entries[1].distance > c.entries[2].distance);
  }
}

TEST_CASE("characteristic function bound") {
  const auto limit = StableParams::symmetric(1.5);
  const auto model = DoaModel::matched(limit, 0.6, 1.0, 4.0);
  const auto report = chi_bound_check(model, limit, {0.0, 0.5, 1.0, 2.0}, 256, 20000, 4);
  CHECK(report.rows.size() == 4);
  CHECK(report.rows[0].chi == 0.0);
  CHECK(report.rows[0].pass);
  CHECK(report.all_pass);

  const auto control = chi_bound_check(limit, limit, {0.5, 1.0, 2.0}, 64, 20000, 4);
  CHECK(control.all_pass);
  for (const auto& row : control.rows) CHECK(row.chi < 0.02);

  CHECK_THROWS_AS(chi_bound_check(DoaModel::matched(limit, 0.45, 1.0, 4.0), limit, {1.0}, 16, 1000, 1), DomainError);
}
