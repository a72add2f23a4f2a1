#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablab/doa.hpp"
#include "stablab/errors.hpp"

using namespace stablab;

namespace {

const double kC = tail_constant(1.5);

DoaModel pareto() { return DoaModel::make(1.5, kC, 0.6, 0.0, std::pow(2.0 * kC, 1.0 / 1.5)); }

}  // namespace

TEST_CASE("survival function") {
  const auto m = pareto();
  CHECK(doa_survival(0.0, m) == 0.5);
  CHECK(doa_survival(m.x0, m) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(doa_survival(2.0 * m.x0, m) == doctest::Approx(0.5 * std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(0.5 * std::pow(2.0, -1.5) == doctest::Approx(0.176777).epsilon(1e-6));

  const auto w = DoaModel::matched(StableParams::symmetric(1.5), 0.6, 1.0, 4.0);
  CHECK(w.K == doctest::Approx(w.c).epsilon(1e-15));
  for (double x : {4.0, 7.5, 30.0, 1e3, 1e5}) {
    CHECK(doa_survival(x, w) == doctest::Approx(w.c * std::pow(x, -1.5) * (1.0 + std::pow(x, -0.6))).epsilon(1e-14));
  }
  // Linear body between the median and the tail onset.
  CHECK(doa_survival(2.0, w) == doctest::Approx(0.5 * (0.5 + w.tail_mass())).epsilon(1e-14));
}

TEST_CASE("distribution function is valid and symmetric") {
  const auto m = DoaModel::matched(StableParams::symmetric(1.5), 0.6, 1.0, 4.0);
  double previous = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -1e6 + 2e6 * i / 9999.0;
    const double f = doa_cdf(x, m);
    CHECK(f >= previous);
    previous = f;
    if (x != 0.0) CHECK(doa_survival(x, m) + doa_survival(-x, m) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(doa_cdf(-1e6, m) < 1e-9);
  CHECK(doa_cdf(1e6, m) > 1.0 - 1e-9);
}

TEST_CASE("remainder stays within K x^-gamma") {
  const auto m = DoaModel::matched(StableParams::symmetric(1.5), 0.6, -0.8, 4.0);
  for (double x = m.x0; x < 1e6; x *= 1.37) {
    const double h = std::pow(x, m.alpha) * doa_survival(x, m) - m.c;
    CHECK(std::abs(h) <= m.K * std::pow(x, -m.gamma) * (1 + 1e-12));
  }
}

TEST_CASE("matched pure tail approaches the stable tail") {
  const auto limit = StableParams::symmetric(1.5);
  const auto m = DoaModel::matched(limit, 0.6, 0.0, 2.0);
  CHECK(doa_survival(100.0, m) / stable_tail(100.0, limit).first == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(DoaModel::make(2.0, kC, 0.6, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(DoaModel::make(1.0, kC, 0.6, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(DoaModel::make(1.5, -kC, 0.6, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(DoaModel::make(1.5, kC, 0.0, 1.0, 4.0), DomainError);
  CHECK_THROWS_AS(DoaModel::make(1.5, kC, 0.6, 1.0, 0.1), DomainError);   // S(x0) > 1/2
  CHECK_THROWS_AS(DoaModel::make(1.5, kC, 0.6, -5.0, 1.0), DomainError);  // negative tail
  auto m = DoaModel::make(1.5, kC, 0.6, 1.0, 4.0);
  m.K = 0.5 * m.K;
  CHECK_THROWS_AS(m.validate(), DomainError);
}

TEST_CASE("quantile") {
  const auto m = pareto();
  CHECK(doa_quantile(0.5, m) == 0.0);
  CHECK(doa_quantile(1.0 - 0.5 * std::pow(2.0, -1.5), m) == doctest::Approx(2.0 * m.x0).epsilon(1e-14));
  CHECK_THROWS_AS(doa_quantile(0.0, m), DomainError);
  CHECK_THROWS_AS(doa_quantile(1.0, m), DomainError);

  for (double a : {0.0, 1.0, -0.7, 3.0}) {
    const auto w = DoaModel::matched(StableParams::symmetric(1.5), 0.6, a, 4.0);
    Rng g(99);
    double worst = 0.0;
    double previous = -HUGE_VAL;
    for (int i = 0; i < 1000; ++i) {
      const double u = g.uniform();
      worst = std::max(worst, std::abs(doa_survival(doa_quantile(u, w), w) - (1.0 - u)));
    }
    for (double u = 1e-12; u < 1.0; u += 0.01) {
      const double q = doa_quantile(u, w);
      CHECK(q > previous);
      previous = q;
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("sampling") {
  const auto m = DoaModel::matched(StableParams::symmetric(1.5), 0.6, 1.0, 4.0);
  Rng a(3);
  Rng b(3);
  CHECK(doa_sample(m, a, 500) == doa_sample(m, b, 500));

  Rng g(5);
  const std::size_t n = 1000000;
  const auto xs = doa_sample(m, g, n);
  for (double x : {m.x0, 2.0 * m.x0, 5.0 * m.x0}) {
    double above = 0;
    for (double v : xs) above += v > x;
    const double s = doa_survival(x, m);
    CHECK(std::abs(above / n - s) <= 4.0 * std::sqrt(s * (1 - s) / n));
  }
}

TEST_CASE("sample mean is centered") {
  const auto m = DoaModel::matched(StableParams::symmetric(1.7), 0.4, 1.0, 3.0);
  Rng g(17);
  const std::size_t n = 1000000;
  const auto xs = doa_sample(m, g, n);
  double mean = 0.0;
  double body_sum = 0.0;
  double body_sq = 0.0;
  std::size_t body = 0;
  for (double v : xs) {
    mean += v / n;
    if (std::abs(v) <= m.x0) {
      body_sum += v;
      body_sq += v * v;
      ++body;
    }
  }
  const double body_mean = body_sum / body;
  const double body_sd = std::sqrt(body_sq / body - body_mean * body_mean);
  CHECK(std::abs(mean) <= 5.0 * body_sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("strong domain of attraction report") {
  const auto limit = StableParams::symmetric(1.5);
  const auto pure = DoaModel::matched(limit, 0.3, 0.0, 2.0);
  const auto r0 = verify_strong_doa(pure, 2.0);
  CHECK(r0.K_observed <= 1e-12);
  CHECK(r0.within_bound);

  const auto m = DoaModel::matched(limit, 0.6, 1.0, 4.0);
  const auto r1 = verify_strong_doa(m, 2.0);
  CHECK(r1.condition_met);
  CHECK(r1.within_bound);
  CHECK(r1.K_observed == doctest::Approx(m.K).epsilon(1e-12));

  CHECK_FALSE(verify_strong_doa(DoaModel::matched(limit, 0.4, 1.0, 4.0), 2.0).condition_met);
  CHECK_THROWS_AS(verify_strong_doa(m, 1.5), DomainError);
  CHECK_THROWS_AS(verify_strong_doa(m, 2.1), DomainError);
}
