#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablab/clt.hpp"
#include "stablab/errors.hpp"
#include "stablab/metrics.hpp"

using namespace stablab;

namespace {
const auto kLimit = StableParams::symmetric(1.5);
const auto kModel = DoaModel::matched(kLimit, 0.6, 1.0, 4.0);
}  // namespace

TEST_CASE("partial sum definition") {
  Rng a(12);
  Rng b(12);
  CHECK(partial_sum({kModel, 1}, a) == doa_draw(kModel, b));

  Rng c(13);
  Rng d(13);
  CHECK(partial_sum({kModel, 64}, c) == partial_sum({kModel, 64}, d));

  Rng e(14);
  Rng f(14);
  double sum = 0.0;
  for (int k = 0; k < 10; ++k) sum += doa_draw(kModel, f);
  CHECK(partial_sum({kModel, 10}, e) == doctest::Approx(sum * std::pow(10.0, -1.0 / 1.5)).epsilon(1e-15));

  Rng g(1);
  CHECK_THROWS_AS(partial_sum({kModel, 0}, g), DomainError);
}

TEST_CASE("stable summands reproduce the limit law") {
  const StableLaw law(kLimit);
  const auto xs = ensemble({kLimit, 32}, 77, 100000);
  CHECK(ks_statistic(EmpiricalCdf(xs), [&](double x) { return law.cdf(x); }) < ks_critical_001(xs.size()));
}

TEST_CASE("ensemble seeding and schedule independence") {
  const auto one = ensemble({kModel, 16}, 5, 1);
  Rng stream(stream_seed(5, 0));
  CHECK(one.front() == partial_sum({kModel, 16}, stream));

  const auto serial = ensemble({kModel, 1024}, 9, 10000, {1, 2e10});
  const auto parallel = ensemble({kModel, 1024}, 9, 10000, {8, 2e10});
  CHECK(serial == parallel);
  CHECK(ensemble({kModel, 1024}, 10, 10000, {3, 2e10}) != serial);

  CHECK_THROWS_AS(ensemble({kModel, 1000}, 1, 1000, {1, 1e5}), BudgetError);
  CHECK_THROWS_AS(ensemble({kModel, 10}, 1, 0), DomainError);
}

TEST_CASE("ensemble is centered") {
  const auto limit = StableParams::symmetric(1.7);
  const auto model = DoaModel::matched(limit, 0.4, 1.0, 3.0);
  const auto xs = ensemble({model, 1024}, 21, 100000, {1, 2e10});
  double mean = 0.0;
  for (double x : xs) mean += x / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  CHECK(std::abs(mean) <= 5.0 * se);

  auto sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  const double median = sorted[sorted.size() / 2];
  const double iqr = sorted[3 * sorted.size() / 4] - sorted[sorted.size() / 4];
  CHECK(std::abs(median) <= 4.0 * (1.2533 / std::sqrt(m)) * (iqr / 1.349));
}
