#include "stablab/clt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

template <class Draw>
double normalized_sum(std::uint64_t n, double alpha, Rng& rng, Draw&& draw) {
  double sum = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) sum += draw(rng);
  return sum * std::pow(static_cast<double>(n), -1.0 / alpha);
}

double partial_sum_unchecked(const PartialSumSpec& spec, Rng& rng) {
  if (const auto* m = std::get_if<DoaModel>(&spec.law)) {
    return normalized_sum(spec.n, m->alpha, rng, [m](Rng& g) { return doa_draw(*m, g); });
  }
  const auto& p = std::get<StableParams>(spec.law);
  return normalized_sum(spec.n, p.alpha, rng, [&p](Rng& g) { return stable_draw(p, g); });
}

}  // namespace

double summand_alpha(const Summand& law) {
  return std::visit([](const auto& l) { return l.alpha; }, law);
}

void PartialSumSpec::validate() const {
  if (n < 1) throw DomainError("partial sum: n must be at least 1");
  if (const auto* m = std::get_if<DoaModel>(&law)) {
    m->validate();
  } else {
    std::get<StableParams>(law).require_symmetric();
  }
}

double partial_sum(const PartialSumSpec& spec, Rng& rng) {
  spec.validate();
  return partial_sum_unchecked(spec, rng);
}

std::vector<double> ensemble(const PartialSumSpec& spec, std::uint64_t master_seed, std::size_t m,
                             const EnsembleOptions& options) {
  spec.validate();
  if (m < 1) throw DomainError("ensemble: m must be at least 1");
  const double work = static_cast<double>(spec.n) * static_cast<double>(m);
  if (work > options.budget) {
    throw BudgetError("ensemble: n*m = " + std::to_string(spec.n) + "*" + std::to_string(m) +
                      " exceeds the draw budget");
  }

  std::vector<double> out(m);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(stream_seed(master_seed, k));
      out[k] = partial_sum_unchecked(spec, rng);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, m);
  if (workers == 1) {
    run(0, m);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = m * w / workers;
    const std::size_t end = m * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        run(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace stablab
