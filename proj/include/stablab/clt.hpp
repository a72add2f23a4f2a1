#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "stablab/doa.hpp"
#include "stablab/rng.hpp"
#include "stablab/stable.hpp"

namespace stablab {

/// Law of the summands: a heavy-tailed model, or the stable law itself for
/// control runs.
using Summand = std::variant<DoaModel, StableParams>;

double summand_alpha(const Summand& law);

/// S_n = n^(-1/alpha) (V_1 + ... + V_n). Both summand families are exactly
/// centered, so no mean is subtracted.
struct PartialSumSpec {
  Summand law;
  std::uint64_t n = 1;

  void validate() const;
};

/// One draw of S_n from `rng`.
double partial_sum(const PartialSumSpec& spec, Rng& rng);

struct EnsembleOptions {
  unsigned threads = 1;
  /// Largest n * m accepted.
  double budget = 2e10;
};

/// m draws of S_n. Draw k uses Rng(stream_seed(master_seed, k)), so the
/// result depends only on (spec, master_seed, m) and not on `threads`.
std::vector<double> ensemble(const PartialSumSpec& spec, std::uint64_t master_seed, std::size_t m,
                             const EnsembleOptions& options = {});

}  // namespace stablab
