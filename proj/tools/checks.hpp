#pragma once

// Individual property checks run by `stablab check`. Each returns its
// measured statistic and the threshold it was held to.

#include <cstdint>
#include <vector>

#include "commands.hpp"

namespace stablab::cli {

CheckResult check_power_gap(const ExperimentConfig& c, std::uint64_t seed);
CheckResult check_homogeneity(const ExperimentConfig& c, std::uint64_t seed);
CheckResult check_triangle(const ExperimentConfig& c, std::uint64_t seed);
/// Symmetric centered X, Y, Z from normal, Laplace, uniform and logistic
/// families; kappa_r(X+Z, Y+Z) - kappa_r(X, Y) in block standard errors.
CheckResult check_regularity(const ExperimentConfig& c, std::uint64_t seed);
CheckResult check_cdf_closed_forms();
CheckResult check_ks_sampler(const ExperimentConfig& c, double alpha, std::uint64_t seed);
CheckResult check_stability(const ExperimentConfig& c, const StableLaw& law, std::uint64_t n, std::uint64_t seed);
CheckResult check_tail_expansion(const ExperimentConfig& c);
CheckResult check_tail_constant();
CheckResult check_quantile_roundtrip(const ExperimentConfig& c, std::uint64_t seed);
CheckResult check_strong_doa(const ExperimentConfig& c);
/// Finite constant for the configured model, divergence for a model with
/// gamma below r - alpha and a mismatched tail constant.
CheckResult check_finiteness(const ExperimentConfig& c);
std::vector<CheckResult> check_chi_bounds(const ExperimentConfig& c, std::uint64_t seed);

}  // namespace stablab::cli
