#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "stablab/rng.hpp"

namespace stablab {

/// Parameters of an alpha-stable law. The artifact works with the strictly
/// stable, symmetric family whose characteristic function is
/// exp(-(scale*|t|)^alpha); c1/c2 carry the upper/lower tail constants.
struct StableParams {
  double alpha = 1.5;
  double scale = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double b = 0.0;  // location; must be 0 (strictly stable)

  /// Symmetric law with c1 = c2 = tail_constant(alpha, scale).
  static StableParams symmetric(double alpha, double scale = 1.0);

  /// Throws DomainError naming the offending field.
  void validate() const;
  /// Throws DomainError unless the parameters are valid and symmetric.
  void require_symmetric() const;
  bool is_symmetric() const noexcept { return c1 == c2 && b == 0.0; }
};

struct CdfOptions {
  /// |x| / scale beyond which the CDF switches to the tail series.
  double tail_crossover = 50.0;
  /// Truncate the inversion integral where exp(-T^alpha)/T drops below this.
  double envelope = 1e-12;
  /// Absolute tolerance for the inversion quadrature (before the 1/pi factor).
  double abs_tol = 1e-12;
};

/// Characteristic function exp(-(scale*|t|)^alpha).
std::complex<double> stable_cf(double t, const StableParams& p);

/// CDF by numerical inversion of the characteristic function,
///   F(x) = 1/2 + (1/pi) * int_0^T sin(t x) exp(-(scale t)^alpha) / t dt,
/// with the convergent tail series beyond opts.tail_crossover * scale.
/// Throws NumericFailure if the quadrature error estimate exceeds 1e-9.
double stable_cdf(double x, const StableParams& p, const CdfOptions& opts = {});

/// Survival function 1 - F(x), computed without cancellation for x > 0.
double stable_sf(double x, const StableParams& p, const CdfOptions& opts = {});

/// Density by inversion: (1/pi) * int_0^T cos(t x) exp(-(scale t)^alpha) dt.
double stable_pdf(double x, const StableParams& p, const CdfOptions& opts = {});

/// n exact draws via the two-uniform transform (uniform angle plus unit
/// exponential) for symmetric stable variates.
std::vector<double> stable_sample(const StableParams& p, Rng& rng, std::size_t n);

/// One draw; building block for stable_sample and the partial-sum engine.
double stable_draw(const StableParams& p, Rng& rng);

/// Two-term tail expansion (c1 u^-a + c2 u^-2a, c2 u^-a + c1 u^-2a).
/// Only meaningful for large u; alpha = 2 has no power tail and throws.
std::pair<double, double> stable_tail(double u, const StableParams& p);

/// Constant c with u^alpha P[X > u] -> c for the symmetric law:
///   c = scale^alpha * Gamma(alpha) * sin(pi alpha / 2) / pi.
double tail_constant(const StableParams& p);
double tail_constant(double alpha, double scale = 1.0);

/// Leading-order asymptotic series of the survival function of the standard
/// (scale 1) symmetric law, summed until the terms stop shrinking:
///   (1/pi) sum_k (-1)^(k+1) Gamma(k alpha)/k! sin(k pi alpha / 2) y^(-k alpha).
double stable_tail_series(double y, double alpha);

/// Symmetric stable law with a precomputed cubic-Hermite table of the CDF on
/// [0, tail_crossover * scale] and the tail series beyond. This is the fast
/// evaluator the metrics use; the table nodes come from stable_cdf/stable_pdf.
class StableLaw {
 public:
  explicit StableLaw(const StableParams& p, const CdfOptions& opts = {}, double step = 1.0 / 64.0);

  const StableParams& params() const noexcept { return params_; }
  const CdfOptions& options() const noexcept { return opts_; }
  double cdf(double x) const;
  double sf(double x) const;
  double tail_constant() const noexcept { return tail_constant_; }
  /// Largest interpolation error bound observed at table midpoints during
  /// construction (checked against a direct inversion).
  double table_error() const noexcept { return table_error_; }

 private:
  double upper(double y) const;  // survival of the standard law, y >= 0

  StableParams params_;
  CdfOptions opts_;
  double step_;
  double tail_constant_;
  double table_error_ = 0.0;
  std::shared_ptr<const std::vector<double>> sf_;   // survival at nodes
  std::shared_ptr<const std::vector<double>> pdf_;  // density at nodes
};

}  // namespace stablab
