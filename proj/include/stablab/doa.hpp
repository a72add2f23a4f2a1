#pragma once

#include <cstddef>
#include <vector>

#include "stablab/rng.hpp"
#include "stablab/stable.hpp"

namespace stablab {

/// Symmetric heavy-tailed law in the strong domain of attraction of a
/// symmetric alpha-stable law. For x >= x0 the survival function is
///
///   S(x) = c x^-alpha (1 + a x^-gamma),
///
/// so the remainder h(x) = x^alpha S(x) - c = c a x^-gamma obeys
/// |h(x)| <= K x^-gamma with K = c |a|. On [0, x0) the survival function
/// falls linearly from 1/2 to S(x0); negative x mirror the positive side.
struct DoaModel {
  double alpha = 1.5;
  double c = 0.0;
  double gamma = 0.6;
  double a = 0.0;
  double x0 = 1.0;
  double K = 0.0;

  /// Model with K = c |a|.
  static DoaModel make(double alpha, double c, double gamma, double a, double x0);
  /// Model whose tail constant matches the symmetric stable law `limit`.
  static DoaModel matched(const StableParams& limit, double gamma, double a, double x0);

  /// Throws DomainError naming the first violated constraint.
  void validate() const;

  /// S(x0), the mass in each tail beyond the onset threshold.
  double tail_mass() const;
};

/// P[V > x].
double doa_survival(double x, const DoaModel& m);
/// P[V <= x], computed without cancellation for x < 0.
double doa_cdf(double x, const DoaModel& m);
/// Inverse of the CDF on (0, 1): closed form in the body and for a = 0,
/// bracketed Newton iteration on the tail otherwise.
double doa_quantile(double u, const DoaModel& m);
/// n draws by inverse transform.
std::vector<double> doa_sample(const DoaModel& m, Rng& rng, std::size_t n);
/// One draw; no validation (hot path for the partial-sum engine).
double doa_draw(const DoaModel& m, Rng& rng);

struct StrongDoaReport {
  double K_observed = 0.0;  // sup over the grid of |x^alpha S(x) - c| x^gamma
  double K_bound = 0.0;     // the model's K
  bool within_bound = false;
  bool condition_met = false;  // gamma > r - alpha
  double r = 0.0;
  std::size_t grid_points = 0;
};

/// Checks the remainder bound on a log grid over [x0, 1e6] and the
/// finiteness condition gamma > r - alpha. Requires r in (alpha, 2].
StrongDoaReport verify_strong_doa(const DoaModel& m, double r, std::size_t grid_points = 2000);

}  // namespace stablab
