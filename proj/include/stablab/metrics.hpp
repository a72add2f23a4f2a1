#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stablab/doa.hpp"
#include "stablab/stable.hpp"

namespace stablab {

/// Order r = m + beta of an ideal metric, m integer, beta in (0, 1].
struct MetricOrder {
  double r = 2.0;
  int m = 1;
  double beta = 1.0;

  /// Splits r; computations accept r in [1, 2].
  static MetricOrder of(double r);
};

/// Right-continuous step CDF of a sample, F(x) = #{x_i <= x} / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double cdf(double x) const;
  double sf(double x) const;
  /// Number of points <= x.
  std::size_t rank(double x) const;

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<double> points_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// Continuous CDF given by closures. `sf` must be accurate for large x
/// (no 1 - cdf cancellation). Closures must be safe to call concurrently.
struct AnalyticCdf {
  std::function<double(double)> cdf;
  std::function<double(double)> sf;
  /// Abscissas where the law is not smooth or switches formula.
  std::vector<double> kinks;
  /// Rough spread of the law; the core integration region scales with it.
  double scale = 1.0;
};

AnalyticCdf analytic_cdf(const StableLaw& law);
AnalyticCdf analytic_cdf(const DoaModel& model);

struct QuadConfig {
  double abs_tol = 1e-9;  // analytic against analytic
  double emp_tol = 1e-8;  // empirical against analytic
  double cap = 1e8;       // outermost tail checkpoint
  /// Restrict the integral to [-window, window]. Required whenever an
  /// empirical argument is compared with a law whose r-th moment is
  /// infinite, since the full integral then diverges.
  std::optional<double> window;
};

/// kappa_r(F, G) = r * int |u|^(r-1) |F(u) - G(u)| du.
/// Step CDFs are integrated exactly between jumps; curved CDFs by adaptive
/// Gauss-Kronrod, with the outer tails closed by geometric checkpoints up
/// to `cap`. Throws DivergenceError when the tail increments stop shrinking.
double kappa_r(const EmpiricalCdf& f, const EmpiricalCdf& g, const MetricOrder& order, const QuadConfig& quad = {});
double kappa_r(const EmpiricalCdf& f, const AnalyticCdf& g, const MetricOrder& order, const QuadConfig& quad = {});
double kappa_r(const AnalyticCdf& f, const EmpiricalCdf& g, const MetricOrder& order, const QuadConfig& quad = {});
double kappa_r(const AnalyticCdf& f, const AnalyticCdf& g, const MetricOrder& order, const QuadConfig& quad = {});

/// Upper bound 2 kappa_r on the Zolotarev distance of two centered laws.
template <class F, class G>
double zeta_r_upper(const F& f, const G& g, const MetricOrder& order, const QuadConfig& quad = {}) {
  return 2.0 * kappa_r(f, g, order, quad);
}

/// int |F - G|; the r = 1 case of kappa_r.
template <class F, class G>
double wasserstein1(const F& f, const G& g, const QuadConfig& quad = {}) {
  return kappa_r(f, g, MetricOrder::of(1.0), quad);
}

/// Empirical characteristic function (1/n) sum exp(i t x_k).
std::complex<double> empirical_cf(const std::vector<double>& samples, double t);

/// |E exp(itX) - E exp(itY)|.
double cf_distance(const std::vector<double>& x, const std::vector<double>& y, double t);
double cf_distance(const std::vector<double>& x, const StableParams& limit, double t);

/// 2 |x|x|^(r-1) - y|y|^(r-1)| - |x - y| max(|x|^(r-1), |y|^(r-1)), which is
/// nonnegative for r >= 1.
double power_gap(double x, double y, double r);

/// sup_x |F_n(x) - G(x)| for a sample against a continuous CDF.
double ks_statistic(const EmpiricalCdf& f, const std::function<double(double)>& cdf);
/// Two-sided KS critical value at level 0.001, 1.949 / sqrt(n).
double ks_critical_001(std::size_t n);

}  // namespace stablab
