#pragma once

#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stablab::quad {

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive bisection on the 15-point Gauss-Kronrod rule with an absolute
/// tolerance. The tolerance is halved with every split, so the returned error
/// is the sum of the accepted panel estimates. A panel is also accepted once
/// its error estimate is at the rounding floor (a few hundred ulps of the
/// panel's L1 norm), since bisecting further cannot reduce it. Works for real
/// and complex integrands.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, unsigned max_depth = 30)
    -> Estimate<decltype(f(a))> {
  using Value = decltype(f(a));
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  Estimate<Value> out;
  if (a == b) return out;

  struct Frame {
    double a, b, tol;
    unsigned depth;
  };
  Frame stack[128];
  std::size_t top = 0;
  stack[top++] = {a, b, abs_tol, 0};
  while (top > 0) {
    const Frame fr = stack[--top];
    double err = 0.0;
    double l1 = 0.0;
    const Value v = Rule::integrate(f, fr.a, fr.b, 0, 0.0, &err, &l1);
    // Boost reports the single-panel error on the reference interval [-1, 1].
    err *= 0.5 * (fr.b - fr.a);
    out.evaluations += 15;
    const double mid = 0.5 * (fr.a + fr.b);
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * l1;
    const bool accept = !(err > fr.tol) || !(err > floor) || fr.depth >= max_depth ||
                        top + 2 > std::size(stack) || mid <= fr.a || mid >= fr.b;
    if (accept) {
      out.value += v;
      out.error += err;
      continue;
    }
    stack[top++] = {mid, fr.b, 0.5 * fr.tol, fr.depth + 1};
    stack[top++] = {fr.a, mid, 0.5 * fr.tol, fr.depth + 1};
  }
  return out;
}

}  // namespace stablab::quad
