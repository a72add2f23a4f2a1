#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stablab/clt.hpp"
#include "stablab/doa.hpp"
#include "stablab/errors.hpp"
#include "stablab/metrics.hpp"
#include "stablab/rate.hpp"
#include "stablab/stable.hpp"

namespace py = pybind11;
using namespace stablab;

namespace {

py::array_t<double> to_array(std::vector<double> v) {
  auto* heap = new std::vector<double>(std::move(v));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(heap->size())};
  const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(double))};
  return py::array_t<double>(shape, strides, heap->data(), owner);
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw DomainError("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

AnalyticCdf limit_cdf(const StableParams& p) { return analytic_cdf(StableLaw(p)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric stable laws, heavy-tailed summands and ideal-metric convergence rates.";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  auto numeric = py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
  py::register_exception<DivergenceError>(m, "DivergenceError", numeric.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  (void)domain;

  py::class_<StableParams>(m, "StableParams")
      .def(py::init([](double alpha, double scale) { return StableParams::symmetric(alpha, scale); }), py::arg("alpha"),
           py::arg("scale") = 1.0)
      .def_readonly("alpha", &StableParams::alpha)
      .def_readonly("scale", &StableParams::scale)
      .def("__repr__", [](const StableParams& p) {
        return "StableParams(alpha=" + py::repr(py::float_(p.alpha)).cast<std::string>() +
               ", scale=" + py::repr(py::float_(p.scale)).cast<std::string>() + ")";
      });

  m.def("stable_cf", &stable_cf, py::arg("t"), py::arg("params"));
  m.def("stable_cdf", [](double x, const StableParams& p) { return stable_cdf(x, p); }, py::arg("x"), py::arg("params"));
  m.def("stable_sf", [](double x, const StableParams& p) { return stable_sf(x, p); }, py::arg("x"), py::arg("params"));
  m.def("stable_pdf", [](double x, const StableParams& p) { return stable_pdf(x, p); }, py::arg("x"), py::arg("params"));
  m.def(
      "stable_sample",
      [](const StableParams& p, std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(stable_sample(p, rng, n));
      },
      py::arg("params"), py::arg("n"), py::arg("seed"));
  m.def("stable_tail", &stable_tail, py::arg("u"), py::arg("params"),
        "Leading and second term of the survival expansion at u.");
  m.def("tail_constant", py::overload_cast<const StableParams&>(&tail_constant), py::arg("params"));

  py::class_<DoaModel>(m, "DoaModel")
      .def(py::init(&DoaModel::make), py::arg("alpha"), py::arg("c"), py::arg("gamma"), py::arg("a"), py::arg("x0") = 4.0)
      .def_static("matched", &DoaModel::matched, py::arg("limit"), py::arg("gamma"), py::arg("a"), py::arg("x0") = 4.0)
      .def_readonly("alpha", &DoaModel::alpha)
      .def_readonly("c", &DoaModel::c)
      .def_readonly("gamma", &DoaModel::gamma)
      .def_readonly("a", &DoaModel::a)
      .def_readonly("x0", &DoaModel::x0)
      .def_readonly("K", &DoaModel::K)
      .def("survival", [](const DoaModel& d, double x) { return doa_survival(x, d); }, py::arg("x"))
      .def("cdf", [](const DoaModel& d, double x) { return doa_cdf(x, d); }, py::arg("x"))
      .def("quantile", [](const DoaModel& d, double u) { return doa_quantile(u, d); }, py::arg("u"))
      .def(
          "sample",
          [](const DoaModel& d, std::size_t n, std::uint64_t seed) {
            Rng rng(seed);
            return to_array(doa_sample(d, rng, n));
          },
          py::arg("n"), py::arg("seed"));

  py::class_<StrongDoaReport>(m, "StrongDoaReport")
      .def_readonly("K_observed", &StrongDoaReport::K_observed)
      .def_readonly("K_bound", &StrongDoaReport::K_bound)
      .def_readonly("within_bound", &StrongDoaReport::within_bound)
      .def_readonly("condition_met", &StrongDoaReport::condition_met)
      .def_readonly("r", &StrongDoaReport::r);
  m.def("verify_strong_doa", &verify_strong_doa, py::arg("model"), py::arg("r"), py::arg("grid_points") = 2000);

  m.def(
      "kappa_r",
      [](const py::array_t<double>& x, const StableParams& limit, double r, std::optional<double> window) {
        QuadConfig quad;
        quad.window = window;
        return kappa_r(EmpiricalCdf(to_vector(x)), limit_cdf(limit), MetricOrder::of(r), quad);
      },
      py::arg("samples"), py::arg("limit"), py::arg("r"), py::arg("window") = py::none(),
      "kappa_r between a sample and a stable law; pass a window when r >= alpha.");
  m.def(
      "kappa_r_samples",
      [](const py::array_t<double>& x, const py::array_t<double>& y, double r) {
        return kappa_r(EmpiricalCdf(to_vector(x)), EmpiricalCdf(to_vector(y)), MetricOrder::of(r));
      },
      py::arg("x"), py::arg("y"), py::arg("r"));
  m.def(
      "rate_constant",
      [](const DoaModel& model, const StableParams& limit, double r) {
        return rate_constant(model, limit, MetricOrder::of(r));
      },
      py::arg("model"), py::arg("limit"), py::arg("r") = 2.0);
  m.def(
      "wasserstein1",
      [](const py::array_t<double>& x, const py::array_t<double>& y) {
        return wasserstein1(EmpiricalCdf(to_vector(x)), EmpiricalCdf(to_vector(y)));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "cf_distance",
      [](const py::array_t<double>& x, const StableParams& limit, double t) {
        return cf_distance(to_vector(x), limit, t);
      },
      py::arg("samples"), py::arg("limit"), py::arg("t"));
  m.def("power_gap", &power_gap, py::arg("x"), py::arg("y"), py::arg("r"));

  m.def(
      "ensemble",
      [](const py::object& law, std::uint64_t n, std::uint64_t seed, std::size_t m, unsigned threads) {
        const Summand summand =
            py::isinstance<DoaModel>(law) ? Summand(law.cast<DoaModel>()) : Summand(law.cast<StableParams>());
        EnsembleOptions opts;
        opts.threads = threads;
        std::vector<double> out;
        {
          py::gil_scoped_release release;
          out = ensemble(PartialSumSpec{summand, n}, seed, m, opts);
        }
        return to_array(std::move(out));
      },
      py::arg("law"), py::arg("n"), py::arg("seed"), py::arg("m"), py::arg("threads") = 1,
      "m normalized partial sums of n summands; identical for every thread count.");

  m.def("theoretical_slope", &theoretical_slope, py::arg("alpha"), py::arg("r"));

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope", &RateFit::slope)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("r_squared", &RateFit::r_squared)
      .def_readonly("points_used", &RateFit::points_used)
      .def_readonly("floor_filtered", &RateFit::floor_filtered);
  m.def(
      "fit_slope",
      [](const std::vector<std::uint64_t>& n, const std::vector<double>& distance, double floor, double floor_factor) {
        if (n.size() != distance.size()) throw DomainError("n and distance must have the same length");
        RateCurve curve;
        curve.floor = floor;
        for (std::size_t i = 0; i < n.size(); ++i) curve.entries.push_back({n[i], distance[i], 0.0});
        return fit_slope(curve, floor_factor);
      },
      py::arg("n"), py::arg("distance"), py::arg("floor") = 0.0, py::arg("floor_factor") = 3.0,
      "Least-squares slope of log distance on log n.");
}
