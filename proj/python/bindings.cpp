#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "cyclelsi/cycle_function.hpp"
#include "cyclelsi/error.hpp"
#include "cyclelsi/inequalities.hpp"
#include "cyclelsi/optimize.hpp"
#include "cyclelsi/products.hpp"
#include "cyclelsi/semigroup.hpp"
#include "cyclelsi/spectral.hpp"

namespace py = pybind11;
using namespace cyclelsi;

namespace {

using Values = std::vector<double>;

ProductSpace make_space(const std::vector<std::pair<std::size_t, double>>& factors) {
  std::vector<Factor> fs;
  for (const auto& [n, c] : factors) fs.push_back({n, c});
  return ProductSpace(std::move(fs));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sharp log-Sobolev and cubic Sobolev constants on discrete cycles";
  py::register_exception<Error>(m, "CyclelsiError", PyExc_ValueError);

  py::enum_<Projection>(m, "Projection")
      .value("CLAMP", Projection::ClampRenormalize)
      .value("SQUARE", Projection::SquareReparam);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("seed", &OptimizerConfig::seed)
      .def_readwrite("restarts", &OptimizerConfig::restarts)
      .def_readwrite("max_iters", &OptimizerConfig::max_iters)
      .def_readwrite("grad_tol", &OptimizerConfig::grad_tol)
      .def_readwrite("entropy_floor", &OptimizerConfig::entropy_floor)
      .def_readwrite("projection", &OptimizerConfig::projection)
      .def_readwrite("threads", &OptimizerConfig::threads);

  py::class_<RatioMinResult>(m, "RatioMinResult")
      .def_readonly("value", &RatioMinResult::value)
      .def_readonly("interior_value", &RatioMinResult::interior_value)
      .def_readonly("cap", &RatioMinResult::cap)
      .def_readonly("argmin", &RatioMinResult::argmin)
      .def_readonly("restarts_used", &RatioMinResult::restarts_used)
      .def_readonly("reached_cap", &RatioMinResult::reached_cap)
      .def_readonly("converged", &RatioMinResult::converged)
      .def_readonly("iterations", &RatioMinResult::iterations)
      .def("__repr__", [](const RatioMinResult& r) {
        return "RatioMinResult(value=" + std::to_string(r.value) + ", converged=" + (r.converged ? "True" : "False") +
               ")";
      });

  py::class_<HypercontractivityReport>(m, "HypercontractivityReport")
      .def_readonly("lhs", &HypercontractivityReport::lhs)
      .def_readonly("rhs", &HypercontractivityReport::rhs)
      .def_readonly("deficit", &HypercontractivityReport::deficit)
      .def_readonly("within_hypothesis", &HypercontractivityReport::within_hypothesis);

  m.def("spectral_gap", &spectral_gap, py::arg("n"));
  m.def(
      "spectral_gap_numeric", [](std::size_t n) { return spectral_gap_numeric(n).value; }, py::arg("n"));
  m.def("sup_norm_constant", &sup_norm_constant, py::arg("n"));
  m.def("l2_coercivity_constant", &l2_coercivity_constant, py::arg("n"));

  m.def(
      "dirichlet_form", [](const Values& f) { return dirichlet_form(CycleFunction(f)); }, py::arg("f"));
  m.def(
      "entropy_of_square", [](const Values& f) { return entropy_of_square(CycleFunction(f).values()); },
      py::arg("f"));
  m.def(
      "variance", [](const Values& f) { return variance(CycleFunction(f)); }, py::arg("f"));

  m.def(
      "cubic_deficit", [](const Values& x) { return cubic_deficit(CycleFunction(x)).deficit; }, py::arg("x"));
  m.def(
      "scalar_deficit",
      [](int which, double a, double r, double t) {
        if (which < 1 || which > 3) throw Error(ErrorCode::InvalidArgument, "bound must be 1, 2 or 3");
        return scalar_deficit(static_cast<ScalarBound>(which), {a, r, t});
      },
      py::arg("bound"), py::arg("a"), py::arg("r"), py::arg("t"));
  m.def("majorant_deficit", &majorant_deficit, py::arg("t"));

  m.def("estimate_alpha", &estimate_alpha, py::arg("n"), py::arg("config") = OptimizerConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_cubic_constant", &estimate_cubic_constant, py::arg("n"), py::arg("config") = OptimizerConfig{},
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "product_gap", [](const std::vector<std::pair<std::size_t, double>>& f) { return product_gap(make_space(f)); },
      py::arg("factors"));
  m.def(
      "sharp_constant",
      [](const std::vector<std::pair<std::size_t, double>>& f) { return sharp_constant(make_space(f)); },
      py::arg("factors"));
  m.def(
      "estimate_alpha_product",
      [](const std::vector<std::pair<std::size_t, double>>& f, const OptimizerConfig& cfg, std::size_t limit) {
        const ProductSpace space = make_space(f);
        py::gil_scoped_release release;
        return estimate_alpha_product(space, cfg, limit);
      },
      py::arg("factors"), py::arg("config") = OptimizerConfig{},
      py::arg("state_limit") = ProductSpace::kDefaultStateLimit);

  m.def(
      "heat", [](const Values& f, double t) { return apply_heat(CycleFunction(f), t).vector(); }, py::arg("f"),
      py::arg("t"));
  m.def("minimal_admissible_time", &minimal_admissible_time, py::arg("n"), py::arg("p"), py::arg("q"));
  m.def(
      "hypercontractivity_check",
      [](const Values& f, double t, double p, double q) {
        return hypercontractivity_check(CycleFunction(f), {f.size(), t, p, q});
      },
      py::arg("f"), py::arg("t"), py::arg("p"), py::arg("q"));
}
