#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mppdg/basis.hpp"
#include "mppdg/errors.hpp"
#include "mppdg/harness.hpp"
#include "mppdg/limiters.hpp"
#include "mppdg/problem.hpp"
#include "mppdg/time_integrator.hpp"

namespace py = pybind11;

namespace {

mppdg::RunConfig make_config(const std::string& problem, const std::map<std::string, std::string>& settings) {
  mppdg::RunConfig c;
  c.problem = problem;
  for (const auto& [k, v] : settings) {
    if (k == "params") throw mppdg::InvalidArgument("pass problem parameters as 'param' entries");
    mppdg::apply_setting(c, k, v);
  }
  return c;
}

mppdg::RunConfig with_params(mppdg::RunConfig c, const std::map<std::string, double>& params) {
  for (const auto& [k, v] : params) c.params[k] = v;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DG solver with a maximum-principle-preserving flux limiter";

  py::register_exception<mppdg::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<mppdg::NotFound>(m, "NotFound", PyExc_KeyError);
  py::register_exception<mppdg::Unsupported>(m, "Unsupported", PyExc_NotImplementedError);
  py::register_exception<mppdg::NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);
  py::register_exception<mppdg::CflViolation>(m, "CflViolation", PyExc_ArithmeticError);

  m.def("list_problems", [] {
    py::list out;
    for (const auto& p : mppdg::list_problems()) {
      py::dict d;
      d["name"] = p.name;
      d["dimension"] = p.dimension;
      d["description"] = p.description;
      d["parameters"] = p.parameters;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_json",
      [](const std::string& problem, const std::map<std::string, std::string>& settings,
         const std::map<std::string, double>& params) {
        mppdg::RunResult r;
        {
          py::gil_scoped_release release;
          r = mppdg::run_single(with_params(make_config(problem, settings), params));
        }
        return py::make_tuple(r.report.dump(), r.x_center, r.y_center, r.averages);
      },
      py::arg("problem"), py::arg("settings") = std::map<std::string, std::string>{},
      py::arg("params") = std::map<std::string, double>{});

  m.def(
      "converge_json",
      [](const std::string& problem, const std::vector<std::size_t>& meshes,
         const std::map<std::string, std::string>& settings, const std::map<std::string, double>& params) {
        py::gil_scoped_release release;
        const auto t = mppdg::run_convergence(with_params(make_config(problem, settings), params), meshes);
        return std::make_pair(t.to_json().dump(), t.to_csv());
      },
      py::arg("problem"), py::arg("meshes"), py::arg("settings") = std::map<std::string, std::string>{},
      py::arg("params") = std::map<std::string, double>{});

  m.def(
      "bounds_json",
      [](const std::string& suite, const std::vector<std::size_t>& meshes, const std::filesystem::path& out) {
        py::gil_scoped_release release;
        return mppdg::run_bounds_suite(suite, meshes, out).dump();
      },
      py::arg("suite"), py::arg("meshes") = std::vector<std::size_t>{}, py::arg("out") = std::filesystem::path{});

  m.def("bounds_suites", &mppdg::bounds_suites);
  m.def("worker_threads", &mppdg::worker_threads);

  m.def("gauss_rule", [](int n) {
    const auto& r = mppdg::gauss_rule(n);
    return py::make_tuple(r.nodes, r.weights);
  });
  m.def("legendre", [](int k, double x) {
    const auto v = mppdg::legendre_eval(k, x);
    return py::make_tuple(v.value, v.first, v.second);
  });

  m.def("minmod", &mppdg::minmod);
  m.def("tvb_minmod", &mppdg::tvb_minmod, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("threshold"));

  m.def(
      "limiter_bounds_1d",
      [](double f_minus, double f_plus, double gamma_upper, double gamma_lower) {
        const auto b = mppdg::limiter_bounds_1d(f_minus, f_plus, gamma_upper, gamma_lower);
        return py::make_tuple(b.upper_left, b.upper_right, b.lower_left, b.lower_right);
      },
      py::arg("f_minus"), py::arg("f_plus"), py::arg("gamma_upper"), py::arg("gamma_lower"));

  m.def(
      "mpp_limit_1d",
      [](const std::vector<double>& high, const std::vector<double>& low, const std::vector<double>& ubar,
         double lower, double upper, double lam, bool periodic) {
        const auto r = mppdg::apply_mpp_limiter_1d(mppdg::FluxRecord1D{high}, mppdg::FluxRecord1D{low}, ubar,
                                                   mppdg::BoundPair{lower, upper}, lam, periodic);
        return py::make_tuple(r.flux.values, r.report.theta_x, r.report.limited);
      },
      py::arg("high"), py::arg("low"), py::arg("ubar"), py::arg("lower"), py::arg("upper"), py::arg("lam"),
      py::arg("periodic") = true,
      "Limits cells + 1 interface fluxes; periodic input repeats the first interface at the end.");

  m.def(
      "ssprk3_scalar",
      [](const std::function<double(double, double)>& rhs, double u, double t, double dt) {
        return mppdg::ssprk3_scalar(rhs, u, t, dt);
      },
      py::arg("rhs"), py::arg("u"), py::arg("t"), py::arg("dt"));

  m.attr("REPORT_SCHEMA") = mppdg::report_schema_name;
  m.attr("CONVERGENCE_SCHEMA") = mppdg::convergence_schema_name;
  m.attr("BOUNDS_SCHEMA") = mppdg::bounds_schema_name;
}
