#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vnd/errors.hpp"
#include "vnd/inclusions.hpp"
#include "vnd/variational.hpp"

namespace py = pybind11;
using namespace vnd;

namespace {

State to_state(const ComplexMatrix& m) { return State(m); }

py::dict result_dict(const DivergenceResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["diagnostics"] = r.diagnostics;
  return d;
}

GridOptions grid(double t_min, double t_max, int n_points) { return GridOptions{t_min, t_max, n_points}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Divergences, variational formulas and index bounds for finite-dimensional algebras";
  m.attr("__version__") = VND_VERSION;

  // Translators run in reverse registration order, so the base class goes first.
  py::register_exception<vnd::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<vnd::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<vnd::NotPositive>(m, "NotPositive", PyExc_ValueError);
  py::register_exception<vnd::Unsupported>(m, "Unsupported", PyExc_ValueError);

  m.def("relative_entropy", [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return relative_entropy(to_state(rho), to_state(sigma)).value;
  }, py::arg("rho"), py::arg("sigma"));

  m.def("fidelity", [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return fidelity(to_state(rho), to_state(sigma)).value;
  }, py::arg("rho"), py::arg("sigma"));

  m.def("sandwiched_renyi", [](const ComplexMatrix& rho, const ComplexMatrix& sigma, double s) {
    return sandwiched_renyi(to_state(rho), to_state(sigma), s).value;
  }, py::arg("rho"), py::arg("sigma"), py::arg("s"));

  m.def("generalized_fidelity",
        [](const ComplexMatrix& rho, const ComplexMatrix& sigma, double s, double t_min, double t_max, int n_points) {
          return result_dict(generalized_fidelity(to_state(rho), to_state(sigma), s, grid(t_min, t_max, n_points)));
        },
        py::arg("rho"), py::arg("sigma"), py::arg("s"), py::arg("t_min") = 1e-6, py::arg("t_max") = 1e6,
        py::arg("grid_points") = 2048);

  m.def("kosaki_entropy",
        [](const ComplexMatrix& rho, const ComplexMatrix& sigma, double t_min, double t_max, int n_points) {
          return result_dict(kosaki_entropy(to_state(rho), to_state(sigma), grid(t_min, t_max, n_points)));
        },
        py::arg("rho"), py::arg("sigma"), py::arg("t_min") = 1e-6, py::arg("t_max") = 1e6,
        py::arg("grid_points") = 2048);

  m.def("lp_norm_oracle", [](const ComplexMatrix& zeta, const ComplexMatrix& psi, double p) {
    return lp_norm_oracle(to_state(zeta), to_state(psi), p);
  }, py::arg("zeta"), py::arg("psi"), py::arg("p"));

  m.def("pinching_index", [](Index n) {
    return pimsner_popa_index(trace_conditional_expectation(MatrixAlgebra::full(n), MatrixAlgebra::diagonal(n))).index;
  }, py::arg("n"));

  m.def("orbifold_index", [](Index n, const std::string& group) {
    return build_orbifold_inclusion(n, group, ComplexVector::Ones(n * n)).index.index;
  }, py::arg("n"), py::arg("group"));

  m.def("certainty_relation", [](Index n, const std::string& group, const ComplexVector& psi) {
    CertaintyResult c = certainty_relation(build_orbifold_inclusion(n, group, psi));
    py::dict d;
    d["s_M"] = c.s_M;
    d["s_N_prime"] = c.s_N_prime;
    d["sum"] = c.sum;
    d["log_index"] = c.log_index;
    return d;
  }, py::arg("n"), py::arg("group"), py::arg("psi"));

  m.def("bell_orbifold", [](Index n, const std::string& group, const std::vector<double>& s_values, bool product) {
    BellOrbifoldOptions opts;
    opts.product_state = product;
    py::list rows;
    for (const auto& r : bell_orbifold_experiment(n, group, s_values, opts)) {
      py::dict d;
      d["s"] = r.s;
      d["sandwiched_renyi"] = r.sandwiched_renyi;
      d["phi_hat"] = r.phi_hat;
      d["phi_dual_upper"] = r.phi_dual_upper;
      d["fidelity"] = r.fidelity;
      d["log_group_order"] = r.log_group_order;
      rows.append(d);
    }
    return rows;
  }, py::arg("n"), py::arg("group"), py::arg("s_values"), py::arg("product_state") = false);
}
