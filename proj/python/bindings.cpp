#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pvfilter/commands.hpp"
#include "pvfilter/contour.hpp"
#include "pvfilter/dirac.hpp"
#include "pvfilter/errors.hpp"
#include "pvfilter/oscillator.hpp"
#include "pvfilter/power_counting.hpp"
#include "pvfilter/reg_algebra.hpp"
#include "pvfilter/verify.hpp"

namespace py = pybind11;
using namespace pvfilter;

namespace {

MassLadder ladder_of(const std::vector<double>& masses) { return MassLadder(masses); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regulator-ladder propagators, toy filter and power counting";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<Contour>(m, "Contour")
      .value("FEYNMAN", Contour::kFeynman)
      .value("RETARDED", Contour::kRetarded)
      .value("CLOSED", Contour::kClosed)
      .value("PLUS", Contour::kPlus)
      .value("MINUS", Contour::kMinus);

  py::class_<PartialFractionDecomposition>(m, "PartialFractionDecomposition")
      .def_readonly("coefficients", &PartialFractionDecomposition::coefficients)
      .def_readonly("signs", &PartialFractionDecomposition::signs)
      .def_readonly("weights", &PartialFractionDecomposition::weights);

  m.def("decompose", [](const std::vector<double>& masses) { return decompose(ladder_of(masses)); },
        py::arg("masses"));
  m.def(
      "g_f",
      [](const std::vector<double>& masses, std::size_t K, std::size_t L, Complex z) {
        return g_f_scalar(ladder_of(masses), K, L, z);
      },
      py::arg("masses"), py::arg("K"), py::arg("L"), py::arg("z"));
  m.def(
      "sum_rule_residuals",
      [](const std::vector<double>& masses) {
        const MassLadder l = ladder_of(masses);
        return sum_rule_residuals(decompose(l), l);
      },
      py::arg("masses"));
  m.def(
      "recursion_residual",
      [](const std::vector<double>& masses, std::size_t K, std::size_t L, Complex z) {
        return recursion_residual(ladder_of(masses), K, L, z);
      },
      py::arg("masses"), py::arg("K"), py::arg("L"), py::arg("z"));

  m.def(
      "propagator",
      [](const std::vector<double>& masses, Contour c, double tau, std::optional<std::size_t> K,
         std::optional<std::size_t> L) {
        const MassLadder l = ladder_of(masses);
        return time_domain_propagator(l, c, K.value_or(0), L.value_or(l.regulators()), tau);
      },
      py::arg("masses"), py::arg("contour"), py::arg("tau"), py::arg("K") = py::none(),
      py::arg("L") = py::none());
  m.def(
      "propagator_oracle",
      [](const std::vector<double>& masses, Contour c, double tau, double epsilon,
         double cutoff) {
        const MassLadder l = ladder_of(masses);
        return numeric_contour_oracle(l, c, 0, l.regulators(), tau, epsilon, cutoff);
      },
      py::arg("masses"), py::arg("contour"), py::arg("tau"), py::arg("epsilon") = 1e-4,
      py::arg("cutoff") = 1e5);
  m.def(
      "smoothness_order",
      [](const std::vector<double>& masses) { return smoothness_order(ladder_of(masses)); },
      py::arg("masses"));
  m.def(
      "cutoff_probe",
      [](const std::vector<double>& masses, double cutoff) {
        return cutoff_probe(ladder_of(masses), cutoff);
      },
      py::arg("masses"), py::arg("cutoff"));

  m.def(
      "response",
      [](double omega0, double omega1, double tau) {
        return response_function(FilterSystem(omega0, omega1), tau);
      },
      py::arg("omega0"), py::arg("omega1"), py::arg("tau"));
  m.def(
      "kubo_commutator",
      [](double omega0, double omega1, double tau, int n_max) {
        return kubo_commutator(FilterSystem(omega0, omega1), n_max, tau);
      },
      py::arg("omega0"), py::arg("omega1"), py::arg("tau"), py::arg("n_max") = 8);
  m.def(
      "transfer_matrix",
      [](double omega0, double omega1, double v0, double width, std::optional<double> step) {
        const DriveSignal d = DriveSignal::gaussian(v0, width);
        return TransferMatrix(evolve_transfer(FilterSystem(omega0, omega1), d, d.t_min,
                                              d.t_max, step.value_or(width / 200.0)));
      },
      py::arg("omega0"), py::arg("omega1"), py::arg("v0"), py::arg("width") = 1.0,
      py::arg("step") = py::none());
  m.def(
      "born_series",
      [](double omega0, double omega1, double v0, double width, int order,
         std::optional<double> step) {
        return born_series(FilterSystem(omega0, omega1), DriveSignal::gaussian(v0, width),
                           order, step.value_or(width / 200.0));
      },
      py::arg("omega0"), py::arg("omega1"), py::arg("v0"), py::arg("width") = 1.0,
      py::arg("order") = 6, py::arg("step") = py::none());

  m.def(
      "equal_time_anticommutator",
      [](const std::vector<double>& masses, std::size_t K, std::size_t L,
         const std::array<double, 3>& p) {
        return SpinorMatrix(
            equal_time_anticommutator(ladder_of(masses), K, L, p, GammaSet::dirac()));
      },
      py::arg("masses"), py::arg("K"), py::arg("L"), py::arg("p"));
  m.def("gamma_matrices", [] {
    const GammaSet g = GammaSet::dirac();
    return std::vector<SpinorMatrix>(g.gamma.begin(), g.gamma.end());
  });

  m.def(
      "superficial_degree",
      [](int loops, int fermions, int photons, int n_reg) {
        return superficial_degree(DiagramSpec{"diagram", loops, fermions, photons}, n_reg);
      },
      py::arg("loops"), py::arg("fermions"), py::arg("photons"), py::arg("n_reg"));
  m.def(
      "minimal_regulators",
      [](int loops, int fermions, int photons) {
        return minimal_regulators(DiagramSpec{"diagram", loops, fermions, photons});
      },
      py::arg("loops"), py::arg("fermions"), py::arg("photons"));
  m.def("claim_table", [] {
    py::list rows;
    for (const ClaimRow& r : claim_table()) {
      rows.append(py::make_tuple(r.diagram.name, r.minimal, r.claimed, r.satisfied));
    }
    return rows;
  });

  m.def(
      "verify",
      [](std::optional<std::string> only, std::optional<double> tol) {
        verify::Options o;
        o.only = std::move(only);
        o.tolerance = tol;
        py::list rows;
        for (const verify::Check& c : verify::run_suite(o)) {
          rows.append(py::make_tuple(c.module + "." + c.name, c.passed, c.residual));
        }
        return rows;
      },
      py::arg("only") = py::none(), py::arg("tol") = py::none());
}
