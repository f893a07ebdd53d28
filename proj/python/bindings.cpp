#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "qobs/analysis.hpp"
#include "qobs/augmented.hpp"
#include "qobs/matrix.hpp"
#include "qobs/observer.hpp"
#include "qobs/plant.hpp"
#include "qobs/quantum_system.hpp"

namespace py = pybind11;
using namespace qobs;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw std::invalid_argument("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Direct-coupled coherent quantum observer toolkit";
  m.attr("__version__") = "0.1.0";

  py::class_<Matrix>(m, "Matrix")
      .def(py::init(&matrix_from_rows), py::arg("rows"))
      .def_property_readonly("rows", &Matrix::rows)
      .def_property_readonly("cols", &Matrix::cols)
      .def("tolist", &matrix_to_rows)
      .def("__getitem__",
           [](const Matrix& a, std::pair<std::size_t, std::size_t> ij) {
             if (ij.first >= a.rows() || ij.second >= a.cols())
               throw py::index_error("matrix index out of range");
             return a(ij.first, ij.second);
           })
      .def("__eq__", [](const Matrix& a, const Matrix& b) { return a == b; })
      .def("__repr__", [](const Matrix& a) {
        return "Matrix(" + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
               ")";
      });

  m.def("expm", &expm, py::arg("m"), py::arg("t") = 1.0,
        "Matrix exponential e^{m t}");

  py::class_<QuantumLinearSystem>(m, "QuantumLinearSystem")
      .def_readonly("hamiltonian", &QuantumLinearSystem::hamiltonian)
      .def_readonly("drift", &QuantumLinearSystem::drift);

  py::class_<RealizabilityReport>(m, "RealizabilityReport")
      .def_readonly("residual", &RealizabilityReport::residual)
      .def_readonly("passed", &RealizabilityReport::pass);

  m.def(
      "check_realizability",
      [](const QuantumLinearSystem& sys) { return check_realizability(sys); },
      py::arg("system"));

  py::class_<PlantRealization>(m, "PlantRealization")
      .def_property_readonly("omega_p",
                             [](const PlantRealization& p) { return p.spec.omega_p; })
      .def_readonly("r_p", &PlantRealization::r_p)
      .def_readonly("a_p", &PlantRealization::a_p)
      .def_readonly("c_p", &PlantRealization::c_p)
      .def_readonly("a_bar_p", &PlantRealization::a_bar_p)
      .def_readonly("c_bar_p", &PlantRealization::c_bar_p)
      .def_readonly("system", &PlantRealization::system);

  m.def(
      "build_plant",
      [](double omega_p, std::pair<double, double> c_p1) {
        return build_plant({omega_p, {c_p1.first, c_p1.second}});
      },
      py::arg("omega_p") = 1.0, py::arg("c_p1") = std::make_pair(1.0, 0.0));

  m.def("plant_propagator", &plant_propagator, py::arg("plant"), py::arg("t"));
  m.def("plant_output_coeffs", &plant_output_coeffs, py::arg("plant"), py::arg("t"));

  py::class_<ObserverRealization>(m, "ObserverRealization")
      .def_readonly("mu", &ObserverRealization::mu)
      .def_readonly("omega_p", &ObserverRealization::omega_p)
      .def_readonly("omega_o", &ObserverRealization::omega_o)
      .def_readonly("beta", &ObserverRealization::beta)
      .def_readonly("r_o", &ObserverRealization::r_o)
      .def_readonly("a_o", &ObserverRealization::a_o)
      .def_readonly("c_o", &ObserverRealization::c_o)
      .def_readonly("gain_l", &ObserverRealization::gain_l)
      .def_readonly("system", &ObserverRealization::system);

  m.def(
      "build_observer",
      [](double mu, const PlantRealization& plant) {
        return build_observer({mu}, plant);
      },
      py::arg("mu"), py::arg("plant"));

  m.def("observer_propagator", &observer_propagator, py::arg("observer"), py::arg("t"));

  py::class_<AugmentedSystem>(m, "AugmentedSystem")
      .def_readonly("omega_p", &AugmentedSystem::omega_p)
      .def_readonly("mu", &AugmentedSystem::mu)
      .def_readonly("r_c", &AugmentedSystem::r_c)
      .def_readonly("r_a", &AugmentedSystem::r_a)
      .def_readonly("a_a", &AugmentedSystem::a_a)
      .def_readonly("a_bar_a", &AugmentedSystem::a_bar_a)
      .def_readonly("system", &AugmentedSystem::system);

  m.def("build_augmented", &build_augmented, py::arg("plant"), py::arg("observer"));
  m.def("augmented_propagator", &augmented_propagator, py::arg("augmented"),
        py::arg("t"));

  py::class_<NondisturbanceReport>(m, "NondisturbanceReport")
      .def_readonly("coupling_residual", &NondisturbanceReport::coupling_residual)
      .def_readonly("trajectory_residual", &NondisturbanceReport::trajectory_residual)
      .def_readonly("passed", &NondisturbanceReport::pass);

  m.def("verify_nondisturbance", &verify_nondisturbance, py::arg("augmented"),
        py::arg("plant"));

  m.def(
      "g_coeffs",
      [](const ObserverRealization& obs, double t_avg, double t) {
        return g_coeffs(obs, {t_avg}, t);
      },
      py::arg("observer"), py::arg("t_avg"), py::arg("t"));
  m.def(
      "h_coeffs",
      [](const PlantRealization& plant, double t_avg, double t) {
        return h_coeffs(plant, {t_avg}, t);
      },
      py::arg("plant"), py::arg("t_avg"), py::arg("t"));
  m.def("k_coeffs", &k_coeffs, py::arg("augmented"), py::arg("t"));
  m.def(
      "l_coeffs",
      [](const AugmentedSystem& aug, double t_avg, double t) {
        return l_coeffs(aug, {t_avg}, t);
      },
      py::arg("augmented"), py::arg("t_avg"), py::arg("t"));

  py::class_<ErrorEnvelope>(m, "ErrorEnvelope")
      .def_readonly("mu", &ErrorEnvelope::mu)
      .def_readonly("t_avg", &ErrorEnvelope::t_avg)
      .def_readonly("sup_g_sq", &ErrorEnvelope::sup_g_sq)
      .def_readonly("sup_h_sq", &ErrorEnvelope::sup_h_sq)
      .def_readonly("combined", &ErrorEnvelope::combined);

  m.def(
      "error_envelope",
      [](const PlantRealization& plant, const ObserverRealization& obs, double t_avg) {
        return error_envelope(plant, obs, {t_avg});
      },
      py::arg("plant"), py::arg("observer"), py::arg("t_avg"));

  py::class_<DesignResult>(m, "DesignResult")
      .def_readonly("t_avg", &DesignResult::t_avg)
      .def_readonly("mu", &DesignResult::mu)
      .def_readonly("envelope", &DesignResult::envelope);

  m.def("design_for_epsilon", &design_for_epsilon, py::arg("plant"),
        py::arg("epsilon"));

  py::class_<CoefficientSeries>(m, "CoefficientSeries")
      .def_readonly("label", &CoefficientSeries::label)
      .def_readonly("basis", &CoefficientSeries::basis)
      .def_readonly("start_index", &CoefficientSeries::start_index)
      .def_readonly("values", &CoefficientSeries::values);

  py::class_<CoefficientTrace>(m, "CoefficientTrace")
      .def_readonly("times", &CoefficientTrace::times)
      .def_readonly("series", &CoefficientTrace::series);

  m.def(
      "make_trace",
      [](const PlantRealization& plant, const ObserverRealization& obs,
         const AugmentedSystem& aug, double t_avg, double t_max, double dt) {
        return make_trace(plant, obs, aug, {t_avg}, t_max, dt);
      },
      py::arg("plant"), py::arg("observer"), py::arg("augmented"), py::arg("t_avg"),
      py::arg("t_max"), py::arg("dt"));
}
