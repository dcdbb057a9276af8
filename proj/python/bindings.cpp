// Python bindings for the quantum battery simulator: parameters, model
// builders, schedule evolution, the stroboscopic fast path and the tau-scan
// analysis layer.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zenobat/analysis.hpp"

namespace py = pybind11;
using namespace zenobat;

namespace {

using PyMatrix = std::vector<std::vector<Complex>>;

PyMatrix to_py(const ComplexMatrix& m) {
  PyMatrix out(static_cast<size_t>(m.dim()), std::vector<Complex>(static_cast<size_t>(m.dim())));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
  return out;
}

Pauli pauli_from_name(const std::string& axis) {
  if (axis == "x") return Pauli::x;
  if (axis == "y") return Pauli::y;
  if (axis == "z") return Pauli::z;
  if (axis == "plus" || axis == "+") return Pauli::plus;
  if (axis == "minus" || axis == "-") return Pauli::minus;
  throw InvalidArgument("axis must be one of x, y, z, plus, minus");
}

RabiRegime regime_from_name(const std::string& name) {
  if (name == "bare_resonant") return RabiRegime::bare_resonant;
  if (name == "pulsed_dense_resonant") return RabiRegime::pulsed_dense_resonant;
  throw InvalidArgument("regime must be 'bare_resonant' or 'pulsed_dense_resonant'");
}

}  // namespace

PYBIND11_MODULE(zenobat, m) {
  m.doc() = "Modulator-assisted quantum battery simulator";

  py::register_exception<Error>(m, "ZenobatError");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, double, double, std::optional<double>>(), py::arg("omega0"),
           py::arg("g"), py::arg("gamma") = 1.0, py::arg("mu") = 1.0,
           py::arg("omega1") = py::none())
      .def_property_readonly("omega0", &ModelParams::omega0)
      .def_property_readonly("omega1", &ModelParams::omega1)
      .def_property_readonly("g", &ModelParams::g)
      .def_property_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("mu", &ModelParams::mu)
      .def_property_readonly("theta", &ModelParams::theta)
      .def_property_readonly("lambda1", &ModelParams::lambda1)
      .def_property_readonly("lambda2", &ModelParams::lambda2)
      .def_property_readonly("lambda3", &ModelParams::lambda3)
      .def_property_readonly("lambda4", &ModelParams::lambda4)
      .def_property_readonly("resonant_omega1", &ModelParams::resonant_omega1)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(omega0=" + std::to_string(p.omega0()) +
               ", g=" + std::to_string(p.g()) + ", gamma=" + std::to_string(p.gamma()) +
               ", mu=" + std::to_string(p.mu()) + ", omega1=" + std::to_string(p.omega1()) + ")";
      });

  py::class_<Phase>(m, "Phase")
      .def_static("free", &Phase::free_evolution, py::arg("duration"))
      .def_static("pulsed", &Phase::pulsed, py::arg("duration"), py::arg("tau"));

  py::class_<EnergyTimeSeries>(m, "EnergyTimeSeries")
      .def_readonly("times", &EnergyTimeSeries::times)
      .def_readonly("ec", &EnergyTimeSeries::ec)
      .def_readonly("eb", &EnergyTimeSeries::eb)
      .def_readonly("phase_index", &EnergyTimeSeries::phase_index)
      .def("__len__", &EnergyTimeSeries::size);

  py::class_<ScheduleResult>(m, "ScheduleResult")
      .def_readonly("series", &ScheduleResult::series)
      .def_readonly("actual_durations", &ScheduleResult::actual_durations)
      .def_property_readonly("final_state", [](const ScheduleResult& r) {
        return r.final_state.amplitudes();
      });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("a", &FitResult::a)
      .def_readonly("t_charge", &FitResult::t_charge)
      .def_readonly("residual", &FitResult::residual)
      .def_readonly("resolved", &FitResult::resolved);

  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("taus", &ScanResult::taus)
      .def_readonly("fits", &ScanResult::fits)
      .def_readonly("predicted_peaks", &ScanResult::predicted_peaks)
      .def_readonly("detected_peaks", &ScanResult::detected_peaks)
      .def_readonly("valley_indices", &ScanResult::valley_indices)
      .def_readonly("valley_slope", &ScanResult::valley_slope)
      .def_readonly("valley_residual", &ScanResult::valley_residual);

  m.def("pauli", [](const std::string& axis) { return to_py(pauli(pauli_from_name(axis))); },
        py::arg("axis"));
  m.def("expanded_charger_hamiltonian",
        [](const ModelParams& p) { return to_py(expanded_charger_hamiltonian(p)); });
  m.def("full_hamiltonian", [](const ModelParams& p) { return to_py(full_hamiltonian(p)); });
  m.def("battery_hamiltonian",
        [](const ModelParams& p) { return to_py(battery_hamiltonian(p)); });
  m.def("effective_charger_hamiltonian",
        [](const ModelParams& p) { return to_py(effective_charger_hamiltonian(p)); });
  m.def("pulse_operator",
        [](const ModelParams& p, int n) { return to_py(pulse_operator(p, n)); },
        py::arg("params"), py::arg("n_qubits") = 3);
  m.def("floquet_operator",
        [](const ModelParams& p, double tau, bool include_battery) {
          return to_py(floquet_operator(p, tau, include_battery).matrix);
        },
        py::arg("params"), py::arg("tau"), py::arg("include_battery") = false);
  m.def("eigenbasis",
        [](const ModelParams& p) {
          std::vector<std::pair<double, std::vector<Complex>>> out;
          for (const auto& [state, lam] : eigenbasis_mc(p))
            out.emplace_back(lam, state.amplitudes());
          return out;
        },
        "Closed-form (eigenvalue, amplitudes) pairs of the expanded charger, ordered v1..v4");
  m.def("initial_state",
        [](const ModelParams& p) { return initial_state(p).amplitudes(); });
  m.def("spectrum",
        [](const PyMatrix& rows) {
          const int n = static_cast<int>(rows.size());
          ComplexMatrix h(n);
          for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
              throw DimensionMismatch("matrix must be square");
            for (int j = 0; j < n; ++j) h(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
          }
          return herm_eig(h).eigenvalues;
        },
        "Ascending eigenvalues of a Hermitian matrix given as nested lists");

  m.def("run_schedule",
        [](const ModelParams& p, const std::vector<Phase>& phases, long pulse_stride,
           double free_dt) {
          Sampling s;
          s.pulse_stride = pulse_stride;
          s.free_dt = free_dt;
          return run_schedule(p, PulseSchedule(phases), s);
        },
        py::arg("params"), py::arg("phases"), py::arg("pulse_stride") = 1,
        py::arg("free_dt") = 0.0);
  m.def("run_stroboscopic", &run_stroboscopic, py::arg("params"), py::arg("tau"),
        py::arg("n_pulses"), py::arg("sample_stride") = 1);
  m.def("rabi_oracle",
        [](const ModelParams& p, const std::string& regime, double t) {
          const RabiEnergies e = rabi_oracle(p, regime_from_name(regime), t);
          return std::make_pair(e.ec, e.eb);
        },
        py::arg("params"), py::arg("regime"), py::arg("t"));

  m.def("fit_charging_curve", &fit_charging_curve, py::arg("series"), py::arg("params"));
  m.def("predict_peaks", &predict_peaks, py::arg("params"), py::arg("n_max"));
  m.def("scan_tau", &scan_tau, py::arg("params"), py::arg("tau_grid"), py::arg("window"),
        py::arg("parallel") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("tau_scaled", &tau_scaled, py::arg("params"), py::arg("tau"));
  m.def("make_scan_grid", &make_scan_grid, py::arg("params"), py::arg("start_scaled"),
        py::arg("stop_scaled"), py::arg("step_scaled"), py::arg("refine_factor") = 5);
  m.def("default_scan_window", &default_scan_window, py::arg("params"));
}
