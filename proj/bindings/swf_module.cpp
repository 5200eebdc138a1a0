#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swf/harness.hpp"
#include "swf/metrics.hpp"
#include "swf/model.hpp"
#include "swf/solver.hpp"
#include "swf/spectral.hpp"
#include "swf/support.hpp"
#include "swf/types.hpp"

namespace py = pybind11;
using namespace swf;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse Wirtinger flow phase retrieval: signal/measurement "
            "generators, the SWF solver, and error metrics.";
  m.attr("__version__") = kVersion;

  py::class_<SignalVector>(m, "SignalVector")
      .def_readonly("values", &SignalVector::values)
      .def_readonly("support", &SignalVector::support)
      .def_readonly("sparsity_k", &SignalVector::sparsity_k);

  py::class_<MeasurementEnsemble>(m, "MeasurementEnsemble")
      .def_readonly("vectors", &MeasurementEnsemble::vectors)
      .def_readonly("intensities", &MeasurementEnsemble::intensities)
      .def_readonly("noise_sigma", &MeasurementEnsemble::noise_sigma)
      .def_readonly("m", &MeasurementEnsemble::m);

  py::class_<SupportScores>(m, "SupportScores")
      .def_readonly("scores", &SupportScores::scores)
      .def_readonly("m_used", &SupportScores::m_used);

  py::class_<InitResult>(m, "InitResult")
      .def_readonly("z0", &InitResult::z0)
      .def_readonly("phi", &InitResult::phi)
      .def_readonly("support_used", &InitResult::support_used)
      .def_readonly("power_iters_run", &InitResult::power_iters_run)
      .def_readonly("kept_fraction", &InitResult::kept_fraction);

  py::class_<StepSchedule>(m, "StepSchedule")
      .def_static("varying", &StepSchedule::varying)
      .def_static("constant", &StepSchedule::constant, py::arg("mu"));

  py::class_<SwfConfig>(m, "SwfConfig")
      .def(py::init<>())
      .def_readwrite("k_prior", &SwfConfig::k_prior)
      .def_readwrite("alpha_y", &SwfConfig::alpha_y)
      .def_readwrite("max_iters", &SwfConfig::max_iters)
      .def_readwrite("tol", &SwfConfig::tol)
      .def_readwrite("step", &SwfConfig::step)
      .def_readwrite("power_iters", &SwfConfig::power_iters)
      .def_readwrite("rng_seed", &SwfConfig::rng_seed)
      .def_readwrite("record_trace", &SwfConfig::record_trace);

  py::class_<IterRecord>(m, "IterRecord")
      .def_readonly("t", &IterRecord::t)
      .def_readonly("objective", &IterRecord::objective)
      .def_readonly("step", &IterRecord::step)
      .def_readonly("support", &IterRecord::support)
      .def_readonly("error", &IterRecord::error);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("estimate", &SolveResult::estimate)
      .def_readonly("iterations_run", &SolveResult::iterations_run)
      .def_property_readonly("termination",
                             [](const SolveResult& r) { return to_string(r.termination); })
      .def_readonly("trace", &SolveResult::trace);

  // model
  m.def("sample_sparse_signal", &sample_sparse_signal, py::arg("n"), py::arg("k"),
        py::arg("seed"), "k-sparse signal with standard-normal nonzeros.");
  m.def("sample_flat_sparse_signal", &sample_flat_sparse_signal, py::arg("n"),
        py::arg("k"), py::arg("seed"), "k-sparse signal with +-1 nonzeros.");
  m.def("sample_measurement_vectors", &sample_measurement_vectors, py::arg("n"),
        py::arg("m"), py::arg("seed"), "m x n matrix of i.i.d. standard normals.");
  m.def("measure", &measure, py::arg("x"), py::arg("A"), py::arg("noise_sigma"),
        py::arg("seed"), "Quadratic intensities with additive Gaussian noise.");
  m.def("sigma_for_snr", &sigma_for_snr, py::arg("x"), py::arg("A"), py::arg("snr_db"));

  // support recovery
  m.def("support_scores", &support_scores, py::arg("A"), py::arg("y"));
  m.def("top_k_indices", &top_k_indices, py::arg("scores"), py::arg("k"));

  // spectral initialization
  m.def("phi_squared", &phi_squared, py::arg("y"));
  m.def("kept_fraction", &kept_fraction, py::arg("y"), py::arg("alpha_y"));
  m.def("build_truncated_matrix", &build_truncated_matrix, py::arg("A"), py::arg("y"),
        py::arg("S0"), py::arg("alpha_y"));
  m.def("power_method", &power_method, py::arg("Y"), py::arg("iters"), py::arg("seed"));
  m.def("assemble_initial", &assemble_initial, py::arg("z0_S0"), py::arg("S0"),
        py::arg("phi"), py::arg("n"));
  m.def("spectral_initialize", &spectral_initialize, py::arg("A"), py::arg("y"),
        py::arg("S0"), py::arg("alpha_y") = 3.0, py::arg("power_iters") = 100,
        py::arg("seed") = 0);

  // solver
  m.def("objective", &objective, py::arg("z"), py::arg("A"), py::arg("y"));
  m.def("gradient", &gradient, py::arg("z"), py::arg("A"), py::arg("y"));
  m.def("hard_threshold", &hard_threshold, py::arg("v"), py::arg("k"));
  m.def("step_size", &step_size, py::arg("t"), py::arg("schedule"));
  m.def("swf_iterate", &swf_iterate, py::arg("z"), py::arg("A"), py::arg("y"),
        py::arg("k"), py::arg("mu"), py::arg("phi_sq"));
  m.def(
      "swf_solve",
      [](const Matrix& A, const Vector& y, const SwfConfig& config,
         std::optional<Vector> truth) {
        return swf_solve(A, y, config, truth ? &*truth : nullptr);
      },
      py::arg("A"), py::arg("y"), py::arg("config"), py::arg("truth") = py::none(),
      "Full three-stage sparse Wirtinger flow solve.");
  m.def(
      "wf_solve_baseline",
      [](const Matrix& A, const Vector& y, const SwfConfig& config,
         std::optional<Vector> truth) {
        return wf_solve_baseline(A, y, config, truth ? &*truth : nullptr);
      },
      py::arg("A"), py::arg("y"), py::arg("config"), py::arg("truth") = py::none(),
      "Plain Wirtinger flow (no sparsity constraint).");

  // metrics
  m.def("dist", &dist, py::arg("z"), py::arg("x"),
        "Distance up to the global sign: min(||z-x||, ||z+x||).");
  m.def("nmse", &nmse, py::arg("xhat"), py::arg("x"));
  m.def("classify_success", &classify_success, py::arg("nmse_value"));
}
