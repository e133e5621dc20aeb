// Python bindings for the core operations: data generation, training,
// continual updates, monitoring and persistence.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spcasi/config_file.hpp"
#include "spcasi/model_store.hpp"
#include "spcasi/scenario.hpp"

namespace py = pybind11;
using namespace spcasi;

namespace {

ModeSpec spec_from_id(int mode) { return numerical_mode_spec(mode); }

}  // namespace

PYBIND11_MODULE(_spcasi, m) {
    m.doc() = "Sparse-PCA process monitoring with continual mode updates";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<data_error>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<store_error>(m, "StoreError", PyExc_RuntimeError);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("lambda_", &SolverConfig::lambda)
        .def_readwrite("mu0", &SolverConfig::mu0)
        .def_readwrite("tau1", &SolverConfig::tau1)
        .def_readwrite("tau2", &SolverConfig::tau2)
        .def_readwrite("epsilon", &SolverConfig::epsilon)
        .def_readwrite("zeta", &SolverConfig::zeta)
        .def_readwrite("alpha_p", &SolverConfig::alpha_p)
        .def_readwrite("alpha_mu", &SolverConfig::alpha_mu)
        .def_readwrite("max_iters", &SolverConfig::max_iters)
        .def_readwrite("norm_tolerance", &SolverConfig::norm_tolerance)
        .def_readwrite("convergence_tolerance", &SolverConfig::convergence_tolerance)
        .def_readwrite("seed", &SolverConfig::seed);

    py::class_<Scaler>(m, "Scaler")
        .def_readonly("mean", &Scaler::mean)
        .def_readonly("std", &Scaler::std);

    py::class_<ModeModel>(m, "ModeModel")
        .def_readonly("mode_index", &ModeModel::mode_index)
        .def_readonly("projection", &ModeModel::projection)
        .def_readonly("importance", &ModeModel::importance)
        .def_readonly("accumulated_importance", &ModeModel::accumulated_importance)
        .def_readonly("xi", &ModeModel::xi)
        .def_readonly("scaler", &ModeModel::scaler)
        .def_readonly("t2_threshold", &ModeModel::t2_threshold)
        .def_readonly("spe_threshold", &ModeModel::spe_threshold)
        .def_readonly("n_components", &ModeModel::n_components)
        .def_readonly("eta", &ModeModel::eta)
        .def_readonly("gamma", &ModeModel::gamma);

    py::class_<MonitoringResult>(m, "MonitoringResult")
        .def_readonly("t2", &MonitoringResult::t2)
        .def_readonly("spe", &MonitoringResult::spe)
        .def_readonly("t2_threshold", &MonitoringResult::t2_threshold)
        .def_readonly("spe_threshold", &MonitoringResult::spe_threshold)
        .def_readonly("alarms", &MonitoringResult::alarms);

    py::class_<DetectionScore>(m, "DetectionScore")
        .def_readonly("fdr", &DetectionScore::fdr)
        .def_readonly("far", &DetectionScore::far)
        .def_readonly("fault_start_index", &DetectionScore::fault_start_index);

    py::class_<SituationResult>(m, "SituationResult")
        .def_readonly("situation", &SituationResult::situation)
        .def_readonly("fault_id", &SituationResult::fault_id)
        .def_readonly("fdr_pct", &SituationResult::fdr_pct)
        .def_readonly("far_pct", &SituationResult::far_pct)
        .def_readonly("pass_", &SituationResult::pass);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("rows", &RunReport::rows)
        .def_readonly("all_pass", &RunReport::all_pass);

    py::class_<ModelArchive>(m, "ModelArchive")
        .def(py::init<>())
        .def_readwrite("format_version", &ModelArchive::format_version)
        .def_readwrite("models", &ModelArchive::models)
        .def_readwrite("config", &ModelArchive::config)
        .def_readwrite("seeds", &ModelArchive::seeds)
        .def_readwrite("created", &ModelArchive::created);

    m.def("mixing_matrix", &mixing_matrix, py::return_value_policy::copy,
          "Fixed 8x3 mixing matrix of the numerical case");

    m.def(
        "generate_mode",
        [](int mode, int n, std::uint64_t seed) {
            return generate_mode(spec_from_id(mode), n, seed);
        },
        py::arg("mode"), py::arg("n"), py::arg("seed"),
        "Draw n samples from numerical-case mode 1 or 2");

    m.def(
        "inject_fault",
        [](const Matrix& x, int fault_id) { return inject_fault(x, numerical_fault_spec(fault_id)); },
        py::arg("x"), py::arg("fault_id"), "Apply numerical-case fault 1, 2 or 3");

    m.def("soft_threshold", &soft_threshold, py::arg("v"), py::arg("kappa"));
    m.def(
        "kde_threshold",
        [](const std::vector<double>& values, double confidence) {
            return kde_threshold(values, confidence);
        },
        py::arg("values"), py::arg("confidence"));

    m.def(
        "fit_projection",
        [](const Matrix& x, int l, const SolverConfig& cfg) {
            const ProjectionFit fit = fit_projection(x, l, cfg);
            return py::make_tuple(fit.projection, fit.importance);
        },
        py::arg("x"), py::arg("l"), py::arg("config") = SolverConfig{},
        "Returns (projection, importance) for standardized data");

    m.def(
        "train_first_mode",
        [](const Matrix& x, const SolverConfig& cfg, double cpv, double confidence) {
            return train_first_mode({x, 1}, cfg, cpv, confidence);
        },
        py::arg("x"), py::arg("config") = SolverConfig{}, py::arg("cpv_threshold") = 0.999,
        py::arg("confidence") = 0.99);

    m.def(
        "update_model",
        [](const ModeModel& prev, const Matrix& x, const SolverConfig& cfg, double gamma,
           double eta, double confidence) {
            return update_model(prev, {x, prev.mode_index + 1}, cfg, gamma, eta, confidence);
        },
        py::arg("previous"), py::arg("x"), py::arg("config") = SolverConfig{},
        py::arg("gamma") = 1.0, py::arg("eta") = 0.5, py::arg("confidence") = 0.99);

    m.def(
        "run_monitoring",
        [](const Matrix& x, const ModeModel& model, const Scaler* scaler) {
            return scaler ? run_monitoring(x, model, *scaler) : run_monitoring(x, model);
        },
        py::arg("x"), py::arg("model"), py::arg("data_scaler") = nullptr,
        "Monitor raw test data; pass the scaler of the data's mode when it differs "
        "from the model's own");

    m.def("score_detection", &score_detection, py::arg("result"), py::arg("fault_start"));

    m.def("save_chain", &save_chain, py::arg("archive"), py::arg("path"),
          py::arg("overwrite") = false);
    m.def("load_chain", &load_chain, py::arg("path"));

    m.def(
        "reproduce_table",
        [](std::uint64_t seed, const SolverConfig& cfg, double gamma, double eta) {
            return run_numerical_case(seed, cfg, gamma, eta);
        },
        py::arg("seed") = 7, py::arg("config") = SolverConfig{}, py::arg("gamma") = 1.0,
        py::arg("eta") = 0.5, "Run the 15-cell comparative table at one seed");

#ifdef SPCASI_VERSION
    m.attr("__version__") = SPCASI_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
