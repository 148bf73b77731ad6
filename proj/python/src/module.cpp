#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "meander/errors.hpp"
#include "meander/exact.hpp"
#include "meander/experiment.hpp"
#include "meander/ladder.hpp"
#include "meander/limits.hpp"
#include "meander/montecarlo.hpp"
#include "meander/smoothing.hpp"

namespace py = pybind11;
using namespace meander;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact finite-n laws of random walks killed at the non-positive half-line, "
              "their Rayleigh limit, and the inequality audits around them.";

    py::register_exception<Error>(m, "MeanderError", PyExc_RuntimeError);

    py::class_<IncrementLaw>(m, "IncrementLaw")
        .def_property_readonly("offset_min", &IncrementLaw::offset_min)
        .def_property_readonly("probs", &IncrementLaw::probs)
        .def_property_readonly("span_checked", &IncrementLaw::span_checked)
        .def_property_readonly("id", &IncrementLaw::id)
        .def("atoms", &IncrementLaw::atoms)
        .def("prob", &IncrementLaw::prob)
        .def("symmetric", &IncrementLaw::symmetric, py::arg("tol") = 1e-14)
        .def("reflected", &IncrementLaw::reflected)
        .def("__repr__", [](const IncrementLaw& l) { return "<IncrementLaw " + l.id() + ">"; });

    m.def("make_law", &make_law, py::arg("support_points"), py::arg("id") = "custom");
    m.def("builtin_law", &builtin_law);
    m.def("builtin_law_names", &builtin_law_names);
    m.def("load_law", &load_law);

    py::class_<MomentSummary>(m, "MomentSummary")
        .def_readonly("sigma2", &MomentSummary::sigma2)
        .def_readonly("abs3", &MomentSummary::abs3)
        .def_readonly("lyapunov", &MomentSummary::lyapunov)
        .def_readonly("smoothing_A", &MomentSummary::smoothing_A)
        .def_readonly("eu_abs", &MomentSummary::eu_abs)
        .def_property_readonly("sigma", &MomentSummary::sigma);
    m.def("moments", &moments);
    m.def("gamma1", &gamma1, py::arg("y"), py::arg("summary"));

    py::class_<MeanderTable>(m, "MeanderTable")
        .def_property_readonly("n_max", &MeanderTable::n_max)
        .def_property_readonly("sigma", &MeanderTable::sigma)
        .def("b", &MeanderTable::b, py::arg("k"), py::arg("x"))
        .def("width", &MeanderTable::width)
        .def("survival", &MeanderTable::survival)
        .def("tail", &MeanderTable::tail, py::arg("k"), py::arg("x"))
        .def_property_readonly("trunc_mass", &MeanderTable::trunc_mass);
    m.def("build_meander", [](const IncrementLaw& law, int n_max, double eps_trunc) {
              return build_meander(law, n_max, eps_trunc);
          },
          py::arg("law"), py::arg("n_max"), py::arg("eps_trunc") = 0.0);
    m.def("simple_walk_tail", &simple_walk_tail, py::arg("n"), py::arg("x"));
    m.def("conditioned_tail", &conditioned_tail, py::arg("table"), py::arg("n"), py::arg("x"));
    m.def("verify_representation", &verify_representation);

    py::class_<TauSummary>(m, "TauSummary")
        .def_readonly("p_tau", &TauSummary::p_tau)
        .def_readonly("m1", &TauSummary::m1)
        .def_readonly("m2", &TauSummary::m2)
        .def_readonly("es_tau_abs", &TauSummary::es_tau_abs)
        .def_readonly("es_tau_tail", &TauSummary::es_tau_tail)
        .def_readonly("tail_flagged", &TauSummary::tail_flagged)
        .def_readonly("es_tau_sq", &TauSummary::es_tau_sq)
        .def("survival", &TauSummary::survival);
    m.def("tau_summary", &tau_summary);

    py::class_<LadderData>(m, "LadderData")
        .def_readonly("ladder_pmf", &LadderData::ladder_pmf)
        .def_readonly("mean_height", &LadderData::mean_height)
        .def_readonly("H", &LadderData::H)
        .def_readonly("V", &LadderData::V)
        .def_readonly("horizon_tail", &LadderData::horizon_tail)
        .def_readonly("stau_pmf", &LadderData::stau_pmf)
        .def_readonly("es_tau_abs", &LadderData::es_tau_abs)
        .def_readonly("es_tau_sq", &LadderData::es_tau_sq)
        .def_readonly("harmonic_defect", &LadderData::harmonic_defect);
    m.def("ladder_data", &ladder_data, py::arg("law"), py::arg("x_max"),
          py::arg("horizon") = 384);

    m.def("rayleigh_tail", &rayleigh_tail);
    m.def("be_error", &be_error, py::arg("table"), py::arg("n"));
    m.def("tau_tail_error", &tau_tail_error, py::arg("tau"), py::arg("es_tau_abs"), py::arg("n"));
    m.def("classical_be_check", &classical_be_check, py::arg("law"), py::arg("n"));
    m.def("h_transform_target", &h_transform_target);

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("slope", &RateFit::slope)
        .def_readonly("c_hat", &RateFit::c_hat)
        .def_readonly("residuals", &RateFit::residuals);
    m.def("fit_rate", &fit_rate);

    py::class_<ErrorCurve>(m, "ErrorCurve")
        .def_readonly("points", &ErrorCurve::points)
        .def_readonly("slope", &ErrorCurve::slope)
        .def_readonly("c_hat", &ErrorCurve::c_hat)
        .def_readonly("normalized", &ErrorCurve::normalized)
        .def_readonly("residuals", &ErrorCurve::residuals);
    m.def("error_curve", &error_curve, py::arg("table"), py::arg("summary"), py::arg("ns"));

    py::class_<AuditCheck>(m, "AuditCheck")
        .def_readonly("id", &AuditCheck::id)
        .def_readonly("range", &AuditCheck::range)
        .def_readonly("margin", &AuditCheck::margin)
        .def_readonly("pass_", &AuditCheck::pass)
        .def_readonly("fitted_c", &AuditCheck::fitted_c)
        .def_readonly("cv", &AuditCheck::cv)
        .def("__repr__", [](const AuditCheck& c) {
            return "<AuditCheck " + c.id + (c.pass ? " pass" : " FAIL") + ">";
        });
    m.def("audit_inequalities", &audit_inequalities);
    m.def("smoothing_audits", &smoothing_audits);

    py::class_<SmoothingKernel>(m, "SmoothingKernel")
        .def_property_readonly("bandwidth", &SmoothingKernel::bandwidth)
        .def_property_readonly("eu_abs", &SmoothingKernel::eu_abs)
        .def("density", &SmoothingKernel::density)
        .def("cf", &SmoothingKernel::cf)
        .def("cdf", &SmoothingKernel::cdf);
    m.def("kernel_from", &kernel_from);

    py::class_<McConfig> mc(m, "McConfig");
    py::enum_<McConfig::Mode>(mc, "Mode")
        .value("rejection", McConfig::Mode::rejection)
        .value("htransform", McConfig::Mode::htransform);
    mc.def(py::init<>())
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("n", &McConfig::n)
        .def_readwrite("paths", &McConfig::paths)
        .def_readwrite("mode", &McConfig::mode)
        .def_readwrite("law_id", &McConfig::law_id)
        .def_readwrite("draw_budget", &McConfig::draw_budget);

    py::class_<McResult>(m, "McResult")
        .def_readonly("ecdf", &McResult::ecdf)
        .def_readonly("acceptance_rate", &McResult::acceptance_rate)
        .def_readonly("dkw_epsilon", &McResult::dkw_epsilon)
        .def_readonly("trials", &McResult::trials)
        .def_readonly("grid_extended", &McResult::grid_extended);
    m.def("sample_conditioned", &sample_conditioned);
    m.def("sample_htransform", &sample_htransform);
    m.def("htransform_step_probs", &htransform_step_probs);
    m.def("dkw_epsilon", &dkw_epsilon, py::arg("paths"), py::arg("confidence") = 0.99);
    m.def("ecdf_sup_distance", &ecdf_sup_distance);
}
