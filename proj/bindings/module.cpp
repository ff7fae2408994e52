#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fockcap/channels.hpp"
#include "fockcap/converse.hpp"
#include "fockcap/entropy.hpp"
#include "fockcap/fock.hpp"
#include "fockcap/symplectic.hpp"

namespace py = pybind11;
using namespace fockcap;

namespace {

// flat-parameter construction so python callers never touch slack functors
EnvelopeParams build_envelope_params(double rate, double n_s, bool additive, double eta,
                                     double n_b, double n_bar, double cutoff_margin,
                                     double rank_margin, double slack_exponent) {
    EnvelopeParams p;
    p.rate = rate;
    p.n_s = n_s;
    p.additive = additive;
    p.eta = eta;
    p.n_b = n_b;
    p.n_bar = n_bar;
    p.deltas.cutoff_margin = cutoff_margin;
    p.deltas.rank_margin = rank_margin;
    auto slack = [slack_exponent](long n) { return std::pow(double(n), -slack_exponent); };
    p.deltas.constraint_slack = slack;
    p.deltas.gentle_slack = slack;
    p.deltas.concentration_slack = slack;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical core: bosonic channel evolution, entropies, capacity bounds";

    py::register_exception<ToleranceError>(m, "ToleranceError", PyExc_ArithmeticError);
    static py::handle trunc_exc =
        py::exception<TruncationError>(m, "TruncationError", PyExc_ArithmeticError)
            .release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const TruncationError& e) {
            auto cls = py::reinterpret_borrow<py::object>(trunc_exc);
            py::object inst = cls(e.what());
            inst.attr("required_dim") = e.required_dim;
            PyErr_SetObject(trunc_exc.ptr(), inst.ptr());
        }
    });

    py::class_<FockVector>(m, "FockVector")
        .def_readonly("amps", &FockVector::amps)
        .def_readonly("leakage", &FockVector::leakage)
        .def_property_readonly("dim", &FockVector::dim)
        .def("norm2", &FockVector::norm2);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_static("make", &DensityMatrix::make, py::arg("entries"),
                    py::arg("leakage") = 0.0, py::arg("psd_tol") = 1e-10)
        .def_readonly("entries", &DensityMatrix::entries)
        .def_readonly("leakage", &DensityMatrix::leakage)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def("trace", &DensityMatrix::trace);

    py::class_<PhotonDistribution>(m, "PhotonDistribution")
        .def_readonly("probs", &PhotonDistribution::probs)
        .def_readonly("tail", &PhotonDistribution::tail)
        .def("sum", &PhotonDistribution::sum)
        .def("mean", &PhotonDistribution::mean)
        .def("second_moment", &PhotonDistribution::second_moment);

    py::class_<AdditiveApplyResult>(m, "AdditiveApplyResult")
        .def_readonly("state", &AdditiveApplyResult::state)
        .def_readonly("quadrature_tol", &AdditiveApplyResult::quadrature_tol)
        .def_readonly("weight_defect", &AdditiveApplyResult::weight_defect);

    py::class_<SmoothingResult>(m, "SmoothingResult")
        .def_readonly("smooth_min_entropy", &SmoothingResult::smooth_min_entropy)
        .def_readonly("achieved_distance", &SmoothingResult::achieved_distance)
        .def_readonly("smoothed", &SmoothingResult::smoothed)
        .def_readonly("threshold", &SmoothingResult::threshold)
        .def_readonly("feasibility_cap", &SmoothingResult::feasibility_cap);

    py::class_<SmoothingCheck>(m, "SmoothingCheck")
        .def_readonly("lhs", &SmoothingCheck::lhs)
        .def_readonly("rhs", &SmoothingCheck::rhs)
        .def_readonly("holds", &SmoothingCheck::holds);

    py::class_<RankBoundReport>(m, "RankBoundReport")
        .def_readonly("exact_log2_rank", &RankBoundReport::exact_log2_rank)
        .def_readonly("delta_used", &RankBoundReport::delta_used)
        .def_readonly("bound", &RankBoundReport::bound)
        .def_readonly("margin", &RankBoundReport::margin)
        .def_readonly("holds", &RankBoundReport::holds);

    py::class_<ConcentrationReport>(m, "ConcentrationReport")
        .def_readonly("n", &ConcentrationReport::n)
        .def_readonly("trials", &ConcentrationReport::trials)
        .def_readonly("threshold", &ConcentrationReport::threshold)
        .def_readonly("empirical_fail_rate", &ConcentrationReport::empirical_fail_rate)
        .def_readonly("chebyshev_bound", &ConcentrationReport::chebyshev_bound)
        .def_readonly("max_variance", &ConcentrationReport::max_variance)
        .def_readonly("holds", &ConcentrationReport::holds);

    py::class_<MeanConstraintReport>(m, "MeanConstraintReport")
        .def_readonly("success_ref", &MeanConstraintReport::success_ref)
        .def_readonly("error_ref", &MeanConstraintReport::error_ref)
        .def_readonly("success_mixed", &MeanConstraintReport::success_mixed)
        .def_readonly("success_floor", &MeanConstraintReport::success_floor)
        .def_readonly("floor_holds", &MeanConstraintReport::floor_holds)
        .def_readonly("purified_mean", &MeanConstraintReport::purified_mean)
        .def_readonly("purified_mean_closed", &MeanConstraintReport::purified_mean_closed)
        .def_readonly("purified_matches_n_s", &MeanConstraintReport::purified_matches_n_s);

    py::class_<QubitConverseReport>(m, "QubitConverseReport")
        .def_readonly("messages", &QubitConverseReport::messages)
        .def_readonly("bound", &QubitConverseReport::bound)
        .def_readonly("max_avg_success", &QubitConverseReport::max_avg_success)
        .def_readonly("instances", &QubitConverseReport::instances)
        .def_readonly("holds", &QubitConverseReport::holds);

    py::class_<GaussChannel>(m, "GaussChannel")
        .def_readonly("x", &GaussChannel::x)
        .def_readonly("y", &GaussChannel::y);

    // states and operators
    m.def("vacuum_state", &vacuum_state, py::arg("dim"));
    m.def("coherent_state", &coherent_state, py::arg("alpha"), py::arg("dim"));
    m.def("thermal_state", &thermal_state, py::arg("occupancy"), py::arg("dim"));
    m.def("pure_density", &pure_density, py::arg("state"));
    m.def("displacement_operator", &displacement_operator, py::arg("alpha"), py::arg("dim"));
    m.def("beamsplitter_unitary", &beamsplitter_unitary, py::arg("eta"), py::arg("dim"));
    m.def("trace_distance",
          py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&trace_distance),
          py::arg("a"), py::arg("b"));
    m.def("gentle_measurement_defect", &gentle_measurement_defect, py::arg("rho"),
          py::arg("op"));
    m.def("projector_rank_str",
          [](int modes, int limit) { return projector_rank(modes, limit).str(); },
          py::arg("modes"), py::arg("limit"));
    m.def("log2_projector_rank", &log2_projector_rank, py::arg("modes"), py::arg("limit"));

    // channel evolution and photon statistics
    m.def("loss_number_dist", &loss_number_dist, py::arg("k"), py::arg("eta"),
          py::arg("dim"));
    m.def("additive_number_dist", &additive_number_dist, py::arg("m"), py::arg("n_bar"),
          py::arg("dim"));
    m.def("thermal_number_dist", &thermal_number_dist, py::arg("k"), py::arg("eta"),
          py::arg("n_b"), py::arg("dim"));
    m.def("thermal_env_dim", &thermal_env_dim, py::arg("n_b"), py::arg("leak_tol") = 1e-8);
    m.def("thermal_apply", &thermal_apply, py::arg("rho"), py::arg("eta"), py::arg("n_b"),
          py::arg("env_dim") = 0);
    m.def(
        "additive_apply",
        [](const DensityMatrix& rho, double n_bar, int points_per_axis) {
            return additive_apply(rho, n_bar, QuadratureSpec{points_per_axis});
        },
        py::arg("rho"), py::arg("n_bar"), py::arg("points_per_axis") = 64);

    // covariance-level channel algebra
    m.def("make_loss", &make_loss, py::arg("eta"));
    m.def("make_additive", &make_additive, py::arg("n_bar"));
    m.def("make_thermal", &make_thermal, py::arg("eta"), py::arg("n_b"));
    m.def("make_amplifier", &make_amplifier, py::arg("gain"));
    m.def("compose", &compose, py::arg("second"), py::arg("first"));
    m.def("apply_to_variance", &apply_to_variance, py::arg("channel"), py::arg("variance"));

    // entropies
    m.def("g", &g, py::arg("x"));
    m.def("renyi_entropy",
          py::overload_cast<const std::vector<double>&, double, double>(&renyi_entropy),
          py::arg("probs"), py::arg("alpha"), py::arg("tail") = 0.0);
    m.def("renyi_entropy_state",
          py::overload_cast<const DensityMatrix&, double>(&renyi_entropy), py::arg("rho"),
          py::arg("alpha"));
    m.def("shannon_entropy", &shannon_entropy, py::arg("probs"), py::arg("tail") = 0.0);
    m.def("min_entropy",
          py::overload_cast<const std::vector<double>&, double>(&min_entropy),
          py::arg("probs"), py::arg("tail") = 0.0);
    m.def("min_entropy_state", py::overload_cast<const DensityMatrix&>(&min_entropy),
          py::arg("rho"));
    m.def("min_output_renyi_additive", &min_output_renyi_additive, py::arg("n_bar"),
          py::arg("alpha"));
    m.def("min_output_renyi_thermal", &min_output_renyi_thermal, py::arg("eta"),
          py::arg("n_b"), py::arg("alpha"));
    m.def("smooth_min_entropy", &smooth_min_entropy, py::arg("probs"), py::arg("eps"));
    m.def("verify_renyi_smoothing", &verify_renyi_smoothing, py::arg("probs"),
          py::arg("alpha"), py::arg("eps"));

    // capacity bounds
    m.def("cap_lower_thermal", &cap_lower_thermal, py::arg("eta"), py::arg("n_s"),
          py::arg("n_b"));
    m.def("cap_upper_gio_thermal", &cap_upper_gio_thermal, py::arg("eta"), py::arg("n_s"),
          py::arg("n_b"));
    m.def("cap_upper_ks_thermal", &cap_upper_ks_thermal, py::arg("eta"), py::arg("n_s"),
          py::arg("n_b"));
    m.def("cap_lower_additive", &cap_lower_additive, py::arg("n_s"), py::arg("n_bar"));
    m.def("cap_upper_gio_additive", &cap_upper_gio_additive, py::arg("n_s"),
          py::arg("n_bar"));
    m.def("cap_upper_ks_additive", &cap_upper_ks_additive, py::arg("n_s"),
          py::arg("n_bar"));

    // finite-size converse machinery
    m.def("rank_bound_check", &rank_bound_check, py::arg("n"), py::arg("n_s"));
    m.def(
        "envelope_threshold_ks",
        [](double n_s, bool additive, double eta, double n_b, double n_bar) {
            return envelope_threshold_ks(
                build_envelope_params(0.0, n_s, additive, eta, n_b, n_bar, 0.01, 0.01, 4.0));
        },
        py::arg("n_s"), py::arg("additive") = false, py::arg("eta") = 1.0,
        py::arg("n_b") = 0.0, py::arg("n_bar") = 0.0);
    m.def(
        "envelope_threshold_gio",
        [](double n_s, bool additive, double eta, double n_b, double n_bar) {
            return envelope_threshold_gio(
                build_envelope_params(0.0, n_s, additive, eta, n_b, n_bar, 0.01, 0.01, 4.0));
        },
        py::arg("n_s"), py::arg("additive") = false, py::arg("eta") = 1.0,
        py::arg("n_b") = 0.0, py::arg("n_bar") = 0.0);
    m.def(
        "converse_envelope_ks",
        [](double rate, long n, double n_s, bool additive, double eta, double n_b,
           double n_bar, double cutoff_margin, double rank_margin, double slack_exponent) {
            return converse_envelope_ks(
                build_envelope_params(rate, n_s, additive, eta, n_b, n_bar, cutoff_margin,
                                      rank_margin, slack_exponent),
                n);
        },
        py::arg("rate"), py::arg("n"), py::arg("n_s"), py::arg("additive") = false,
        py::arg("eta") = 1.0, py::arg("n_b") = 0.0, py::arg("n_bar") = 0.0,
        py::arg("cutoff_margin") = 0.01, py::arg("rank_margin") = 0.01,
        py::arg("slack_exponent") = 4.0);
    m.def(
        "converse_envelope_gio",
        [](double rate, long n, double n_s, bool additive, double eta, double n_b,
           double n_bar, double cutoff_margin, double rank_margin, double slack_exponent) {
            return converse_envelope_gio(
                build_envelope_params(rate, n_s, additive, eta, n_b, n_bar, cutoff_margin,
                                      rank_margin, slack_exponent),
                n);
        },
        py::arg("rate"), py::arg("n"), py::arg("n_s"), py::arg("additive") = false,
        py::arg("eta") = 1.0, py::arg("n_b") = 0.0, py::arg("n_bar") = 0.0,
        py::arg("cutoff_margin") = 0.01, py::arg("rank_margin") = 0.01,
        py::arg("slack_exponent") = 4.0);
    m.def("concentration_experiment", &concentration_experiment, py::arg("profile"),
          py::arg("eta"), py::arg("n_b"), py::arg("delta5"), py::arg("trials"),
          py::arg("seed"), py::arg("dim") = 0);
    m.def(
        "mean_constraint_demo",
        [](int n_modes, double power, double mix_p, double n_s, double eta, double n_b,
           int dim) {
            CodebookSpec spec;
            spec.n_modes = n_modes;
            spec.power = power;
            spec.mix_p = mix_p;
            spec.n_s = n_s;
            return mean_constraint_demo(spec, eta, n_b, dim);
        },
        py::arg("n_modes"), py::arg("power"), py::arg("mix_p"), py::arg("n_s"),
        py::arg("eta"), py::arg("n_b"), py::arg("dim"));
    m.def("qubit_converse_check", &qubit_converse_check, py::arg("n"), py::arg("rate"),
          py::arg("instances"), py::arg("seed"));
}
