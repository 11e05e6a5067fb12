#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdc/detector.hpp"
#include "pdc/fock.hpp"
#include "pdc/herald.hpp"
#include "pdc/multimode.hpp"
#include "pdc/multiplex.hpp"
#include "pdc/oracle.hpp"

namespace py = pybind11;

namespace {

pdc::DetectorModel make_model(pdc::DetectorFamily family, double eta,
                              double dark, int herald_n) {
  pdc::DetectorModel det;
  det.family = family;
  det.eta = eta;
  det.dark = dark;
  det.herald_n = herald_n;
  return det;
}

const char* method_name(pdc::EvalMethod m) {
  return m == pdc::EvalMethod::Series ? "series" : "closed_form";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Heralding probabilities, heralded photon statistics and single-photon "
      "fidelities of pulsed parametric down-conversion sources.";

  auto base = py::register_exception<pdc::Error>(m, "Error");
  py::register_exception<pdc::TruncationCapExceeded>(m, "TruncationCapExceeded",
                                                     base.ptr());
  py::register_exception<pdc::DegenerateHerald>(m, "DegenerateHerald",
                                                base.ptr());
  py::register_exception<pdc::ModeTailTooHeavy>(m, "ModeTailTooHeavy",
                                                base.ptr());
  py::register_exception<pdc::Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<pdc::UnreachableTarget>(m, "UnreachableTarget",
                                                 base.ptr());
  py::register_exception<pdc::BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<pdc::UnsupportedFamily>(m, "UnsupportedFamily",
                                                 base.ptr());
  py::register_exception<pdc::ConfigError>(m, "ConfigError", base.ptr());

  py::class_<pdc::TruncationPolicy>(m, "TruncationPolicy")
      .def(py::init([](double tolerance, int hard_cap) {
             return pdc::TruncationPolicy{tolerance, hard_cap};
           }),
           py::arg("tolerance") = 1e-12, py::arg("hard_cap") = 4096)
      .def_readwrite("tolerance", &pdc::TruncationPolicy::tolerance)
      .def_readwrite("hard_cap", &pdc::TruncationPolicy::hard_cap);

  py::class_<pdc::PhotonDistribution>(m, "PhotonDistribution")
      .def_readonly("probs", &pdc::PhotonDistribution::probs)
      .def_readonly("truncation_deficit",
                    &pdc::PhotonDistribution::truncation_deficit)
      .def("mean", &pdc::PhotonDistribution::mean);

  m.def(
      "pair_parameter",
      [](double r) { return pdc::pair_parameter(pdc::SqueezeParam(r)); },
      py::arg("r"), "x = tanh^2(r)");
  m.def(
      "mean_photon_number",
      [](double r) { return pdc::mean_photon_number(pdc::SqueezeParam(r)); },
      py::arg("r"), "<n> = sinh^2(r) per beam");
  m.def(
      "squeezing_db",
      [](double r) { return pdc::squeezing_db(pdc::SqueezeParam(r)); },
      py::arg("r"));
  m.def("adaptive_cutoff", &pdc::adaptive_cutoff, py::arg("x"),
        py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "thermal_distribution",
      [](double r, const pdc::TruncationPolicy& policy) {
        return pdc::thermal_distribution(pdc::SqueezeParam(r), policy);
      },
      py::arg("r"), py::arg("policy") = pdc::TruncationPolicy{});

  py::class_<pdc::DetectorModel>(m, "DetectorModel")
      .def_readonly("eta", &pdc::DetectorModel::eta)
      .def_readonly("dark", &pdc::DetectorModel::dark)
      .def_readonly("herald_n", &pdc::DetectorModel::herald_n)
      .def("label", &pdc::DetectorModel::label)
      .def("__repr__", [](const pdc::DetectorModel& d) {
        return "<DetectorModel " + d.label() + ">";
      });

  m.def(
      "binary_click",
      [](double eta, double dark) {
        return make_model(pdc::DetectorFamily::BinaryClick, eta, dark, 1);
      },
      py::arg("eta") = 1.0, py::arg("dark") = 0.0,
      "avalanche detector, click outcome: c_n = 1 - (1-eta)^n");
  m.def(
      "binary_noclick",
      [](double eta, double dark) {
        return make_model(pdc::DetectorFamily::BinaryNoClick, eta, dark, 1);
      },
      py::arg("eta") = 1.0, py::arg("dark") = 0.0);
  m.def(
      "pnr",
      [](int herald_n, double eta, double dark) {
        return make_model(pdc::DetectorFamily::Pnr, eta, dark, herald_n);
      },
      py::arg("herald_n") = 1, py::arg("eta") = 1.0, py::arg("dark") = 0.0,
      "photon-number-resolving outcome 'herald_n photons seen'");
  m.def(
      "custom_detector",
      [](std::function<double(int)> coeff) {
        pdc::DetectorModel det;
        det.family = pdc::DetectorFamily::Custom;
        det.custom = std::move(coeff);
        return det;
      },
      py::arg("coeff"), "POVM diagonal supplied as a callable n -> c_n");
  m.def("completeness_defect", &pdc::completeness_defect, py::arg("eta"),
        py::arg("n_check") = 60);

  py::class_<pdc::HeraldReport>(m, "HeraldReport")
      .def_readonly("heralding_probability",
                    &pdc::HeraldReport::heralding_probability)
      .def_readonly("fidelity", &pdc::HeraldReport::fidelity)
      .def_readonly("heralded_state", &pdc::HeraldReport::heralded_state)
      .def_property_readonly(
          "method",
          [](const pdc::HeraldReport& r) { return method_name(r.method); });

  m.def(
      "heralding_probability",
      [](double r, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::heralding_probability(pdc::SqueezeParam(r),
                                          det.coefficients(), policy);
      },
      py::arg("r"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "single_photon_fidelity",
      [](double r, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::single_photon_fidelity(pdc::SqueezeParam(r),
                                           det.coefficients(), policy);
      },
      py::arg("r"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "heralded_state",
      [](double r, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::heralded_state(pdc::SqueezeParam(r), det.coefficients(),
                                   policy);
      },
      py::arg("r"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "herald_report",
      [](double r, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::herald_report(pdc::SqueezeParam(r), det.coefficients(),
                                  policy);
      },
      py::arg("r"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "closed_form_report",
      [](double r, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::closed_form_report(pdc::SqueezeParam(r), det, policy);
      },
      py::arg("r"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});

  py::class_<pdc::FrontierPoint>(m, "FrontierPoint")
      .def_readonly("param", &pdc::FrontierPoint::param)
      .def_readonly("fidelity", &pdc::FrontierPoint::fidelity)
      .def_readonly("heralding_probability",
                    &pdc::FrontierPoint::heralding_probability)
      .def_property_readonly("status", [](const pdc::FrontierPoint& p) {
        return std::string(pdc::to_string(p.status));
      });

  m.def(
      "frontier",
      [](const pdc::DetectorModel& det, const std::vector<double>& r_grid,
         const pdc::TruncationPolicy& policy) {
        return pdc::frontier(det, r_grid, policy);
      },
      py::arg("detector"), py::arg("r_grid"),
      py::arg("policy") = pdc::TruncationPolicy{});

  py::class_<pdc::OptimalPoint>(m, "OptimalPoint")
      .def_readonly("r", &pdc::OptimalPoint::r)
      .def_readonly("x", &pdc::OptimalPoint::x)
      .def_readonly("heralding_probability",
                    &pdc::OptimalPoint::heralding_probability)
      .def_readonly("fidelity", &pdc::OptimalPoint::fidelity)
      .def_readonly("unbounded", &pdc::OptimalPoint::unbounded);

  m.def(
      "optimal_r",
      [](const pdc::DetectorModel& det, double f_min,
         const pdc::TruncationPolicy& policy) {
        return pdc::optimal_r(det, f_min, policy);
      },
      py::arg("detector"), py::arg("f_min") = 0.0,
      py::arg("policy") = pdc::TruncationPolicy{},
      "maximize heralding probability over r subject to fidelity >= f_min");

  py::class_<pdc::ModeDistribution>(m, "ModeDistribution")
      .def_readonly("mu", &pdc::ModeDistribution::mu)
      .def_readonly("gain", &pdc::ModeDistribution::gain)
      .def_readonly("profile", &pdc::ModeDistribution::lambda)
      .def_readonly("r", &pdc::ModeDistribution::r)
      .def("k_max", &pdc::ModeDistribution::k_max);

  m.def("build_modes", &pdc::build_modes, py::arg("mu"), py::arg("gain"),
        py::arg("k_max"), py::arg("tail_tol") = 1e-4);
  m.def("build_modes_auto", &pdc::build_modes_auto, py::arg("mu"),
        py::arg("gain"), py::arg("profile_tol") = 1e-6,
        py::arg("max_modes") = 4096);
  m.def("schmidt_number", &pdc::schmidt_number, py::arg("modes"));
  m.def("mu_from_schmidt", &pdc::mu_from_schmidt, py::arg("schmidt_k"));
  m.def("total_photon_distribution", &pdc::total_photon_distribution,
        py::arg("modes"), py::arg("policy") = pdc::TruncationPolicy{});

  py::class_<pdc::MultimodeHeraldReport>(m, "MultimodeHeraldReport")
      .def_readonly("heralding_probability",
                    &pdc::MultimodeHeraldReport::heralding_probability)
      .def_readonly("fidelity", &pdc::MultimodeHeraldReport::fidelity)
      .def_readonly("total", &pdc::MultimodeHeraldReport::total)
      .def_readonly("vacuum_prefactor",
                    &pdc::MultimodeHeraldReport::vacuum_prefactor);

  m.def(
      "multimode_herald",
      [](const pdc::ModeDistribution& modes, const pdc::DetectorModel& det,
         const pdc::TruncationPolicy& policy) {
        return pdc::multimode_herald(modes, det.coefficients(), policy);
      },
      py::arg("modes"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});
  m.def(
      "multimode_frontier",
      [](double mu, const std::vector<double>& gain_grid,
         const pdc::DetectorModel& det, const pdc::TruncationPolicy& policy) {
        return pdc::multimode_frontier(mu, gain_grid, det, policy);
      },
      py::arg("mu"), py::arg("gain_grid"), py::arg("detector"),
      py::arg("policy") = pdc::TruncationPolicy{});

  m.def(
      "switched_probability",
      [](double nu, int sources) {
        return pdc::switched_probability(pdc::SwitchedSetup{nu, sources});
      },
      py::arg("nu"), py::arg("sources"),
      "1 - (1-nu)^n for a bank of n identical sources behind a switch");
  m.def("sources_needed", &pdc::sources_needed,
        py::arg("per_source_probability"), py::arg("target"));

  py::class_<pdc::JointTruncation>(m, "JointTruncation")
      .def(py::init([](int per_mode_cutoff, int mode_count, int total_cutoff,
                       std::int64_t budget) {
             return pdc::JointTruncation{per_mode_cutoff, mode_count,
                                         total_cutoff, budget};
           }),
           py::arg("per_mode_cutoff") = 1, py::arg("mode_count") = 1,
           py::arg("total_cutoff") = -1, py::arg("budget") = 10'000'000)
      .def_readwrite("per_mode_cutoff", &pdc::JointTruncation::per_mode_cutoff)
      .def_readwrite("mode_count", &pdc::JointTruncation::mode_count)
      .def_readwrite("total_cutoff", &pdc::JointTruncation::total_cutoff)
      .def_readwrite("budget", &pdc::JointTruncation::budget)
      .def("resolved_total_cutoff",
           &pdc::JointTruncation::resolved_total_cutoff);

  py::class_<pdc::OracleResult>(m, "OracleResult")
      .def_readonly("heralding_probability",
                    &pdc::OracleResult::heralding_probability)
      .def_readonly("fidelity", &pdc::OracleResult::fidelity)
      .def_readonly("total_distribution", &pdc::OracleResult::total_distribution)
      .def_readonly("tuples_visited", &pdc::OracleResult::tuples_visited);

  m.def(
      "oracle_single_mode",
      [](double r, const pdc::DetectorModel& det,
         const pdc::JointTruncation& trunc) {
        return pdc::oracle_single_mode(r, det.coefficients(), trunc);
      },
      py::arg("r"), py::arg("detector"), py::arg("trunc"),
      "brute-force reference evaluation, independent of the production path");
  m.def(
      "oracle_multimode",
      [](const std::vector<double>& mode_r, const pdc::DetectorModel& det,
         const pdc::JointTruncation& trunc) {
        return pdc::oracle_multimode(mode_r, det.coefficients(), trunc);
      },
      py::arg("mode_r"), py::arg("detector"), py::arg("trunc"));
}
