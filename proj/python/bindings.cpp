#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "diamag/causality.hpp"
#include "diamag/grid.hpp"
#include "diamag/io.hpp"
#include "diamag/kk.hpp"
#include "diamag/model.hpp"
#include "diamag/passivity.hpp"
#include "diamag/sampling.hpp"

namespace py = pybind11;
using namespace diamag;

namespace {

std::vector<complex> eval_many(const MediumModel& m, const std::vector<double>& omegas,
                               complex (*f)(const MediumModel&, double)) {
  std::vector<complex> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back(f(m, w));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multipole dispersion models for magneto-dielectric media: spectra, "
            "dispersion-integral transforms, poles, causal kernels, passivity and "
            "sum-rule diagnostics (natural units, c = 1).";

  py::class_<MultipoleTransition>(m, "MultipoleTransition")
      .def(py::init([](double omega_eg, double gamma_e, double delta_edip, double delta_mdip,
                       double delta_dia, double delta_quad, double delta_oct) {
             return MultipoleTransition{omega_eg, gamma_e,    delta_edip, delta_mdip,
                                        delta_dia, delta_quad, delta_oct};
           }),
           py::arg("omega_eg"), py::arg("gamma_e"), py::arg("delta_edip") = 0.0,
           py::arg("delta_mdip") = 0.0, py::arg("delta_dia") = 0.0,
           py::arg("delta_quad") = 0.0, py::arg("delta_oct") = 0.0)
      .def_readwrite("omega_eg", &MultipoleTransition::omega_eg)
      .def_readwrite("gamma_e", &MultipoleTransition::gamma_e)
      .def_readwrite("delta_edip", &MultipoleTransition::delta_edip)
      .def_readwrite("delta_mdip", &MultipoleTransition::delta_mdip)
      .def_readwrite("delta_dia", &MultipoleTransition::delta_dia)
      .def_readwrite("delta_quad", &MultipoleTransition::delta_quad)
      .def_readwrite("delta_oct", &MultipoleTransition::delta_oct);

  py::class_<MediumModel>(m, "MediumModel")
      .def(py::init<>())
      .def(py::init([](std::vector<MultipoleTransition> transitions, double eta) {
             return MediumModel{std::move(transitions), eta};
           }),
           py::arg("transitions"), py::arg("eta") = 0.5)
      .def_readwrite("transitions", &MediumModel::transitions)
      .def_readwrite("hierarchy_ratio", &MediumModel::hierarchy_ratio);

  m.def("validate_model",
        [](const MediumModel& model) { return validate_model(model); },
        py::arg("model"), "Return the model unchanged; raise ValueError on any "
        "violated invariant.");
  m.def("validation_error", &validation_error, py::arg("model"));

  m.def("permittivity", &permittivity, py::arg("model"), py::arg("omega"));
  m.def("permittivity_k", &permittivity_k, py::arg("model"), py::arg("omega"), py::arg("k"));
  m.def("inverse_permeability", &inverse_permeability, py::arg("model"), py::arg("omega"));
  m.def("inverse_permeability_spatial", &inverse_permeability_spatial, py::arg("model"),
        py::arg("omega"));
  m.def("permeability", &permeability, py::arg("model"), py::arg("omega"));
  m.def("susceptibility", &susceptibility, py::arg("model"), py::arg("omega"));
  m.def("susceptibility_many",
        [](const MediumModel& m_, const std::vector<double>& w) {
          return eval_many(m_, w, &susceptibility);
        },
        py::arg("model"), py::arg("omegas"));
  m.def("static_chi", &static_chi, py::arg("model"));
  m.def("static_chi_multipole_form", &static_chi_multipole_form, py::arg("model"));
  m.def("sum_rule_residual", &sum_rule_residual, py::arg("model"));
  m.def("transverse_current_coefficient", &transverse_current_coefficient, py::arg("eps"),
        py::arg("inv_mu"), py::arg("omega"), py::arg("k"));
  m.def("hydrogen_diamagnetic_moment", &hydrogen_diamagnetic_moment, py::arg("b_field"),
        py::arg("mean_rho2"), py::arg("e2_over_2m"));
  m.def("hydrogen_mean_rho_squared", &hydrogen_mean_rho_squared, py::arg("bohr_radius") = 1.0);
  m.def("hydrogen_mean_r_squared", &hydrogen_mean_r_squared, py::arg("bohr_radius") = 1.0);

  py::enum_<GridSpacing>(m, "GridSpacing")
      .value("linear", GridSpacing::linear)
      .value("logarithmic", GridSpacing::logarithmic);
  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def_readonly("samples", &FrequencyGrid::samples)
      .def_readonly("spacing", &FrequencyGrid::spacing)
      .def_readonly("tail_exponent", &FrequencyGrid::tail_exponent);
  m.def("make_linear_grid", &make_linear_grid, py::arg("omega_min"), py::arg("omega_max"),
        py::arg("n"), py::arg("tail_exponent") = 2.0);
  m.def("make_log_grid", &make_log_grid, py::arg("omega_min"), py::arg("omega_max"),
        py::arg("n"), py::arg("tail_exponent") = 2.0);

  py::enum_<Quantity>(m, "Quantity")
      .value("chi", Quantity::chi)
      .value("epsilon", Quantity::epsilon)
      .value("mu", Quantity::mu)
      .value("inv_mu", Quantity::inv_mu)
      .value("eps_mu", Quantity::eps_mu);
  py::class_<ComplexSpectrum>(m, "ComplexSpectrum")
      .def_readonly("grid", &ComplexSpectrum::grid)
      .def_readonly("values", &ComplexSpectrum::values)
      .def_readonly("quantity", &ComplexSpectrum::quantity);
  m.def("sample_spectrum", &sample_spectrum, py::arg("model"), py::arg("grid"),
        py::arg("quantity"));

  py::enum_<SingularityMethod>(m, "SingularityMethod")
      .value("subtraction", SingularityMethod::subtraction)
      .value("exclusion_window", SingularityMethod::exclusion_window);
  py::class_<KKScheme>(m, "KKScheme")
      .def(py::init<>())
      .def_readwrite("singularity_method", &KKScheme::singularity_method)
      .def_readwrite("tail_exponent", &KKScheme::tail_exponent)
      .def_readwrite("interior_margin", &KKScheme::interior_margin);
  py::class_<KKResult>(m, "KKResult")
      .def_readonly("reconstructed", &KKResult::reconstructed)
      .def_readonly("residual_norm", &KKResult::residual_norm);

  auto hints_of = [](const MediumModel& model) { return resonance_hints(model); };
  m.def("kk_real_from_imag",
        [hints_of](const ComplexSpectrum& s, const KKScheme& scheme, double w,
                   const MediumModel* model) {
          auto h = model ? resonance_hints(*model) : std::vector<ResonanceHint>{};
          return kk_real_from_imag(s, scheme, w, h);
        },
        py::arg("spectrum"), py::arg("scheme"), py::arg("omega_eval"),
        py::arg("model") = nullptr);
  m.def("kk_imag_from_real",
        [](const ComplexSpectrum& s, const KKScheme& scheme, double w,
           const MediumModel* model) {
          auto h = model ? resonance_hints(*model) : std::vector<ResonanceHint>{};
          return kk_imag_from_real(s, scheme, w, h);
        },
        py::arg("spectrum"), py::arg("scheme"), py::arg("omega_eval"),
        py::arg("model") = nullptr);
  m.def("kk_static",
        [](const ComplexSpectrum& s, const KKScheme& scheme, const MediumModel* model) {
          auto h = model ? resonance_hints(*model) : std::vector<ResonanceHint>{};
          return kk_static(s, scheme, h);
        },
        py::arg("spectrum"), py::arg("scheme"), py::arg("model") = nullptr);
  m.def("kk_round_trip",
        [](const ComplexSpectrum& s, const KKScheme& scheme, const MediumModel* model) {
          auto h = model ? resonance_hints(*model) : std::vector<ResonanceHint>{};
          return kk_round_trip(s, scheme, h);
        },
        py::arg("spectrum"), py::arg("scheme"), py::arg("model") = nullptr);

  py::class_<Pole>(m, "Pole")
      .def_readonly("location", &Pole::location)
      .def_readonly("residue", &Pole::residue)
      .def_readonly("transition", &Pole::transition);
  m.def("find_poles", &find_poles, py::arg("model"));

  py::enum_<KernelForm>(m, "KernelForm")
      .value("pole_residue", KernelForm::pole_residue)
      .value("sampled", KernelForm::sampled);
  py::class_<CausalKernel>(m, "CausalKernel")
      .def_readonly("form", &CausalKernel::form)
      .def_readonly("times", &CausalKernel::times)
      .def_readonly("values", &CausalKernel::values)
      .def_readonly("time_step", &CausalKernel::time_step)
      .def_readonly("duration", &CausalKernel::duration)
      .def("evaluate", &CausalKernel::evaluate, py::arg("t"));
  m.def("kernel_from_poles", &kernel_from_poles, py::arg("model"));
  m.def("kernel_from_fft", &kernel_from_fft, py::arg("model"), py::arg("time_step"),
        py::arg("duration"));
  m.def("sample_kernel", &sample_kernel, py::arg("kernel"), py::arg("time_step"),
        py::arg("duration"));

  py::class_<TimeSeries>(m, "TimeSeries")
      .def(py::init([](double t_start, double time_step, std::vector<double> values) {
             return TimeSeries{t_start, time_step, std::move(values)};
           }),
           py::arg("t_start"), py::arg("time_step"), py::arg("values"))
      .def_readwrite("t_start", &TimeSeries::t_start)
      .def_readwrite("time_step", &TimeSeries::time_step)
      .def_readwrite("values", &TimeSeries::values)
      .def("t_end", &TimeSeries::t_end);
  m.def("convolve_response", &convolve_response, py::arg("kernel"), py::arg("applied_field"));

  py::class_<Band>(m, "Band")
      .def_readonly("omega_lo", &Band::omega_lo)
      .def_readonly("omega_hi", &Band::omega_hi);
  py::class_<BandReport>(m, "BandReport")
      .def_readonly("negative_imchi_bands", &BandReport::negative_imchi_bands)
      .def_readonly("min_im_epsmu_omega", &BandReport::min_im_epsmu_omega)
      .def_readonly("min_im_epsmu_value", &BandReport::min_im_epsmu_value)
      .def_readonly("passivity_ok", &BandReport::passivity_ok)
      .def_readonly("lossless", &BandReport::lossless);
  m.def("scan_bands", &scan_bands, py::arg("model"), py::arg("grid"));
  m.def("make_scan_grid", &make_scan_grid, py::arg("model"), py::arg("n") = 0);

  py::class_<ResonantBound>(m, "ResonantBound")
      .def_readonly("lhs", &ResonantBound::lhs)
      .def_readonly("rhs", &ResonantBound::rhs)
      .def_readonly("satisfied", &ResonantBound::satisfied);
  m.def("resonant_bound", &resonant_bound, py::arg("model"), py::arg("index"));

  py::class_<SumRuleReport>(m, "SumRuleReport")
      .def_readonly("residual", &SumRuleReport::residual)
      .def_readonly("per_transition_terms", &SumRuleReport::per_transition_terms)
      .def_readonly("tolerance", &SumRuleReport::tolerance)
      .def_readonly("complete", &SumRuleReport::complete);
  m.def("sum_rule", &sum_rule, py::arg("model"));

  py::enum_<CompletionStrategy>(m, "CompletionStrategy")
      .value("adjust_octopole", CompletionStrategy::adjust_octopole)
      .value("adjust_diamagnetic", CompletionStrategy::adjust_diamagnetic);
  m.def("complete_model", &complete_model, py::arg("model"), py::arg("strategy"));

  py::class_<RandomModelOptions>(m, "RandomModelOptions")
      .def(py::init<>())
      .def_readwrite("min_transitions", &RandomModelOptions::min_transitions)
      .def_readwrite("max_transitions", &RandomModelOptions::max_transitions)
      .def_readwrite("omega_base", &RandomModelOptions::omega_base)
      .def_readwrite("omega_decades", &RandomModelOptions::omega_decades)
      .def_readwrite("gamma_ratio_min", &RandomModelOptions::gamma_ratio_min)
      .def_readwrite("gamma_ratio_max", &RandomModelOptions::gamma_ratio_max)
      .def_readwrite("peak_min", &RandomModelOptions::peak_min)
      .def_readwrite("peak_max", &RandomModelOptions::peak_max)
      .def_readwrite("eta", &RandomModelOptions::eta)
      .def_readwrite("octopole", &RandomModelOptions::octopole);
  m.def("random_model",
        [](std::uint64_t seed, const RandomModelOptions& opts) {
          std::mt19937_64 rng(seed);
          return random_model(rng, opts);
        },
        py::arg("seed"), py::arg("options") = RandomModelOptions{});

  m.def("parse_model_json", &parse_model_json, py::arg("text"));
  m.def("model_to_json", &model_to_json, py::arg("model"));
  m.def("load_model_file",
        [](const std::string& path) { return load_model_file(path); },
        py::arg("path"));
  m.def("spectrum_csv",
        [](const MediumModel& model, const FrequencyGrid& grid) {
          std::ostringstream out;
          write_spectrum_csv(out, tabulate_spectrum(model, grid));
          return out.str();
        },
        py::arg("model"), py::arg("grid"));

  m.attr("__version__") = "0.1.0";
}
