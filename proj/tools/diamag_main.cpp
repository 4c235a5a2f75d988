// diamag: evaluate multipole dispersion models of a magneto-dielectric medium
// and run the dispersion-integral, pole, kernel, passivity and sum-rule
// diagnostics on them.
//
// Exit codes: 0 success, 1 input/validation error, 2 physics check failed,
// 3 I/O error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diamag/causality.hpp"
#include "diamag/grid.hpp"
#include "diamag/io.hpp"
#include "diamag/kk.hpp"
#include "diamag/model.hpp"
#include "diamag/passivity.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitPhysics = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

diamag::MediumModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return diamag::parse_model_json(buf.str());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << contents;
  if (!out) throw IoError("failed writing output file: " + path);
}

// Default analysis grid when the user does not pin one: logarithmic around
// the model's resonances, or [1e-3, 1e3] for vacuum.
diamag::FrequencyGrid default_grid(const diamag::MediumModel& model, std::size_t points) {
  double lo = 1e-3, hi = 1e3;
  if (!model.transitions.empty()) {
    lo = model.transitions.front().omega_eg;
    hi = lo;
    for (const auto& t : model.transitions) {
      lo = std::min(lo, t.omega_eg);
      hi = std::max(hi, t.omega_eg);
    }
    lo /= 1e3;
    hi *= 1e3;
  }
  return diamag::make_log_grid(lo, hi, points);
}

struct EvalArgs {
  std::string model_path, out_path, grid_kind = "log";
  double wmin = 0.0, wmax = 0.0, unit_scale = 1.0;
  std::size_t points = 0;
};

int run_eval(const EvalArgs& args) {
  const auto model = load_model(args.model_path);
  const double wmin = args.wmin * args.unit_scale;
  const double wmax = args.wmax * args.unit_scale;
  if (!(wmin > 0.0) || !(wmax > wmin)) {
    std::cerr << "eval: need 0 < wmin < wmax\n";
    return kExitInput;
  }
  const auto grid = args.grid_kind == "linear"
                        ? diamag::make_linear_grid(wmin, wmax, args.points)
                        : diamag::make_log_grid(wmin, wmax, args.points);
  auto rows = diamag::tabulate_spectrum(model, grid);
  for (auto& row : rows) row[0] /= args.unit_scale;
  std::ostringstream csv;
  diamag::write_spectrum_csv(csv, rows);
  write_file(args.out_path, csv.str());

  const auto report = diamag::sum_rule(model);
  std::cout << "static chi(0) = " << diamag::format_double(diamag::static_chi(model)) << "\n"
            << "sum-rule residual = " << diamag::format_double(report.residual) << " ("
            << (report.complete ? "complete" : "incomplete") << ")\n"
            << "wrote " << rows.size() << " rows to " << args.out_path << "\n";
  return kExitOk;
}

struct KkArgs {
  std::string model_path, out_path;
  double tol = 0.02, unit_scale = 1.0;
  std::size_t points = 4096;
};

int run_kk(const KkArgs& args) {
  const auto model = load_model(args.model_path);
  const auto grid = default_grid(model, args.points);
  const auto spectrum = diamag::sample_spectrum(model, grid, diamag::Quantity::chi);
  const diamag::KKScheme scheme;
  const auto hints = diamag::resonance_hints(model);
  const auto result = diamag::kk_round_trip(spectrum, scheme, hints);
  const double chi0_kk = diamag::kk_static(spectrum, scheme, hints);
  const double chi0 = diamag::static_chi(model);

  if (!args.out_path.empty()) {
    std::ostringstream csv;
    csv << "omega,re_chi,im_chi,re_chi_kk,im_chi_kk\n";
    const auto [lo, hi] = diamag::interior_range(grid.samples.size(), scheme.interior_margin);
    for (std::size_t j = lo; j <= hi; ++j) {
      const auto rec = result.reconstructed.values[j - lo];
      csv << diamag::format_double(grid.samples[j] / args.unit_scale) << ","
          << diamag::format_double(spectrum.values[j].real()) << ","
          << diamag::format_double(spectrum.values[j].imag()) << ","
          << diamag::format_double(rec.real()) << "," << diamag::format_double(rec.imag())
          << "\n";
    }
    write_file(args.out_path, csv.str());
  }

  std::cout << "round-trip residual_norm = " << diamag::format_double(result.residual_norm)
            << "\n"
            << "chi(0) from Im chi integral = " << diamag::format_double(chi0_kk) << "\n"
            << "chi(0) analytic             = " << diamag::format_double(chi0) << "\n";
  if (result.residual_norm > args.tol) {
    std::cerr << "kk: residual_norm " << result.residual_norm << " exceeds tolerance "
              << args.tol << "\n";
    return kExitPhysics;
  }
  return kExitOk;
}

int run_poles(const std::string& model_path, const std::string& out_path, double unit_scale) {
  const auto model = load_model(model_path);
  auto poles = diamag::find_poles(model);
  for (auto& p : poles) p.location /= unit_scale;
  std::ostringstream csv;
  diamag::write_poles_csv(csv, poles);
  write_file(out_path, csv.str());
  std::cout << "wrote " << poles.size() << " poles to " << out_path << "\n";
  bool all_lower = true;
  for (const auto& p : poles) all_lower = all_lower && p.location.imag() < 0.0;
  std::cout << (poles.empty() ? "vacuum: no poles\n"
                              : all_lower ? "all poles in the lower half-plane\n"
                                          : "WARNING: pole off the lower half-plane\n");
  return kExitOk;
}

struct KernelArgs {
  std::string model_path, out_path, method = "poles";
  double time_step = 0.0, duration = 0.0, unit_scale = 1.0;
};

int run_kernel(const KernelArgs& args) {
  const auto model = load_model(args.model_path);
  const double dt = args.time_step / args.unit_scale;
  const double duration = args.duration / args.unit_scale;
  diamag::CausalKernel kernel;
  if (args.method == "fft") {
    kernel = diamag::kernel_from_fft(model, dt, duration);
  } else {
    kernel = diamag::sample_kernel(diamag::kernel_from_poles(model), dt, duration);
  }
  if (args.unit_scale != 1.0)
    for (auto& t : kernel.times) t *= args.unit_scale;
  std::ostringstream csv;
  diamag::write_kernel_csv(csv, kernel);
  write_file(args.out_path, csv.str());
  std::cout << "wrote " << kernel.times.size() << " kernel samples to " << args.out_path
            << "\n";
  return kExitOk;
}

int run_passivity(const std::string& model_path, std::size_t points, double unit_scale) {
  const auto model = load_model(model_path);
  const auto grid = diamag::make_scan_grid(model, points);
  const auto report = diamag::scan_bands(model, grid);
  std::cout << "negative Im chi bands: " << report.negative_imchi_bands.size() << "\n";
  for (const auto& band : report.negative_imchi_bands)
    std::cout << "  [" << diamag::format_double(band.omega_lo / unit_scale) << ", "
              << diamag::format_double(band.omega_hi / unit_scale) << "]\n";
  std::cout << "min Im[eps mu] = " << diamag::format_double(report.min_im_epsmu_value)
            << " at omega = " << diamag::format_double(report.min_im_epsmu_omega / unit_scale)
            << "\n";
  if (report.lossless) std::cout << "lossless medium: passivity vacuously satisfied\n";
  std::cout << "passivity_ok = " << (report.passivity_ok ? "true" : "false") << "\n";
  return report.passivity_ok ? kExitOk : kExitPhysics;
}

int run_sumrule(const std::string& model_path) {
  const auto model = load_model(model_path);
  const auto report = diamag::sum_rule(model);
  std::cout << "sum-rule residual = " << diamag::format_double(report.residual) << "\n";
  for (std::size_t i = 0; i < report.per_transition_terms.size(); ++i)
    std::cout << "  transition " << i << ": "
              << diamag::format_double(report.per_transition_terms[i]) << "\n";
  std::cout << "complete = " << (report.complete ? "true" : "false") << "\n";
  return report.complete ? kExitOk : kExitPhysics;
}

int run_complete(const std::string& model_path, const std::string& strategy,
                 const std::string& out_path) {
  const auto model = load_model(model_path);
  const auto strat = strategy == "adjust-diamagnetic"
                         ? diamag::CompletionStrategy::adjust_diamagnetic
                         : diamag::CompletionStrategy::adjust_octopole;
  const double before = diamag::sum_rule(model).residual;
  const auto completed = diamag::complete_model(model, strat);
  write_file(out_path, diamag::model_to_json(completed));
  std::cout << "residual before = " << diamag::format_double(before) << "\n"
            << "residual after  = "
            << diamag::format_double(diamag::sum_rule(completed).residual) << "\n"
            << "wrote completed model to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multipole dispersion models: spectra, dispersion integrals, poles, "
               "kernels, passivity and sum-rule diagnostics"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate eps, mu, chi on a frequency grid");
  eval->add_option("--model", eval_args.model_path, "model JSON file")->required();
  eval->add_option("--wmin", eval_args.wmin, "lowest angular frequency")->required();
  eval->add_option("--wmax", eval_args.wmax, "highest angular frequency")->required();
  eval->add_option("--points", eval_args.points, "number of grid points (>= 8)")->required();
  eval->add_option("--grid", eval_args.grid_kind, "grid spacing: linear|log")
      ->check(CLI::IsMember({"linear", "log"}));
  eval->add_option("--out", eval_args.out_path, "output CSV path")->required();
  eval->add_option("--unit-scale", eval_args.unit_scale,
                   "display unit: input frequencies are multiplied by this factor, "
                   "output frequencies divided");

  KkArgs kk_args;
  auto* kk = app.add_subcommand("kk", "dispersion-integral round trip and static limit");
  kk->add_option("--model", kk_args.model_path, "model JSON file")->required();
  kk->add_option("--tol", kk_args.tol, "residual_norm tolerance (default 0.02)");
  kk->add_option("--points", kk_args.points, "grid points (default 4096)");
  kk->add_option("--out", kk_args.out_path, "reconstruction CSV path");
  kk->add_option("--unit-scale", kk_args.unit_scale, "display unit for frequencies");

  std::string poles_model, poles_out;
  double poles_scale = 1.0;
  auto* poles = app.add_subcommand("poles", "complex poles and residues of chi");
  poles->add_option("--model", poles_model, "model JSON file")->required();
  poles->add_option("--out", poles_out, "output CSV path")->required();
  poles->add_option("--unit-scale", poles_scale, "display unit for frequencies");

  KernelArgs kernel_args;
  auto* kernel = app.add_subcommand("kernel", "time-domain response kernel g(t)");
  kernel->add_option("--model", kernel_args.model_path, "model JSON file")->required();
  kernel->add_option("--time-step", kernel_args.time_step, "kernel sample spacing")->required();
  kernel->add_option("--duration", kernel_args.duration, "total kernel span")->required();
  kernel->add_option("--method", kernel_args.method, "poles|fft (default poles)")
      ->check(CLI::IsMember({"poles", "fft"}));
  kernel->add_option("--out", kernel_args.out_path, "output CSV path")->required();
  kernel->add_option("--unit-scale", kernel_args.unit_scale, "display unit for times");

  std::string pass_model;
  std::size_t pass_points = 0;
  double pass_scale = 1.0;
  auto* passivity = app.add_subcommand("passivity",
                                       "negative Im chi bands and the Im[eps mu] minimum");
  passivity->add_option("--model", pass_model, "model JSON file")->required();
  passivity->add_option("--points", pass_points,
                        "scan grid points (default: auto-resolved from linewidths)");
  passivity->add_option("--unit-scale", pass_scale, "display unit for frequencies");

  std::string sum_model;
  auto* sumrule = app.add_subcommand("sumrule", "high-frequency sum rule report");
  sumrule->add_option("--model", sum_model, "model JSON file")->required();

  std::string comp_model, comp_out, comp_strategy = "adjust-octopole";
  auto* complete = app.add_subcommand("complete", "rescale strengths to zero the sum rule");
  complete->add_option("--model", comp_model, "model JSON file")->required();
  complete->add_option("--strategy", comp_strategy,
                       "adjust-octopole|adjust-diamagnetic (default adjust-octopole)")
      ->check(CLI::IsMember({"adjust-octopole", "adjust-diamagnetic"}));
  complete->add_option("--out", comp_out, "completed model JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval->parsed()) return run_eval(eval_args);
    if (kk->parsed()) return run_kk(kk_args);
    if (poles->parsed()) return run_poles(poles_model, poles_out, poles_scale);
    if (kernel->parsed()) return run_kernel(kernel_args);
    if (passivity->parsed()) return run_passivity(pass_model, pass_points, pass_scale);
    if (sumrule->parsed()) return run_sumrule(sum_model);
    if (complete->parsed()) return run_complete(comp_model, comp_strategy, comp_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
