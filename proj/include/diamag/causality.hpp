#pragma once

#include <cstddef>
#include <vector>

#include "diamag/model.hpp"

// Time-domain causality: complex poles of chi, the response kernel
// g(t) = (1/2pi) int chi(w) e^{-iwt} dw, and convolution of applied fields.
// Sign convention e^{-iwt}, so causal poles sit in the lower half-plane.

namespace diamag {

struct Pole {
  complex location;      // -i gamma_e +- sqrt(omega_eg^2 - gamma_e^2)
  complex residue;       // residue of chi at the pole
  std::size_t transition = 0;
};

// Two poles per transition, in (+Omega, -Omega) order.
std::vector<Pole> find_poles(const MediumModel& model);

// One damped sinusoid of the pole-residue kernel:
// theta(t) e^{-gamma t} (amp_cos cos(Omega t) + amp_sin sin(Omega t)).
struct DampedMode {
  double gamma = 0.0;
  double omega_osc = 0.0;
  double amp_cos = 0.0;
  double amp_sin = 0.0;
};

enum class KernelForm { pole_residue, sampled };

struct CausalKernel {
  KernelForm form = KernelForm::pole_residue;
  std::vector<DampedMode> modes;  // pole-residue form
  std::vector<double> times;      // sampled form: uniform, spans [-duration/2, duration/2)
  std::vector<double> values;
  double time_step = 0.0;
  double duration = 0.0;

  // Pole form evaluates the closed form (exact zero for t < 0); sampled form
  // interpolates linearly and is zero outside its time range.
  double evaluate(double t) const;
};

// Exact kernel from the pole structure. Requires a sum-rule-complete model,
// otherwise chi(inf) != 0 and the contour closure would leave a delta(t)
// term; throws std::domain_error in that case.
CausalKernel kernel_from_poles(const MediumModel& model);

// Discrete inverse transform of chi over a symmetric frequency window
// [-pi/time_step, pi/time_step), sampled on [-duration/2, duration/2).
// The slowly decaying part of chi (fitted 1/w and 1/w^2 asymptotics) is
// carried by closed-form causal carriers so that window truncation does not
// leak across t = 0. Preconditions: time_step <= 1/(20 max omega_eg) and
// duration >= 10 / min gamma_e; throws std::domain_error otherwise.
CausalKernel kernel_from_fft(const MediumModel& model, double time_step, double duration);

// Evaluate any kernel on a uniform time grid spanning [-duration/2,
// duration/2); pole-residue kernels sample their closed form.
CausalKernel sample_kernel(const CausalKernel& kernel, double time_step, double duration);

struct TimeSeries {
  double t_start = 0.0;
  double time_step = 0.0;
  std::vector<double> values;

  double t_end() const { return t_start + time_step * (values.empty() ? 0 : values.size() - 1); }
};

// M(t) = sum_tau g(tau) B(t - tau) time_step. The kernel is sampled on the
// field's time step (pole form: tau >= 0 until decay below 1e-14 of peak;
// sampled form: its own stored range, so negative-tau leakage is kept).
// Throws std::invalid_argument when a sampled kernel's step mismatches the
// field's.
TimeSeries convolve_response(const CausalKernel& kernel, const TimeSeries& applied_field);

}  // namespace diamag
