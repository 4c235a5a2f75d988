#include "diamag/causality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diamag/passivity.hpp"

namespace diamag {

namespace {

// Numerator of the susceptibility's resonant part, N_e(w) = delta_mdip +
// (delta_quad - delta_oct) w^2, evaluated at a complex frequency.
complex chi_numerator(const MultipoleTransition& t, complex omega) {
  return t.delta_mdip + (t.delta_quad - t.delta_oct) * omega * omega;
}

// In-place radix-2 forward DFT, X_k = sum_n x_n e^{-2 pi i n k / N}.
void fft_inplace(std::vector<complex>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of 2");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<complex> tw(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i)
    tw[i] = std::polar(1.0, -2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const complex u = a[i + k];
        const complex v = a[i + k + len / 2] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void require_complete(const MediumModel& model, const char* who) {
  const auto report = sum_rule(model);
  if (!report.complete)
    throw std::domain_error(std::string(who) +
                            " requires a sum-rule-complete model (residual " +
                            std::to_string(report.residual) + "): chi would not vanish at "
                            "infinite frequency and the kernel would carry a delta(t) term");
}

// Linear convolution of two real sequences through the DFT.
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<complex> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft_inplace(fa);
  fft_inplace(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] = std::conj(fa[i] * fb[i]);
  fft_inplace(fa);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i)
    out[i] = fa[i].real() / static_cast<double>(n);
  return out;
}

}  // namespace

std::vector<Pole> find_poles(const MediumModel& model) {
  validate_model(model);
  std::vector<Pole> poles;
  poles.reserve(2 * model.transitions.size());
  for (std::size_t i = 0; i < model.transitions.size(); ++i) {
    const auto& t = model.transitions[i];
    const double om = std::sqrt(t.omega_eg * t.omega_eg - t.gamma_e * t.gamma_e);
    const complex plus{om, -t.gamma_e};
    const complex minus{-om, -t.gamma_e};
    // chi_e = N_e / D_e with D_e = -(w - w+)(w - w-), so res = N(w±)/D'(w±).
    poles.push_back({plus, chi_numerator(t, plus) / (-2.0 * om), i});
    poles.push_back({minus, chi_numerator(t, minus) / (2.0 * om), i});
  }
  return poles;
}

double CausalKernel::evaluate(double t) const {
  if (form == KernelForm::pole_residue) {
    if (t < 0.0) return 0.0;
    double g = 0.0;
    for (const auto& m : modes)
      g += std::exp(-m.gamma * t) *
           (m.amp_cos * std::cos(m.omega_osc * t) + m.amp_sin * std::sin(m.omega_osc * t));
    return g;
  }
  if (times.empty() || t < times.front() || t > times.back()) return 0.0;
  const double pos = (t - times.front()) / time_step;
  const auto j = std::min(static_cast<std::size_t>(pos), times.size() - 2);
  const double frac = pos - static_cast<double>(j);
  return values[j] + frac * (values[j + 1] - values[j]);
}

CausalKernel kernel_from_poles(const MediumModel& model) {
  validate_model(model);
  require_complete(model, "kernel_from_poles");
  CausalKernel kernel;
  kernel.form = KernelForm::pole_residue;
  for (const auto& t : model.transitions) {
    const double om = std::sqrt(t.omega_eg * t.omega_eg - t.gamma_e * t.gamma_e);
    const complex r_plus = chi_numerator(t, complex{om, -t.gamma_e}) / (-2.0 * om);
    // g(t) = theta(t) sum_p -i r_p e^{-i w_p t} collapses to
    // 2 e^{-gamma t} Im[r+ e^{-i Omega t}] per conjugate pole pair.
    kernel.modes.push_back({t.gamma_e, om, 2.0 * r_plus.imag(), -2.0 * r_plus.real()});
  }
  return kernel;
}

CausalKernel kernel_from_fft(const MediumModel& model, double time_step, double duration) {
  validate_model(model);
  if (!(time_step > 0.0) || !(duration > time_step))
    throw std::invalid_argument("kernel_from_fft: need time_step > 0 and duration > time_step");
  double omega_max = 0.0, gamma_min = 0.0;
  for (const auto& t : model.transitions) {
    omega_max = std::max(omega_max, t.omega_eg);
    gamma_min = gamma_min == 0.0 ? t.gamma_e : std::min(gamma_min, t.gamma_e);
  }
  if (!model.transitions.empty()) {
    if (time_step > 1.0 / (20.0 * omega_max))
      throw std::domain_error("kernel_from_fft: time_step does not resolve the fastest "
                              "resonance (need time_step <= 1/(20 max omega_eg))");
    if (duration < 10.0 / gamma_min)
      throw std::domain_error("kernel_from_fft: duration does not cover the slowest decay "
                              "(need duration >= 10/min gamma_e)");
  }

  const std::size_t n = next_pow2(static_cast<std::size_t>(std::llround(duration / time_step)));
  const double dw = 2.0 * M_PI / (static_cast<double>(n) * time_step);
  std::vector<complex> chi(n);
  std::vector<double> wgrid(n);
  for (std::size_t j = 0; j < n; ++j) {
    wgrid[j] = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dw;
    chi[j] = susceptibility(model, wgrid[j]);
  }

  // chi decays only as 1/w when the quadrupole and octopole strengths do not
  // balance; a hard window cutoff would then leak across t = 0. Fit the
  // 1/w and 1/w^2 asymptotics over the top half-decade of the window and move
  // them into closed-form causal carriers,
  //   C1/(kappa - i w)  <->  C1 theta(t) e^{-kappa t}
  //   C2/(kappa - i w)^2 <-> C2 theta(t) t e^{-kappa t}
  // transforming only the fast-decaying remainder.
  const double kappa = std::max(model.transitions.empty() ? 0.0 : 3.0 * gamma_min, 6.0 * dw);
  const double wtop = wgrid.back();
  const double cut = wtop / std::sqrt(10.0);
  double c1 = 0.0, c2 = 0.0;
  {
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (wgrid[j] >= cut) { acc += chi[j].imag() * wgrid[j]; ++cnt; }
    }
    c1 = cnt ? acc / static_cast<double>(cnt) : 0.0;
    acc = 0.0;
    cnt = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (wgrid[j] >= cut) {
        const complex rem = chi[j] - c1 / complex{kappa, -wgrid[j]};
        acc += rem.real() * wgrid[j] * wgrid[j];
        ++cnt;
      }
    }
    // 1/(kappa - i w)^2 ~ -1/w^2, so the carrier amplitude flips sign.
    c2 = cnt ? -acc / static_cast<double>(cnt) : 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const complex d{kappa, -wgrid[j]};
    chi[j] -= c1 / d + c2 / (d * d);
  }

  // g(t_l) = (dw/2pi) sum_j chi(w_j) e^{-i w_j t_l} with w_j, t_l centered:
  // reduces to a forward DFT after (-1)^j modulation on both sides.
  for (std::size_t j = 0; j < n; ++j)
    if (j & 1) chi[j] = -chi[j];
  fft_inplace(chi);
  const double sign_mid = (n / 2) % 2 == 0 ? 1.0 : -1.0;

  CausalKernel kernel;
  kernel.form = KernelForm::sampled;
  kernel.time_step = time_step;
  kernel.duration = static_cast<double>(n) * time_step;
  kernel.times.resize(n);
  kernel.values.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double t = (static_cast<double>(l) - static_cast<double>(n) / 2.0) * time_step;
    const double mod = (l & 1) ? -sign_mid : sign_mid;
    double g = dw / (2.0 * M_PI) * mod * chi[l].real();
    if (t >= 0.0) g += c1 * std::exp(-kappa * t) + c2 * t * std::exp(-kappa * t);
    kernel.times[l] = t;
    kernel.values[l] = g;
  }
  return kernel;
}

CausalKernel sample_kernel(const CausalKernel& kernel, double time_step, double duration) {
  if (!(time_step > 0.0) || !(duration > time_step))
    throw std::invalid_argument("sample_kernel: need time_step > 0 and duration > time_step");
  const auto n = static_cast<std::size_t>(std::llround(duration / time_step));
  CausalKernel out;
  out.form = KernelForm::sampled;
  out.time_step = time_step;
  out.duration = static_cast<double>(n) * time_step;
  out.times.resize(n);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) - static_cast<double>(n) / 2.0) * time_step;
    out.times[i] = t;
    out.values[i] = kernel.evaluate(t);
  }
  return out;
}

TimeSeries convolve_response(const CausalKernel& kernel, const TimeSeries& applied_field) {
  if (!(applied_field.time_step > 0.0) || applied_field.values.empty())
    throw std::invalid_argument("convolve_response: empty or invalid applied field");
  const double dt = applied_field.time_step;

  std::vector<double> g;
  double tau0 = 0.0;
  if (kernel.form == KernelForm::sampled) {
    if (std::abs(kernel.time_step - dt) > 1e-12 * dt)
      throw std::invalid_argument("convolve_response: kernel and field time steps differ");
    g = kernel.values;
    tau0 = kernel.times.empty() ? 0.0 : kernel.times.front();
  } else {
    double gamma_min = 0.0;
    for (const auto& m : kernel.modes)
      gamma_min = gamma_min == 0.0 ? m.gamma : std::min(gamma_min, m.gamma);
    // sample the closed form until it has decayed to ~1e-14 of its envelope
    const double horizon = gamma_min > 0.0 ? std::log(1e14) / gamma_min : 0.0;
    const auto count = static_cast<std::size_t>(std::ceil(horizon / dt)) + 1;
    g.resize(count);
    for (std::size_t j = 0; j < count; ++j) g[j] = kernel.evaluate(static_cast<double>(j) * dt);
    tau0 = 0.0;
  }

  TimeSeries out;
  out.time_step = dt;
  out.t_start = applied_field.t_start + tau0;
  if (g.empty()) {
    out.values.assign(applied_field.values.size(), 0.0);
    return out;
  }
  out.values = fft_convolve(g, applied_field.values);
  for (double& v : out.values) v *= dt;
  return out;
}

}  // namespace diamag
