#include "diamag/kk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamag {

std::pair<std::size_t, std::size_t> interior_range(std::size_t n, double margin) {
  if (!(margin >= 0.0) || !(margin < 0.4))
    throw std::invalid_argument("interior_margin must lie in [0, 0.4)");
  const auto cut = static_cast<std::size_t>(std::floor(margin * static_cast<double>(n)));
  if (n < 2 * cut + 2) throw std::invalid_argument("grid too small for interior margin");
  return {cut, n - 1 - cut};
}

std::vector<ResonanceHint> resonance_hints(const MediumModel& model) {
  std::vector<ResonanceHint> hints;
  hints.reserve(model.transitions.size());
  for (const auto& t : model.transitions) hints.push_back({t.omega_eg, t.gamma_e});
  return hints;
}

namespace {

void check_scheme(const KKScheme& scheme) {
  if (!(scheme.tail_exponent >= 1.0))
    throw std::invalid_argument("KKScheme.tail_exponent must be >= 1");
  if (!(scheme.interior_margin >= 0.0) || !(scheme.interior_margin < 0.4))
    throw std::invalid_argument("KKScheme.interior_margin must lie in [0, 0.4)");
}

// Coefficient A of f ~ A / w^p over the last decade of samples.
double fit_tail(const std::vector<double>& w, const std::vector<double>& f, double p) {
  const double cut = w.back() / 10.0;
  double acc = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= cut) {
      acc += f[i] * std::pow(w[i], p);
      ++cnt;
    }
  }
  return cnt ? acc / static_cast<double>(cnt) : 0.0;
}

constexpr std::size_t kLowNodes = 64;
constexpr std::size_t kTailNodes = 512;
constexpr double kTailSpanDecades = 6.0;

// Shared machinery for both dispersion relations. `f` holds the part being
// transformed (Im chi for the real reconstruction, Re chi for the imaginary
// one); `times_omega` selects the w' f(w') numerator of the first relation.
struct Transform {
  const std::vector<double>& w;
  std::vector<double> f;
  bool times_omega = false;    // numerator w' f(w') instead of f(w')
  bool f_linear_at_zero = false;  // below-grid model: f ~ f(w0) w'/w0 vs constant
  double tail_coeff = 0.0;     // f ~ tail_coeff / w'^tail_power beyond the grid
  double tail_power = 0.0;
  std::size_t lo = 0, hi = 0;  // interior index range

  Transform(const ComplexSpectrum& s, const KKScheme& scheme, bool imag_part)
      : w(s.grid.samples) {
    check_scheme(scheme);
    validate_grid(s.grid);
    if (s.values.size() != w.size())
      throw std::invalid_argument("spectrum values/grid length mismatch");
    f.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      f[i] = imag_part ? s.values[i].imag() : s.values[i].real();
    times_omega = imag_part;
    f_linear_at_zero = imag_part;
    // Im chi decays one power faster than Re chi.
    tail_power = imag_part ? scheme.tail_exponent + 1.0 : scheme.tail_exponent;
    tail_coeff = fit_tail(w, f, tail_power);
    std::tie(lo, hi) = interior_range(w.size(), scheme.interior_margin);
  }

  double numerator(double wp, double fp) const { return times_omega ? wp * fp : fp; }

  // Sample value at the evaluation point (linear interpolation between nodes).
  double value_at(double omega, std::size_t node_below) const {
    const std::size_t j = node_below;
    if (omega <= w[j]) return f[j];
    const double t = (omega - w[j]) / (w[j + 1] - w[j]);
    return f[j] + t * (f[j + 1] - f[j]);
  }

  // d/dw' [numerator] at node j via the nonuniform three-point formula
  // (one-sided at the grid ends).
  double numerator_derivative(std::size_t j) const {
    auto F = [&](std::size_t i) { return numerator(w[i], f[i]); };
    if (j == 0) return (F(1) - F(0)) / (w[1] - w[0]);
    if (j + 1 == w.size()) return (F(j) - F(j - 1)) / (w[j] - w[j - 1]);
    const double hl = w[j] - w[j - 1], hr = w[j + 1] - w[j];
    return (F(j + 1) * hl * hl - F(j - 1) * hr * hr + F(j) * (hr * hr - hl * hl)) /
           (hl * hr * (hl + hr));
  }

  // PV int_0^inf numerator(w') / (w'^2 - omega^2) dw' by the subtraction
  // method, with linear/constant extension below the grid and the fitted
  // power-law tail above it.
  double pv_integral_subtraction(double omega) const {
    const std::size_t n = w.size();
    const double om2 = omega * omega;
    // Node-coincident evaluation uses the analytic limit of the subtracted
    // integrand; otherwise the integrand is regular at every node.
    std::size_t coincident = n;
    std::size_t below = lo;
    for (std::size_t j = lo; j <= hi; ++j) {
      if (std::abs(omega - w[j]) <= 1e-12 * w[j]) { coincident = j; break; }
    }
    while (below + 1 < n && w[below + 1] < omega) ++below;
    const double f_eval = coincident < n ? f[coincident] : value_at(omega, below);
    const double sub = numerator(omega, f_eval);

    double total = 0.0;
    // grid segment
    double prev_g = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double gi;
      if (i == coincident) {
        gi = (numerator_derivative(i)) / (2.0 * omega);
      } else {
        gi = (numerator(w[i], f[i]) - sub) / (w[i] * w[i] - om2);
      }
      if (i > 0) total += 0.5 * (gi + prev_g) * (w[i] - w[i - 1]);
      prev_g = gi;
    }
    // below-grid segment [0, w0]
    {
      const double w0 = w.front(), f0 = f.front();
      double prev = 0.0;
      for (std::size_t i = 0; i < kLowNodes; ++i) {
        const double wp = w0 * static_cast<double>(i) / static_cast<double>(kLowNodes - 1);
        const double fp = f_linear_at_zero ? f0 * wp / w0 : f0;
        const double gi = (numerator(wp, fp) - sub) / (wp * wp - om2);
        if (i > 0) total += 0.5 * (gi + prev) * (w0 / static_cast<double>(kLowNodes - 1));
        prev = gi;
      }
    }
    // tail segment [W, W*10^kTailSpanDecades], log-spaced
    {
      const double W = w.back();
      const double step = std::log(10.0) * kTailSpanDecades / static_cast<double>(kTailNodes - 1);
      double prev = 0.0, wprev = W;
      for (std::size_t i = 0; i < kTailNodes; ++i) {
        const double wp = W * std::exp(step * static_cast<double>(i));
        const double fp = tail_coeff / std::pow(wp, tail_power);
        const double gi = (numerator(wp, fp) - sub) / (wp * wp - om2);
        if (i > 0) total += 0.5 * (gi + prev) * (wp - wprev);
        prev = gi;
        wprev = wp;
      }
      // remainder of the subtracted constant beyond the extension,
      // -sub * int_E^inf dw'/(w'^2 - om^2) = -sub/(2 omega) ln((E+omega)/(E-omega))
      const double E = W * std::pow(10.0, kTailSpanDecades);
      total -= sub / (2.0 * omega) * std::log((E + omega) / (E - omega));
    }
    return total;
  }

  // Same integral with the exclusion-window prescription: plain quadrature of
  // numerator * kernel, dropping the two nodes nearest the singularity.
  double pv_integral_exclusion(double omega) const {
    const std::size_t n = w.size();
    const double om2 = omega * omega;
    std::size_t nearest = 0;
    double best = std::abs(w[0] - omega);
    for (std::size_t i = 1; i < n; ++i) {
      const double d = std::abs(w[i] - omega);
      if (d < best) { best = d; nearest = i; }
    }
    std::size_t drop_a = nearest, drop_b = nearest;
    if (w[nearest] <= omega && nearest + 1 < n) drop_b = nearest + 1;
    if (w[nearest] > omega && nearest > 0) drop_a = nearest - 1;
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool dropped = (i >= drop_a && i <= drop_b);
      const double gi = dropped ? 0.0 : numerator(w[i], f[i]) / (w[i] * w[i] - om2);
      if (i > 0) total += 0.5 * (gi + prev) * (w[i] - w[i - 1]);
      prev = gi;
    }
    {
      const double w0 = w.front(), f0 = f.front();
      double prev_g = 0.0;
      for (std::size_t i = 0; i < kLowNodes; ++i) {
        const double wp = w0 * static_cast<double>(i) / static_cast<double>(kLowNodes - 1);
        const double fp = f_linear_at_zero ? f0 * wp / w0 : f0;
        const double gi = numerator(wp, fp) / (wp * wp - om2);
        if (i > 0) total += 0.5 * (gi + prev_g) * (w0 / static_cast<double>(kLowNodes - 1));
        prev_g = gi;
      }
    }
    {
      const double W = w.back();
      const double step = std::log(10.0) * kTailSpanDecades / static_cast<double>(kTailNodes - 1);
      double prev_g = 0.0, wprev = W;
      for (std::size_t i = 0; i < kTailNodes; ++i) {
        const double wp = W * std::exp(step * static_cast<double>(i));
        const double fp = tail_coeff / std::pow(wp, tail_power);
        const double gi = numerator(wp, fp) / (wp * wp - om2);
        if (i > 0) total += 0.5 * (gi + prev_g) * (wp - wprev);
        prev_g = gi;
        wprev = wp;
      }
    }
    return total;
  }

  double pv_integral(const KKScheme& scheme, double omega) const {
    return scheme.singularity_method == SingularityMethod::subtraction
               ? pv_integral_subtraction(omega)
               : pv_integral_exclusion(omega);
  }

  void check_eval_point(double omega, std::span<const ResonanceHint> hints) const {
    if (!(omega >= w[lo]) || !(omega <= w[hi]))
      throw std::domain_error("omega_eval outside the interior region [" +
                              std::to_string(w[lo]) + ", " + std::to_string(w[hi]) + "]");
    for (const auto& h : hints) {
      if (std::abs(omega - h.omega_eg) > 4.0 * h.gamma_e) continue;
      std::size_t count = 0;
      for (double wi : w) {
        if (wi >= omega - 4.0 * h.gamma_e && wi <= omega + 4.0 * h.gamma_e) ++count;
      }
      if (count < 4)
        throw std::domain_error(
            "grid too coarse: fewer than 4 points within +-4 gamma of omega_eval = " +
            std::to_string(omega));
    }
  }
};

}  // namespace

double kk_real_from_imag(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                         double omega_eval, std::span<const ResonanceHint> hints) {
  Transform tr(spectrum, scheme, /*imag_part=*/true);
  tr.check_eval_point(omega_eval, hints);
  return 2.0 / M_PI * tr.pv_integral(scheme, omega_eval);
}

double kk_imag_from_real(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                         double omega_eval, std::span<const ResonanceHint> hints) {
  Transform tr(spectrum, scheme, /*imag_part=*/false);
  tr.check_eval_point(omega_eval, hints);
  return -2.0 * omega_eval / M_PI * tr.pv_integral(scheme, omega_eval);
}

double kk_static(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                 std::span<const ResonanceHint> hints) {
  check_scheme(scheme);
  validate_grid(spectrum.grid);
  const auto& w = spectrum.grid.samples;
  if (spectrum.values.size() != w.size())
    throw std::invalid_argument("spectrum values/grid length mismatch");
  for (const auto& h : hints) {
    if (w.front() > h.omega_eg / 100.0)
      throw std::domain_error("grid missing low-frequency coverage: omega_min > omega_eg/100");
  }
  std::vector<double> im(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) im[i] = spectrum.values[i].imag();

  double total = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i)
    total += 0.5 * (im[i] / w[i] + im[i - 1] / w[i - 1]) * (w[i] - w[i - 1]);
  // Im chi -> 0 linearly at the origin: the integrand is constant below the
  // grid and contributes im(w0) exactly.
  total += im.front();
  const double p = scheme.tail_exponent + 1.0;
  const double A = fit_tail(w, im, p);
  total += A / (p * std::pow(w.back(), p));
  return 2.0 / M_PI * total;
}

KKResult kk_round_trip(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                       std::span<const ResonanceHint> hints) {
  Transform tr_re(spectrum, scheme, /*imag_part=*/true);   // rebuilds Re from Im
  Transform tr_im(spectrum, scheme, /*imag_part=*/false);  // rebuilds Im from Re
  const auto& w = spectrum.grid.samples;
  const auto [lo, hi] = interior_range(w.size(), scheme.interior_margin);

  KKResult out;
  out.reconstructed.quantity = spectrum.quantity;
  out.reconstructed.grid.spacing = spectrum.grid.spacing;
  out.reconstructed.grid.tail_exponent = spectrum.grid.tail_exponent;
  out.reconstructed.grid.samples.assign(w.begin() + static_cast<long>(lo),
                                        w.begin() + static_cast<long>(hi) + 1);

  double num_re = 0.0, den_re = 0.0, num_im = 0.0, den_im = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    tr_re.check_eval_point(w[j], hints);
    const double re_rec = 2.0 / M_PI * tr_re.pv_integral(scheme, w[j]);
    const double im_rec = -2.0 * w[j] / M_PI * tr_im.pv_integral(scheme, w[j]);
    out.reconstructed.values.emplace_back(re_rec, im_rec);
    const double re_ref = spectrum.values[j].real();
    const double im_ref = spectrum.values[j].imag();
    num_re = std::max(num_re, std::abs(re_rec - re_ref));
    num_im = std::max(num_im, std::abs(im_rec - im_ref));
    den_re = std::max(den_re, std::abs(re_ref));
    den_im = std::max(den_im, std::abs(im_ref));
  }
  const double r_re = num_re == 0.0 ? 0.0 : num_re / den_re;
  const double r_im = num_im == 0.0 ? 0.0 : num_im / den_im;
  out.residual_norm = std::max(r_re, r_im);
  return out;
}

}  // namespace diamag
