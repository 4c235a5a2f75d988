#include "diamag/passivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diamag {

namespace {

double im_chi(const MediumModel& m, double w) { return susceptibility(m, w).imag(); }

double im_epsmu(const MediumModel& m, double w) {
  return (permittivity(m, w) * permeability(m, w)).imag();
}

// Bisection of the Im chi sign change bracketed by [a, b] down to relative
// width 1e-6; returns the midpoint.
double refine_edge(const MediumModel& m, double a, double b) {
  const bool neg_a = im_chi(m, a) < 0.0;
  while ((b - a) > 1e-6 * (0.5 * (a + b))) {
    const double mid = 0.5 * (a + b);
    if ((im_chi(m, mid) < 0.0) == neg_a)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

// Golden-section minimisation of Im[eps mu] inside [a, b].
std::pair<double, double> refine_min(const MediumModel& m, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = im_epsmu(m, x1), f2 = im_epsmu(m, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = im_epsmu(m, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = im_epsmu(m, x2);
    }
  }
  const double x = f1 < f2 ? x1 : x2;
  return {x, std::min(f1, f2)};
}

}  // namespace

FrequencyGrid make_scan_grid(const MediumModel& model, std::size_t n) {
  if (model.transitions.empty()) return make_log_grid(1e-3, 1e3, n ? n : 4096);
  double wmin = model.transitions.front().omega_eg, wmax = wmin;
  double ratio_min = 1.0;
  for (const auto& t : model.transitions) {
    wmin = std::min(wmin, t.omega_eg);
    wmax = std::max(wmax, t.omega_eg);
    ratio_min = std::min(ratio_min, t.gamma_e / t.omega_eg);
  }
  const double lo = wmin / 1e3, hi = wmax * 1e3;
  if (n == 0) {
    // resolve every linewidth with margin over the >= 8 points/gamma contract
    const double span = std::log(hi / lo);
    n = std::max<std::size_t>(4096,
        static_cast<std::size_t>(std::ceil(span / (ratio_min / 10.0))) + 2);
  }
  return make_log_grid(lo, hi, n);
}

BandReport scan_bands(const MediumModel& model, const FrequencyGrid& grid) {
  validate_model(model);
  validate_grid(grid);

  // the supplied grid must resolve every linewidth: >= 8 points per gamma_e
  for (const auto& t : model.transitions) {
    if (t.omega_eg < grid.samples.front() || t.omega_eg > grid.samples.back()) continue;
    std::size_t count = 0;
    for (double w : grid.samples)
      if (std::abs(w - t.omega_eg) <= 0.5 * t.gamma_e) ++count;
    if (count < 8)
      throw std::domain_error("scan grid under-resolves the linewidth at omega_eg = " +
                              std::to_string(t.omega_eg));
  }

  // union of the grid and +-10 gamma windows around every resonance
  std::vector<double> scan = grid.samples;
  for (const auto& t : model.transitions) {
    const double lo = std::max(t.omega_eg - 10.0 * t.gamma_e, t.omega_eg / 100.0);
    const double hi = t.omega_eg + 10.0 * t.gamma_e;
    for (int i = 0; i < 64; ++i)
      scan.push_back(lo + (hi - lo) * static_cast<double>(i) / 63.0);
  }
  std::sort(scan.begin(), scan.end());
  scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

  BandReport report;
  if (model.transitions.empty()) {
    report.lossless = true;
    report.passivity_ok = true;
    report.min_im_epsmu_omega = scan.front();
    report.min_im_epsmu_value = 0.0;
    return report;
  }

  // negative Im chi bands by sign-change bracketing
  bool in_band = im_chi(model, scan.front()) < 0.0;
  double band_start = scan.front();
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const bool neg = im_chi(model, scan[i]) < 0.0;
    if (neg == in_band) continue;
    const double edge = refine_edge(model, scan[i - 1], scan[i]);
    if (in_band)
      report.negative_imchi_bands.push_back({band_start, edge});
    else
      band_start = edge;
    in_band = neg;
  }
  if (in_band) report.negative_imchi_bands.push_back({band_start, scan.back()});

  // global minimum of Im[eps mu] over the scan, refined locally
  double scale = 0.0;
  std::size_t arg = 0;
  double best = im_epsmu(model, scan[0]);
  scale = std::abs(best);
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const double v = im_epsmu(model, scan[i]);
    scale = std::max(scale, std::abs(v));
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  double wlo = arg > 0 ? scan[arg - 1] : scan[arg];
  double whi = arg + 1 < scan.size() ? scan[arg + 1] : scan[arg];
  auto [wstar, vstar] = refine_min(model, wlo, whi);
  if (vstar > best) {
    wstar = scan[arg];
    vstar = best;
  }
  report.min_im_epsmu_omega = wstar;
  report.min_im_epsmu_value = vstar;
  report.passivity_ok = vstar > -1e-14 * scale;
  return report;
}

ResonantBound resonant_bound(const MediumModel& model, std::size_t index) {
  // No validity requirement beyond the regime check: evaluating the bound on
  // hierarchy-violating models is how the rhs < 0 diagnosis is produced.
  if (index >= model.transitions.size())
    throw std::invalid_argument("resonant_bound: transition index out of range");
  const auto& t = model.transitions[index];
  if (t.gamma_e > t.omega_eg / 50.0)
    throw std::domain_error("resonant_bound: narrow-resonance regime requires "
                            "gamma_e <= omega_eg/50");
  const double w0 = t.omega_eg;
  ResonantBound out;
  out.lhs = (permittivity(model, w0) * std::conj(inverse_permeability(model, w0))).imag();
  out.rhs = (t.delta_edip - t.delta_oct * w0 * w0) / (2.0 * w0 * t.gamma_e);
  out.satisfied = out.lhs > out.rhs && out.rhs > 0.0;
  return out;
}

SumRuleReport sum_rule(const MediumModel& model) {
  SumRuleReport report;
  double abs_sum = 0.0;
  for (const auto& t : model.transitions) {
    const double term = t.delta_dia / (t.omega_eg * t.omega_eg) + t.delta_quad - t.delta_oct;
    report.per_transition_terms.push_back(term);
    report.residual += term;
    abs_sum += std::abs(term);
  }
  report.tolerance = 1e-10 * std::max(1.0, abs_sum);
  report.complete = std::abs(report.residual) < report.tolerance;
  return report;
}

MediumModel complete_model(const MediumModel& model, CompletionStrategy strategy) {
  validate_model(model);
  if (sum_rule(model).complete) return model;  // fixed point
  MediumModel out = model;
  for (std::size_t i = 0; i < out.transitions.size(); ++i) {
    auto& t = out.transitions[i];
    if (strategy == CompletionStrategy::adjust_octopole) {
      t.delta_oct = t.delta_quad + t.delta_dia / (t.omega_eg * t.omega_eg);
    } else {
      const double dia = t.omega_eg * t.omega_eg * (t.delta_oct - t.delta_quad);
      if (dia < 0.0)
        throw std::domain_error("complete_model: adjust-diamagnetic would force a negative "
                                "delta_dia (transition " + std::to_string(i) + ")");
      t.delta_dia = dia;
    }
  }
  return out;
}

}  // namespace diamag
