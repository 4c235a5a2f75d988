#pragma once

#include <cstddef>
#include <vector>

#include "diamag/grid.hpp"

// Spectral passivity and sum-rule diagnostics: negative Im chi bands, the
// global minimum of Im[eps mu], the resonant causality bound, and the
// high-frequency sum rule with model completion.

namespace diamag {

struct Band {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
};

struct BandReport {
  std::vector<Band> negative_imchi_bands;  // disjoint, sorted, clipped to scan range
  double min_im_epsmu_omega = 0.0;
  double min_im_epsmu_value = 0.0;
  bool passivity_ok = false;  // min Im[eps mu] > -1e-14 * scale over the scan
  bool lossless = false;      // vacuum: Im[eps mu] identically zero, vacuous pass
};

// Scans Im chi and Im[eps mu] over the union of `grid` and +-10 gamma_e
// windows (64 points each) around every resonance. Band edges are refined by
// bisection to relative width 1e-6; the Im[eps mu] minimum by golden-section.
// Requires the grid to resolve every linewidth (>= 8 points per gamma_e
// within the grid's span); throws std::domain_error otherwise.
BandReport scan_bands(const MediumModel& model, const FrequencyGrid& grid);

// Default scan grid: logarithmic, spanning [min omega_eg/1e3, max omega_eg*1e3].
// n = 0 picks the point count that resolves the narrowest linewidth.
FrequencyGrid make_scan_grid(const MediumModel& model, std::size_t n = 0);

struct ResonantBound {
  double lhs = 0.0;  // Im[eps/mu*] at omega_eg, from the full spectra
  double rhs = 0.0;  // (delta_edip - delta_oct omega_eg^2) / (2 omega_eg gamma_e)
  bool satisfied = false;  // lhs > rhs > 0
};

// Narrow-resonance causality bound at transition `index`. Requires
// gamma_e <= omega_eg/50; throws std::domain_error outside that regime.
ResonantBound resonant_bound(const MediumModel& model, std::size_t index);

struct SumRuleReport {
  double residual = 0.0;
  std::vector<double> per_transition_terms;  // delta_dia/w^2 + delta_quad - delta_oct
  double tolerance = 0.0;                    // 1e-10 * max(1, sum of |terms|)
  bool complete = false;
};

SumRuleReport sum_rule(const MediumModel& model);

enum class CompletionStrategy { adjust_octopole, adjust_diamagnetic };

// Returns a model with sum-rule residual zero up to rounding.
//   adjust_octopole:    delta_oct  <- delta_quad + delta_dia/omega_eg^2
//   adjust_diamagnetic: delta_dia  <- omega_eg^2 (delta_oct - delta_quad)
// Throws std::domain_error when the adjustment would force a negative
// strength (strategy infeasible for this model).
MediumModel complete_model(const MediumModel& model, CompletionStrategy strategy);

}  // namespace diamag
