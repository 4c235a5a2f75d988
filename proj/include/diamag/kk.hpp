#pragma once

#include <span>

#include "diamag/grid.hpp"

// Numerical Kramers-Kronig transforms over the half-line,
//   Re chi(w) =  (2/pi) PV int_0^inf  w' Im chi(w') / (w'^2 - w^2) dw'
//   Im chi(w) = -(2/pi) PV int_0^inf  w  Re chi(w') / (w'^2 - w^2) dw'
// on sampled spectra, with principal-value singularity handling and
// low/high-frequency extrapolation beyond the grid.

namespace diamag {

enum class SingularityMethod {
  // Integrate [f(w') - f(w)] * kernel, using PV int_0^inf dw'/(w'^2-w^2) = 0;
  // exact for constant integrands and needs no pole-straddling quadrature.
  subtraction,
  // Drop the quadrature cells adjacent to the singular point and rely on the
  // near-cancellation of the kernel across it. Cruder; kept for comparison.
  exclusion_window,
};

struct KKScheme {
  SingularityMethod singularity_method = SingularityMethod::subtraction;
  double tail_exponent = 2.0;    // >= 1; Im chi extrapolated as A/w^(tail_exponent+1)
  double interior_margin = 0.1;  // fraction of grid points excluded at each end
};

// Resonance metadata: lets the transforms refuse grids that cannot resolve a
// linewidth near the evaluation point.
struct ResonanceHint {
  double omega_eg = 0.0;
  double gamma_e = 0.0;
};

// Reconstruct Re chi(omega_eval) from the imaginary parts of `spectrum`.
// Throws std::domain_error when omega_eval lies outside the interior region,
// or (with hints) when fewer than 4 grid points fall within +-4 gamma of an
// evaluation point that sits on a resonance.
double kk_real_from_imag(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                         double omega_eval, std::span<const ResonanceHint> hints = {});

// Mirror relation: reconstruct Im chi(omega_eval) from the real parts.
double kk_imag_from_real(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                         double omega_eval, std::span<const ResonanceHint> hints = {});

// chi(0) = (2/pi) int_0^inf Im chi(w')/w' dw'. No PV handling is needed at
// omega = 0 since Im chi vanishes linearly there. Throws std::domain_error
// when hints are given and the grid misses low-frequency coverage
// (omega_min > min omega_eg / 100).
double kk_static(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                 std::span<const ResonanceHint> hints = {});

struct KKResult {
  ComplexSpectrum reconstructed;  // both parts reconstructed on the interior grid
  double residual_norm = 0.0;     // max over parts of ||recon - ref||_inf / ||ref||_inf
};

// Reconstruct Re from Im and Im from Re at every interior grid point and
// compare against the input as reference.
KKResult kk_round_trip(const ComplexSpectrum& spectrum, const KKScheme& scheme,
                       std::span<const ResonanceHint> hints = {});

// Index range [first, last] of the interior region for a grid of n points.
std::pair<std::size_t, std::size_t> interior_range(std::size_t n, double margin);

// Hints for every transition of a model.
std::vector<ResonanceHint> resonance_hints(const MediumModel& model);

}  // namespace diamag
