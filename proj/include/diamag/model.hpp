#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

// Multipole dispersion model for an isotropic magneto-dielectric medium.
// Natural units throughout: eps0 = mu0 = c = 1. Strengths are opaque positive
// parameters; no attempt is made to derive them from matrix elements.

namespace diamag {

using complex = std::complex<double>;

// One excited state: resonance parameters and the five transition strengths.
// delta_edip, delta_mdip, delta_dia carry units of frequency^2; delta_quad and
// delta_oct are dimensionless and multiply k^2 (spatial form) or omega^2
// (reassigned form).
struct MultipoleTransition {
  double omega_eg = 0.0;   // resonance angular frequency, > 0
  double gamma_e = 0.0;    // half-linewidth; 2*gamma_e is the excited-state linewidth
  double delta_edip = 0.0;
  double delta_mdip = 0.0;
  double delta_dia = 0.0;
  double delta_quad = 0.0;
  double delta_oct = 0.0;
};

struct MediumModel {
  std::vector<MultipoleTransition> transitions;
  // Bound on the octopole strength relative to dipole:
  // delta_oct * omega_eg^2 <= hierarchy_ratio * delta_edip per transition.
  double hierarchy_ratio = 0.5;
};

// Empty string when the model satisfies every invariant, otherwise a message
// naming the first violated invariant and the transition index.
std::string validation_error(const MediumModel& model);

// Returns its argument unchanged; throws std::invalid_argument with the
// validation_error message otherwise.
const MediumModel& validate_model(const MediumModel& model);

// Spatial-dispersion form: quadrupole/octopole response sits in the
// permittivity with explicit k^2 factors, and the inverse permeability keeps
// only the diamagnetic and magnetic-dipole terms.
complex permittivity_k(const MediumModel& model, double omega, double k);
complex inverse_permeability_spatial(const MediumModel& model, double omega);

// Reassigned (k-independent) forms: the k^2 quadrupole/octopole terms of the
// permittivity become +-omega^2 terms of the inverse permeability, leaving the
// transverse current unchanged.
complex permittivity(const MediumModel& model, double omega);
complex inverse_permeability(const MediumModel& model, double omega);

// 1 / inverse_permeability; throws std::domain_error when |1/mu| < 1e-12
// (degenerate model outside the weak-response regime).
complex permeability(const MediumModel& model, double omega);

// Magnetic susceptibility chi = 1 - 1/mu, so M(omega) = chi(omega) B(omega).
complex susceptibility(const MediumModel& model, double omega);

// chi(0) = -sum_e (delta_dia - delta_mdip)/omega_eg^2. Exactly real.
double static_chi(const MediumModel& model);

// chi(0) rewritten through the high-frequency sum rule:
// -sum_e (delta_oct - delta_quad - delta_mdip/omega_eg^2).
// Requires the sum rule residual to be below its tolerance, otherwise the two
// forms disagree and a std::domain_error is thrown.
double static_chi_multipole_form(const MediumModel& model);

// sum_e (delta_dia/omega_eg^2 + delta_quad - delta_oct); zero iff the
// permeability tends to unity at infinite frequency.
double sum_rule_residual(const MediumModel& model);

// Coefficient of the vector potential in the transverse bound current,
// j_perp = [(eps - 1) omega^2 - (1/mu - 1) k^2] A  (natural units).
complex transverse_current_coefficient(complex eps, complex inv_mu, double omega, double k);

// The reassignment step as a pair of evaluators: epsilon loses its k^2 terms,
// the inverse permeability gains the +-omega^2 quadrupole/octopole terms.
struct DispersionForms {
  std::function<complex(double)> epsilon;  // omega only
  std::function<complex(double)> inv_mu;
};
DispersionForms reassign_dispersion(const MediumModel& model);

// Induced magnetic dipole moment of a bound electron in a static field:
// -(e^2/2m) <x^2+y^2> B, with e^2/2m supplied as a single prefactor.
double hydrogen_diamagnetic_moment(double b_field, double mean_rho2, double e2_over_2m);

// <x^2+y^2> and <r^2> over the hydrogen 1s density, by radial quadrature.
double hydrogen_mean_rho_squared(double bohr_radius = 1.0);
double hydrogen_mean_r_squared(double bohr_radius = 1.0);

}  // namespace diamag
