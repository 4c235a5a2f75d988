#include "diamag/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace diamag {

namespace {

// Shared resonance denominator, D(w) = w_eg^2 - w^2 - 2 i w gamma.
// D(-w) = conj(D(w)) for real w, which carries the reality symmetry of every
// response function built on it.
inline complex denom(const MultipoleTransition& t, double omega) {
  return {t.omega_eg * t.omega_eg - omega * omega, -2.0 * omega * t.gamma_e};
}

}  // namespace

std::string validation_error(const MediumModel& model) {
  if (!(model.hierarchy_ratio > 0.0) || !(model.hierarchy_ratio < 1.0))
    return "hierarchy_ratio must lie in (0,1)";
  for (std::size_t i = 0; i < model.transitions.size(); ++i) {
    const auto& t = model.transitions[i];
    const std::string at = " (transition " + std::to_string(i) + ")";
    if (!(t.omega_eg > 0.0) || !std::isfinite(t.omega_eg))
      return "omega_eg must be positive" + at;
    if (!(t.gamma_e > 0.0) || !std::isfinite(t.gamma_e))
      return "gamma_e must be positive" + at;
    if (!(t.gamma_e < t.omega_eg))
      return "gamma_e must be below omega_eg (underdamped resonance)" + at;
    for (double d : {t.delta_edip, t.delta_mdip, t.delta_dia, t.delta_quad, t.delta_oct}) {
      if (d < 0.0 || !std::isfinite(d)) return "transition strengths must be nonnegative" + at;
    }
    if (t.delta_oct > 0.0) {
      if (!(t.delta_edip > 0.0))
        return "delta_oct requires a nonzero delta_edip" + at;
      if (t.delta_oct * t.omega_eg * t.omega_eg > model.hierarchy_ratio * t.delta_edip)
        return "multipole hierarchy violated: delta_oct*omega_eg^2 > eta*delta_edip" + at;
    }
  }
  return {};
}

const MediumModel& validate_model(const MediumModel& model) {
  if (auto err = validation_error(model); !err.empty()) throw std::invalid_argument(err);
  return model;
}

complex permittivity_k(const MediumModel& model, double omega, double k) {
  complex eps{1.0, 0.0};
  const double k2 = k * k;
  for (const auto& t : model.transitions)
    eps += (t.delta_edip + k2 * (t.delta_quad - t.delta_oct)) / denom(t, omega);
  return eps;
}

complex inverse_permeability_spatial(const MediumModel& model, double omega) {
  complex inv{1.0, 0.0};
  for (const auto& t : model.transitions)
    inv += t.delta_dia / (t.omega_eg * t.omega_eg) - t.delta_mdip / denom(t, omega);
  return inv;
}

complex permittivity(const MediumModel& model, double omega) {
  complex eps{1.0, 0.0};
  for (const auto& t : model.transitions) eps += t.delta_edip / denom(t, omega);
  return eps;
}

complex inverse_permeability(const MediumModel& model, double omega) {
  complex inv{1.0, 0.0};
  const double w2 = omega * omega;
  for (const auto& t : model.transitions) {
    inv += t.delta_dia / (t.omega_eg * t.omega_eg) -
           (t.delta_mdip + (t.delta_quad - t.delta_oct) * w2) / denom(t, omega);
  }
  return inv;
}

complex permeability(const MediumModel& model, double omega) {
  const complex inv = inverse_permeability(model, omega);
  if (std::abs(inv) < 1e-12)
    throw std::domain_error("degenerate model: |1/mu| < 1e-12 at omega = " +
                            std::to_string(omega));
  return 1.0 / inv;
}

complex susceptibility(const MediumModel& model, double omega) {
  return 1.0 - inverse_permeability(model, omega);
}

double static_chi(const MediumModel& model) {
  double chi0 = 0.0;
  for (const auto& t : model.transitions)
    chi0 -= (t.delta_dia - t.delta_mdip) / (t.omega_eg * t.omega_eg);
  return chi0;
}

double sum_rule_residual(const MediumModel& model) {
  double r = 0.0;
  for (const auto& t : model.transitions)
    r += t.delta_dia / (t.omega_eg * t.omega_eg) + t.delta_quad - t.delta_oct;
  return r;
}

double static_chi_multipole_form(const MediumModel& model) {
  double scale = 1.0;
  for (const auto& t : model.transitions) {
    scale += std::abs(t.delta_dia) / (t.omega_eg * t.omega_eg) + std::abs(t.delta_quad) +
             std::abs(t.delta_oct);
  }
  const double residual = sum_rule_residual(model);
  if (std::abs(residual) > 1e-10 * scale)
    throw std::domain_error("sum rule violated (residual " + std::to_string(residual) +
                            "); the multipole form of chi(0) does not apply");
  double chi0 = 0.0;
  for (const auto& t : model.transitions)
    chi0 -= t.delta_oct - t.delta_quad - t.delta_mdip / (t.omega_eg * t.omega_eg);
  return chi0;
}

complex transverse_current_coefficient(complex eps, complex inv_mu, double omega, double k) {
  return (eps - 1.0) * (omega * omega) - (inv_mu - 1.0) * (k * k);
}

DispersionForms reassign_dispersion(const MediumModel& model) {
  return {
      [m = model](double omega) { return permittivity(m, omega); },
      [m = model](double omega) { return inverse_permeability(m, omega); },
  };
}

double hydrogen_diamagnetic_moment(double b_field, double mean_rho2, double e2_over_2m) {
  return -e2_over_2m * mean_rho2 * b_field;
}

namespace {

// <r^n> over the 1s density |psi|^2 = e^{-2r/a0}/(pi a0^3), reduced to the
// radial integral (4/a0^3) int_0^inf r^{n+2} e^{-2r/a0} dr, by composite
// Simpson on [0, 60 a0].
double hydrogen_radial_moment(double a0, int n) {
  const std::size_t cells = 1 << 14;
  const double rmax = 60.0 * a0;
  const double h = rmax / static_cast<double>(cells);
  auto f = [&](double r) { return std::pow(r, n + 2) * std::exp(-2.0 * r / a0); };
  double sum = f(0.0) + f(rmax);
  for (std::size_t i = 1; i < cells; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(h * i);
  return 4.0 / (a0 * a0 * a0) * sum * h / 3.0;
}

}  // namespace

double hydrogen_mean_r_squared(double bohr_radius) {
  return hydrogen_radial_moment(bohr_radius, 2);
}

double hydrogen_mean_rho_squared(double bohr_radius) {
  // x^2 + y^2 averages to 2/3 of r^2 over the spherically symmetric density.
  return 2.0 / 3.0 * hydrogen_radial_moment(bohr_radius, 2);
}

}  // namespace diamag
