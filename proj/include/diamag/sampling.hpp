#pragma once

#include <cstdint>
#include <random>

#include "diamag/model.hpp"

namespace diamag {

// Documented defaults for randomized property sweeps: omega_eg log-uniform
// over `omega_decades`, gamma_e/omega_eg uniform in [gamma_ratio_min, max],
// strengths log-uniform through a peak-response scale with the hierarchy
// bound enforced, then sum-rule completed per transition
// (delta_dia = omega_eg^2 (delta_oct - delta_quad)).
struct RandomModelOptions {
  int min_transitions = 1;
  int max_transitions = 3;
  double omega_base = 1.0;
  double omega_decades = 2.0;
  double gamma_ratio_min = 1e-3;
  double gamma_ratio_max = 1e-1;
  // peak |chi_e| and |eps_e - 1| scale: delta = peak * 2 gamma omega_eg
  double peak_min = 1e-4;
  double peak_max = 5e-2;
  double eta = 0.5;
  bool octopole = true;  // false: magnetic-dipole transitions only
};

MediumModel random_model(std::mt19937_64& rng, const RandomModelOptions& opts = {});

// Uniform doubles from raw 64-bit draws, identical across standard libraries.
double uniform01(std::mt19937_64& rng);
double uniform_in(std::mt19937_64& rng, double lo, double hi);
double log_uniform_in(std::mt19937_64& rng, double lo, double hi);

}  // namespace diamag
