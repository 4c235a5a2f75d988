#include "diamag/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace diamag {

FrequencyGrid make_linear_grid(double omega_min, double omega_max, std::size_t n,
                               double tail_exponent) {
  FrequencyGrid g;
  g.spacing = GridSpacing::linear;
  g.tail_exponent = tail_exponent;
  g.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    g.samples[i] = omega_min + f * (omega_max - omega_min);
  }
  validate_grid(g);
  return g;
}

FrequencyGrid make_log_grid(double omega_min, double omega_max, std::size_t n,
                            double tail_exponent) {
  FrequencyGrid g;
  g.spacing = GridSpacing::logarithmic;
  g.tail_exponent = tail_exponent;
  g.samples.resize(n);
  const double l0 = std::log(omega_min), l1 = std::log(omega_max);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    g.samples[i] = std::exp(l0 + f * (l1 - l0));
  }
  g.samples.front() = omega_min;
  g.samples.back() = omega_max;
  validate_grid(g);
  return g;
}

void validate_grid(const FrequencyGrid& grid) {
  if (grid.samples.size() < 8)
    throw std::invalid_argument("frequency grid needs at least 8 samples");
  if (!(grid.tail_exponent >= 1.0))
    throw std::invalid_argument("tail_exponent must be >= 1");
  double prev = 0.0;
  for (double w : grid.samples) {
    if (!(w > prev) || !std::isfinite(w))
      throw std::invalid_argument("grid samples must be positive and strictly increasing");
    prev = w;
  }
}

ComplexSpectrum sample_spectrum(const MediumModel& model, const FrequencyGrid& grid,
                                Quantity quantity) {
  validate_grid(grid);
  ComplexSpectrum s;
  s.grid = grid;
  s.quantity = quantity;
  s.values.reserve(grid.samples.size());
  for (double w : grid.samples) {
    switch (quantity) {
      case Quantity::chi: s.values.push_back(susceptibility(model, w)); break;
      case Quantity::epsilon: s.values.push_back(permittivity(model, w)); break;
      case Quantity::mu: s.values.push_back(permeability(model, w)); break;
      case Quantity::inv_mu: s.values.push_back(inverse_permeability(model, w)); break;
      case Quantity::eps_mu:
        s.values.push_back(permittivity(model, w) * permeability(model, w));
        break;
    }
  }
  return s;
}

}  // namespace diamag
