#pragma once

#include <cstddef>
#include <vector>

#include "diamag/model.hpp"

namespace diamag {

enum class GridSpacing { linear, logarithmic };

// Strictly increasing positive angular frequencies, at least 8 samples.
// tail_exponent records the asymptotic decay power assumed when extrapolating
// a sampled quantity beyond the last grid point.
struct FrequencyGrid {
  std::vector<double> samples;
  GridSpacing spacing = GridSpacing::logarithmic;
  double tail_exponent = 2.0;
};

FrequencyGrid make_linear_grid(double omega_min, double omega_max, std::size_t n,
                               double tail_exponent = 2.0);
FrequencyGrid make_log_grid(double omega_min, double omega_max, std::size_t n,
                            double tail_exponent = 2.0);

// Throws std::invalid_argument on any violated grid invariant.
void validate_grid(const FrequencyGrid& grid);

enum class Quantity { chi, epsilon, mu, inv_mu, eps_mu };

struct ComplexSpectrum {
  FrequencyGrid grid;
  std::vector<complex> values;  // one per grid sample
  Quantity quantity = Quantity::chi;
};

// Evaluates the requested response on every grid point.
ComplexSpectrum sample_spectrum(const MediumModel& model, const FrequencyGrid& grid,
                                Quantity quantity);

}  // namespace diamag
