#include "diamag/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace diamag {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double log_uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

MediumModel random_model(std::mt19937_64& rng, const RandomModelOptions& opts) {
  if (opts.min_transitions < 1 || opts.max_transitions < opts.min_transitions)
    throw std::invalid_argument("random_model: bad transition count range");
  MediumModel model;
  model.hierarchy_ratio = opts.eta;
  const int span = opts.max_transitions - opts.min_transitions + 1;
  const int count = opts.min_transitions +
                    static_cast<int>(uniform01(rng) * static_cast<double>(span)) % span;
  for (int i = 0; i < count; ++i) {
    MultipoleTransition t;
    t.omega_eg = opts.omega_base * std::pow(10.0, uniform01(rng) * opts.omega_decades);
    t.gamma_e = t.omega_eg * uniform_in(rng, opts.gamma_ratio_min, opts.gamma_ratio_max);
    const double drive = 2.0 * t.gamma_e * t.omega_eg;  // peak response normalisation
    t.delta_edip = log_uniform_in(rng, opts.peak_min, opts.peak_max) * drive;
    t.delta_mdip = log_uniform_in(rng, opts.peak_min, opts.peak_max) * drive *
                   log_uniform_in(rng, 1e-2, 1.0);
    if (opts.octopole) {
      const double w2 = t.omega_eg * t.omega_eg;
      t.delta_oct = opts.eta * t.delta_edip / w2 * log_uniform_in(rng, 1e-3, 1.0);
      t.delta_quad = t.delta_oct * log_uniform_in(rng, 1e-3, 1.0);
      t.delta_dia = w2 * (t.delta_oct - t.delta_quad);  // sum-rule complete per transition
    }
    model.transitions.push_back(t);
  }
  return model;
}

}  // namespace diamag
