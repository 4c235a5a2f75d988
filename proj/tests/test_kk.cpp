#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "diamag/grid.hpp"
#include "diamag/kk.hpp"
#include "diamag/model.hpp"
#include "diamag/sampling.hpp"

using namespace diamag;

namespace {

MediumModel single(double w0, double g, double de, double dm, double dd, double dq,
                   double doct) {
  MediumModel m;
  m.transitions.push_back({w0, g, de, dm, dd, dq, doct});
  return m;
}

ComplexSpectrum chi_on_log_grid(const MediumModel& m, double lo, double hi, std::size_t n) {
  return sample_spectrum(m, make_log_grid(lo, hi, n), Quantity::chi);
}

}  // namespace

TEST_CASE("zero input transforms to zero output") {
  ComplexSpectrum zero;
  zero.grid = make_log_grid(1e-3, 1e3, 256);
  zero.values.assign(256, {0.0, 0.0});
  const KKScheme scheme;
  CHECK(kk_real_from_imag(zero, scheme, 1.0) == 0.0);
  CHECK(kk_imag_from_real(zero, scheme, 1.0) == 0.0);
  CHECK(kk_static(zero, scheme) == 0.0);
  const auto rt = kk_round_trip(zero, scheme);
  CHECK(rt.residual_norm == 0.0);
}

TEST_CASE("magnetic-dipole line: real part reconstructed off resonance within 1%") {
  const auto m = single(1.0, 0.05, 0.0, 0.01, 0, 0, 0);
  const auto spec = chi_on_log_grid(m, 1e-3, 1e3, 4096);
  const KKScheme scheme;
  const double rec = kk_real_from_imag(spec, scheme, 0.5);
  const double ref = susceptibility(m, 0.5).real();
  CHECK(std::abs(rec - ref) <= 0.01 * std::abs(ref));

  // and the reconstruction error shrinks when the grid is doubled
  const auto fine = chi_on_log_grid(m, 1e-3, 1e3, 8192);
  const double rec2 = kk_real_from_imag(fine, scheme, 0.5);
  CHECK(std::abs(rec2 - ref) < std::abs(rec - ref));
}

TEST_CASE("imaginary part reconstructed at resonance within 1%") {
  const auto m = single(1.0, 0.05, 0.0, 0.01, 0, 0, 0);
  const auto spec = chi_on_log_grid(m, 1e-3, 1e3, 4096);
  const KKScheme scheme;
  const double rec = kk_imag_from_real(spec, scheme, 1.0);
  const double ref = susceptibility(m, 1.0).imag();
  CHECK(std::abs(rec - ref) <= 0.01 * std::abs(ref));
}

TEST_CASE("constant real part contributes nothing") {
  // only the power-law tail extrapolation beyond the grid perturbs the exact
  // cancellation, so give it room
  ComplexSpectrum spec;
  spec.grid = make_log_grid(1e-3, 1e3, 2048);
  spec.values.assign(2048, {0.25, 0.0});
  const KKScheme scheme;
  const double rec = kk_imag_from_real(spec, scheme, 1.0);
  CHECK(std::abs(rec) < 1e-3 * 0.25);
}

TEST_CASE("octopole band: reconstructed Im chi is negative where the model's is") {
  const auto m = single(1.0, 0.05, 0.01, 0.0002, 0.002, 0.001, 0.003);
  const auto spec = chi_on_log_grid(m, 1e-3, 1e3, 4096);
  const KKScheme scheme;
  for (double w : {0.7, 1.0, 1.5, 3.0}) {
    REQUIRE(susceptibility(m, w).imag() < 0.0);
    CHECK(kk_imag_from_real(spec, scheme, w) < 0.0);
  }
}

TEST_CASE("static transform: paramagnetic positive, diamagnetic negative") {
  const KKScheme scheme;

  const auto para = single(1.0, 0.05, 0.01, 0.004, 0, 0, 0);
  const auto spec_p = chi_on_log_grid(para, 1e-3, 1e3, 4096);
  const double chi0_p = kk_static(spec_p, scheme, resonance_hints(para));
  CHECK(chi0_p > 0.0);
  CHECK(std::abs(chi0_p - static_chi(para)) <= 0.01 * std::abs(static_chi(para)));

  const auto dia = single(1.0, 0.05, 0.01, 0.0002, 0.002, 0.001, 0.003);
  const auto spec_d = chi_on_log_grid(dia, 1e-3, 1e3, 4096);
  const double chi0_d = kk_static(spec_d, scheme, resonance_hints(dia));
  CHECK(chi0_d < 0.0);
  CHECK(std::abs(chi0_d - static_chi(dia)) <= 0.02 * std::abs(static_chi(dia)));
}

TEST_CASE("round trip on a three-transition model") {
  MediumModel m;
  m.transitions.push_back({0.8, 0.02, 0.02, 0.0004, 0.001792, 0.0012, 0.004});
  m.transitions.push_back({2.0, 0.1, 0.015, 0.003, 0.0012, 0.0002, 0.0005});
  m.transitions.push_back({5.0, 0.35, 0.05, 0.001, 0.0075, 0.0001, 0.0004});
  validate_model(m);

  // 4-decade grid around the resonances
  const auto spec = chi_on_log_grid(m, 0.8 / 100.0, 5.0 * 100.0, 4096);
  const KKScheme scheme;
  const auto rt = kk_round_trip(spec, scheme, resonance_hints(m));
  CHECK(rt.residual_norm < 0.02);
  CHECK(rt.reconstructed.values.size() == rt.reconstructed.grid.samples.size());

  // residual decreases under refinement
  const auto fine = chi_on_log_grid(m, 0.8 / 100.0, 5.0 * 100.0, 8192);
  CHECK(kk_round_trip(fine, scheme, resonance_hints(m)).residual_norm < rt.residual_norm);

  // shrinking the excluded margin cannot improve the accuracy claim
  KKScheme tighter = scheme;
  tighter.interior_margin = 0.05;
  CHECK(kk_round_trip(spec, tighter).residual_norm >= rt.residual_norm);
}

TEST_CASE("transform is linear in the spectrum") {
  const auto m1 = single(1.0, 0.05, 0.0, 0.01, 0, 0, 0);
  const auto m2 = single(3.0, 0.2, 0.0, 0.002, 0, 0, 0);
  const auto g = make_log_grid(1e-3, 1e3, 1024);
  const auto s1 = sample_spectrum(m1, g, Quantity::chi);
  const auto s2 = sample_spectrum(m2, g, Quantity::chi);
  const double a = 2.5, b = -0.75;
  ComplexSpectrum mix;
  mix.grid = g;
  for (std::size_t i = 0; i < g.samples.size(); ++i)
    mix.values.push_back(a * s1.values[i] + b * s2.values[i]);
  const KKScheme scheme;
  for (double w : {0.5, 1.0, 2.0}) {
    const double lhs = kk_real_from_imag(mix, scheme, w);
    const double rhs =
        a * kk_real_from_imag(s1, scheme, w) + b * kk_real_from_imag(s2, scheme, w);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
  }
}

TEST_CASE("model spectra satisfy the dispersion relations under refinement") {
  std::mt19937_64 rng(31);
  RandomModelOptions opts;
  opts.gamma_ratio_min = 2e-2;  // resolvable on the grids below
  for (int i = 0; i < 5; ++i) {
    const auto m = random_model(rng, opts);
    double lo = m.transitions.front().omega_eg, hi = lo;
    for (const auto& t : m.transitions) {
      lo = std::min(lo, t.omega_eg);
      hi = std::max(hi, t.omega_eg);
    }
    const KKScheme scheme;
    double prev = 1e9;
    for (std::size_t n : {1024u, 2048u, 4096u}) {
      const auto spec = chi_on_log_grid(m, lo / 1e3, hi * 1e3, n);
      const double r = kk_round_trip(spec, scheme, resonance_hints(m)).residual_norm;
      CHECK(r < prev);
      prev = r;
    }
    CHECK(prev < 5e-3);
  }
}

TEST_CASE("evaluation point and coverage errors") {
  const auto m = single(1.0, 0.05, 0.0, 0.01, 0, 0, 0);
  const auto spec = chi_on_log_grid(m, 1e-3, 1e3, 512);
  const KKScheme scheme;
  CHECK_THROWS_AS(kk_real_from_imag(spec, scheme, 1.5e-3), std::domain_error);
  CHECK_THROWS_AS(kk_real_from_imag(spec, scheme, 900.0), std::domain_error);

  // under-resolved linewidth with metadata supplied
  const auto narrow = single(1.0, 1e-4, 0.0, 0.01, 0, 0, 0);
  const auto nspec = chi_on_log_grid(narrow, 1e-3, 1e3, 512);
  const auto hints = resonance_hints(narrow);
  CHECK_THROWS_AS(kk_real_from_imag(nspec, scheme, 1.0, hints), std::domain_error);
  CHECK_NOTHROW(kk_real_from_imag(nspec, scheme, 1.0));  // no metadata, no refusal

  // static transform needs low-frequency coverage
  const auto highspec = chi_on_log_grid(m, 0.5, 1e3, 512);
  CHECK_THROWS_AS(kk_static(highspec, scheme, resonance_hints(m)), std::domain_error);

  // bad scheme parameters
  KKScheme bad;
  bad.tail_exponent = 0.5;
  CHECK_THROWS_AS(kk_static(spec, bad), std::invalid_argument);
  bad = KKScheme{};
  bad.interior_margin = 0.5;
  CHECK_THROWS_AS(kk_round_trip(spec, bad), std::invalid_argument);
}

TEST_CASE("exclusion window is a usable but cruder prescription") {
  const auto m = single(1.0, 0.05, 0.0, 0.01, 0, 0, 0);
  const auto spec = chi_on_log_grid(m, 1e-3, 1e3, 4096);
  KKScheme sub;
  KKScheme excl;
  excl.singularity_method = SingularityMethod::exclusion_window;
  const double ref = susceptibility(m, 0.5).real();
  const double e_sub = std::abs(kk_real_from_imag(spec, sub, 0.5) - ref);
  const double e_excl = std::abs(kk_real_from_imag(spec, excl, 0.5) - ref);
  CHECK(e_excl <= 0.05 * std::abs(ref));
  CHECK(e_sub <= e_excl);
}
