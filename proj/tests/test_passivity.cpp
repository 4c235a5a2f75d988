#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "diamag/model.hpp"
#include "diamag/passivity.hpp"
#include "diamag/sampling.hpp"

using namespace diamag;

namespace {

MediumModel single(double w0, double g, double de, double dm, double dd, double dq,
                   double doct, double eta = 0.5) {
  MediumModel m;
  m.hierarchy_ratio = eta;
  m.transitions.push_back({w0, g, de, dm, dd, dq, doct});
  return m;
}

MediumModel bundled_diamagnetic() { return single(1.0, 0.05, 0.01, 0.0002, 0.002, 0.001, 0.003); }

}  // namespace

TEST_CASE("scan_bands: vacuum is a vacuous lossless pass") {
  const auto report = scan_bands(MediumModel{}, make_log_grid(1e-2, 1e2, 512));
  CHECK(report.lossless);
  CHECK(report.passivity_ok);
  CHECK(report.negative_imchi_bands.empty());
  CHECK(report.min_im_epsmu_value == 0.0);
}

TEST_CASE("scan_bands: paramagnetic media have no negative Im chi band") {
  const auto m = single(1.0, 0.05, 0.01, 0.004, 0, 0, 0);
  const auto grid = make_scan_grid(m);
  const auto report = scan_bands(m, grid);
  CHECK(report.negative_imchi_bands.empty());
  CHECK(report.passivity_ok);
  CHECK(!report.lossless);
  // dense oracle: Im chi >= 0 on the scan range
  for (double w : grid.samples) CHECK(susceptibility(m, w).imag() >= 0.0);
}

TEST_CASE("scan_bands: octopole-dominated medium") {
  const auto m = bundled_diamagnetic();
  const auto report = scan_bands(m, make_scan_grid(m));

  // one negative Im chi band, opening where delta_mdip + (dq - doct) w^2
  // crosses zero and clipped at the top of the scan
  REQUIRE(report.negative_imchi_bands.size() == 1);
  const auto band = report.negative_imchi_bands.front();
  const double wc = std::sqrt(0.0002 / 0.002);
  CHECK(band.omega_lo == doctest::Approx(wc).epsilon(1e-5));
  CHECK(band.omega_hi == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(band.omega_lo < 1.0);  // the band reaches the resonance

  // Im[eps mu] stays positive across the resonant band region, up to the
  // crossover w* where the reassigned w^2 octopole term outgrows the
  // electric absorption: w* = sqrt((de + dm)/(doct - dq))
  const double wstar = std::sqrt((0.01 + 0.0002) / 0.002);
  for (double w = band.omega_lo; w < 0.98 * wstar; w *= 1.02)
    CHECK((permittivity(m, w) * permeability(m, w)).imag() > 0.0);

  // beyond it the truncated multipole model is no longer passive
  CHECK(report.min_im_epsmu_value < 0.0);
  CHECK(report.min_im_epsmu_omega > wstar);
  CHECK(!report.passivity_ok);
  const double probe = 2.0 * wstar;
  CHECK((permittivity(m, probe) * permeability(m, probe)).imag() < 0.0);
}

TEST_CASE("scan_bands: negative bands require an octopole term") {
  std::mt19937_64 rng(47);
  RandomModelOptions opts;
  opts.octopole = false;
  opts.gamma_ratio_min = 5e-3;
  for (int i = 0; i < 40; ++i) {
    const auto m = random_model(rng, opts);
    const auto report = scan_bands(m, make_scan_grid(m));
    CHECK(report.negative_imchi_bands.empty());
    CHECK(report.passivity_ok);
  }
}

TEST_CASE("scan_bands: under-resolved grid is refused") {
  const auto m = single(1.0, 1e-3, 0.01, 0.001, 0, 0, 0);
  CHECK_THROWS_AS(scan_bands(m, make_log_grid(1e-3, 1e3, 512)), std::domain_error);
  CHECK_NOTHROW(scan_bands(m, make_scan_grid(m)));  // auto-resolved grid
}

TEST_CASE("im[eps mu] equals |mu|^2 im[eps/mu*] on scan points") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 10; ++i) {
    const auto m = random_model(rng);
    const auto grid = make_scan_grid(m, 512);
    for (double w : grid.samples) {
      const complex eps = permittivity(m, w);
      const complex mu = permeability(m, w);
      const complex inv = inverse_permeability(m, w);
      const double lhs = (eps * mu).imag();
      const double rhs = std::norm(mu) * (eps * std::conj(inv)).imag();
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1e-30}));
    }
  }
}

TEST_CASE("resonant bound: signs, regime check, counterexample") {
  // no octopole: rhs = de/(2 w gamma) > 0 and the bound holds; any magnetic
  // response at all makes the inequality strict
  auto m = single(1.0, 0.01, 0.01, 1e-4, 0, 0, 0);
  auto rb = resonant_bound(m, 0);
  CHECK(rb.rhs == doctest::Approx(0.01 / 0.02).epsilon(1e-12));
  CHECK(rb.satisfied);

  // hierarchy-obeying: doct w^2 = 0.5 de, sum-rule complete via delta_dia
  m = single(1.0, 0.01, 0.01, 0.0001, 0.005, 0, 0.005);
  rb = resonant_bound(m, 0);
  CHECK(rb.rhs > 0.0);
  CHECK(rb.lhs > rb.rhs);
  CHECK(rb.satisfied);

  // hierarchy-violating model built directly (never validated):
  // doct w^2 = 2 de drives the bound negative
  MediumModel violating;
  violating.transitions.push_back({1.0, 0.01, 0.01, 0, 0, 0, 0.02});
  rb = resonant_bound(violating, 0);
  CHECK(rb.rhs < 0.0);
  CHECK(!rb.satisfied);

  // outside the narrow-resonance regime the bound is not claimed
  m = single(1.0, 0.05, 0.01, 0, 0, 0, 0);
  CHECK_THROWS_AS(resonant_bound(m, 0), std::domain_error);
  CHECK_THROWS_AS(resonant_bound(m, 3), std::invalid_argument);
}

TEST_CASE("resonant bound holds across random narrow-resonance models") {
  std::mt19937_64 rng(59);
  RandomModelOptions opts;
  opts.gamma_ratio_min = 1e-3;
  opts.gamma_ratio_max = 1.0 / 50.0;
  for (int i = 0; i < 100; ++i) {
    const auto m = random_model(rng, opts);
    for (std::size_t j = 0; j < m.transitions.size(); ++j) {
      const auto rb = resonant_bound(m, j);
      CHECK(rb.rhs > 0.0);
      CHECK(rb.lhs > rb.rhs);
    }
  }
}

TEST_CASE("sum rule report") {
  const auto vac = sum_rule(MediumModel{});
  CHECK(vac.residual == 0.0);
  CHECK(vac.complete);

  // delta_dia/w^2 = 0.001, quad = 0.0002, oct = 0.0012: residual 0
  auto m = single(1.0, 0.05, 0.02, 0, 0.001, 0.0002, 0.0012);
  auto r = sum_rule(m);
  CHECK(std::abs(r.residual) < 1e-18);
  CHECK(r.complete);
  REQUIRE(r.per_transition_terms.size() == 1);

  // oct = 0.001 leaves +0.0002
  m = single(1.0, 0.05, 0.02, 0, 0.001, 0.0002, 0.001);
  r = sum_rule(m);
  CHECK(r.residual == doctest::Approx(0.0002).epsilon(1e-12));
  CHECK(!r.complete);

  double sum = 0.0;
  for (double term : r.per_transition_terms) sum += term;
  CHECK(sum == r.residual);
}

TEST_CASE("complete_model: fixed point, octopole arithmetic, feasibility") {
  // already complete: returned unchanged
  const auto complete = single(1.0, 0.05, 0.02, 0, 0.001, 0.0002, 0.0012);
  const auto same = complete_model(complete, CompletionStrategy::adjust_octopole);
  CHECK(same.transitions[0].delta_oct == complete.transitions[0].delta_oct);

  // delta_dia/w^2 = 0.001, quad = oct = 0 -> oct becomes 0.001
  auto m = single(1.0, 0.05, 0.02, 0, 0.001, 0, 0);
  const auto adjusted = complete_model(m, CompletionStrategy::adjust_octopole);
  CHECK(adjusted.transitions[0].delta_oct == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(sum_rule(adjusted).complete);
  CHECK(sum_rule(adjusted).residual == 0.0);

  // diamagnetic strategy mirrors it
  m = single(1.0, 0.05, 0.02, 0, 0, 0.0002, 0.0012);
  const auto dia = complete_model(m, CompletionStrategy::adjust_diamagnetic);
  CHECK(dia.transitions[0].delta_dia == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(sum_rule(dia).complete);

  // infeasible: oct < quad would need a negative delta_dia
  m = single(1.0, 0.05, 0.02, 0, 0.001, 0.0012, 0.0002);
  CHECK_THROWS_AS(complete_model(m, CompletionStrategy::adjust_diamagnetic),
                  std::domain_error);
}

TEST_CASE("completed random models feed the downstream pipeline") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    auto m = random_model(rng);
    // perturb the octopole strengths so the model needs completion
    for (auto& t : m.transitions) t.delta_oct *= 0.5;
    for (auto strategy :
         {CompletionStrategy::adjust_octopole, CompletionStrategy::adjust_diamagnetic}) {
      MediumModel fixed;
      try {
        fixed = complete_model(m, strategy);
      } catch (const std::domain_error&) {
        continue;  // strategy infeasible for this draw
      }
      const auto report = sum_rule(fixed);
      CHECK(report.complete);
      CHECK(std::abs(report.residual) <= 1e-13 * std::max(1.0, std::abs(static_chi(fixed))));
    }
  }
}
