#include <cmath>
#include <numbers>
#include <vector>

#include "blockade/classical_fp.hpp"
#include "blockade/effective_cavity.hpp"
#include "doctest.h"

using namespace blockade;

namespace {

const DispersionProfile kFlat = [](double) { return 0.0; };

DispersionProfile linear_profile(double s) {
  return [s](double x) { return s * x; };
}

double sampled_fwhm(const FPGeometry& g, const DispersionProfile& chi, double span) {
  std::vector<double> x;
  for (int i = -2000; i <= 2000; ++i) x.push_back(span * i / 2000.0);
  const TimeSeries t = intensity_spectrum(g, chi, x);
  return extract_fwhm(t.times, t.values);
}

}  // namespace

TEST_CASE("geometry validation") {
  FPGeometry g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.omega_cav() == doctest::Approx(2.0 * std::numbers::pi * kSpeedOfLight / 795e-9).epsilon(1e-6));
  g.r1 = 1.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.r1 = 0.995;
  g.t1 = 0.2;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.t1 = 0.1;
  g.l_m = 1.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("round-trip gain") {
  FPGeometry g;
  g.alpha_loss = 0.01;
  const double mag = g.r1 * g.r2 * std::exp(-0.01 * g.L);
  const std::complex<double> on = round_trip_gain(g, kFlat, 0.0);
  CHECK(on.real() == doctest::Approx(mag).epsilon(1e-15));
  CHECK(on.imag() == 0.0);
  for (double x : {-3e7, 1e5, 4.4e8}) {
    CHECK(std::abs(round_trip_gain(g, linear_profile(1e-12), x)) == doctest::Approx(mag).epsilon(1e-14));
  }
  // Phase of a linear profile, by independent arithmetic.
  const double s = 2e-13, x = 1.5e6;
  const double expected = x * g.L / kSpeedOfLight + (g.omega_cav() + x) * s * x * g.l_m / (2.0 * kSpeedOfLight);
  CHECK(-std::arg(round_trip_gain(g, linear_profile(s), x)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("empty-cavity Airy spectrum") {
  const FPGeometry g;
  const double fsr = 2.0 * std::numbers::pi * kSpeedOfLight / g.L;
  const double peak = g.t1 * g.t1 / ((1.0 - g.g_rt()) * (1.0 - g.g_rt()));
  const TimeSeries t = intensity_spectrum(g, kFlat, {-1e6, 0.0, 1e6, fsr, fsr + 1e6});
  CHECK(t.values[1] == doctest::Approx(peak).epsilon(1e-12));
  CHECK(t.values[0] < peak);
  CHECK(t.values[3] == doctest::Approx(peak).epsilon(1e-9));
  CHECK(t.values[4] == doctest::Approx(t.values[2]).epsilon(1e-6));
}

TEST_CASE("normal dispersion narrows the sampled peak") {
  const FPGeometry g;
  const double w0 = sampled_fwhm(g, kFlat, 2e7);
  CHECK(w0 == doctest::Approx(g.bare_linewidth()).epsilon(1e-3));
  CHECK(sampled_fwhm(g, linear_profile(1e-14), 2e7) < w0);
}

TEST_CASE("bare linewidth") {
  const FPGeometry g;
  const LinewidthResult r = narrowed_linewidth(g, kFlat);
  CHECK(r.delta_omega_prime == doctest::Approx(g.bare_linewidth()).epsilon(1e-3));
  CHECK(r.omega_plus == doctest::Approx(-r.omega_minus).epsilon(1e-9));
}

TEST_CASE("linear dispersion follows the first-order formula") {
  const FPGeometry g;
  for (double s : {1e-15, 1e-14, 1e-13}) {
    const double expected = g.bare_linewidth() / (1.0 + g.l_m / (2.0 * g.L) * g.omega_cav() * s);
    CHECK(narrowed_linewidth(g, linear_profile(s)).delta_omega_prime ==
          doctest::Approx(expected).epsilon(0.01));
  }
}

TEST_CASE("missing bracket is reported") {
  const FPGeometry g;
  CHECK_THROWS_AS(narrowed_linewidth(g, linear_profile(-1e-12)), NumericalError);
}

TEST_CASE("EIT dispersion narrows the linewidth") {
  const FPGeometry g;
  const NTypeEnsembleParams atoms;
  const double kappa = g.bare_linewidth();
  const DispersionProfile chi = eit_profile(atoms, g, kappa);
  const LinewidthResult r = narrowed_linewidth(g, chi);
  CHECK(chi(r.omega_plus) > 0.0);
  CHECK(chi(r.omega_minus) < 0.0);
  CHECK(r.delta_omega_prime < g.bare_linewidth());

  // Same narrowing as the quantum transmission sweep, within a factor of two.
  EffectiveCavityConfig cfg;
  cfg.eps_p = 0.01;
  cfg.fock_cutoff = 6;
  cfg.detuning_grid = geometric_grid(1e-6, 2e-3, 60);
  const double quantum = extract_fwhm(transmission_sweep(cfg));
  const double ratio = (r.delta_omega_prime / kappa) / quantum;
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}
