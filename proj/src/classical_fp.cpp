// Copyright 2026 The blockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blockade/classical_fp.hpp"

#include <cmath>
#include <numbers>

namespace blockade {

void FPGeometry::validate() const {
  if (!(r1 > 0.0 && r1 < 1.0 && r2 > 0.0 && r2 < 1.0)) {
    throw ConfigError("FPGeometry: mirror reflectivities must lie in (0, 1)");
  }
  if (!(t1 >= 0.0) || r1 * r1 + t1 * t1 > 1.0 + 1e-12) {
    throw ConfigError("FPGeometry: r1^2 + t1^2 must not exceed 1");
  }
  if (!(l_m > 0.0 && L >= l_m)) throw ConfigError("FPGeometry: need L >= l_m > 0");
  if (!(alpha_loss >= 0.0)) throw ConfigError("FPGeometry: alpha_loss must be >= 0");
  if (q < 1) throw ConfigError("FPGeometry: q must be >= 1");
}

double FPGeometry::omega_cav() const {
  return static_cast<double>(q) * 2.0 * std::numbers::pi * kSpeedOfLight / L;
}

double FPGeometry::g_rt() const { return r1 * r2 * std::exp(-alpha_loss * L); }

double FPGeometry::bare_linewidth() const {
  const double g = g_rt();
  return 4.0 * kSpeedOfLight / L * std::asin((1.0 - g) / (2.0 * std::sqrt(g)));
}

double round_trip_phase(const FPGeometry& geom, const DispersionProfile& chi, double x) {
  const double c = kSpeedOfLight;
  return x * geom.L / c + (geom.omega_cav() + x) * chi(x) * geom.l_m / (2.0 * c);
}

std::complex<double> round_trip_gain(const FPGeometry& geom, const DispersionProfile& chi,
                                     double x) {
  return std::polar(geom.g_rt(), -round_trip_phase(geom, chi, x));
}

TimeSeries intensity_spectrum(const FPGeometry& geom, const DispersionProfile& chi,
                              const std::vector<double>& offsets) {
  geom.validate();
  const double g = geom.g_rt();
  TimeSeries out;
  out.times = offsets;
  out.values.reserve(offsets.size());
  for (double x : offsets) {
    const double s = std::sin(0.5 * round_trip_phase(geom, chi, x));
    out.values.push_back(geom.t1 * geom.t1 / ((1.0 - g) * (1.0 - g) + 4.0 * g * s * s));
  }
  return out;
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  const double tol = 1e-12 * std::max(std::abs(lo), std::abs(hi));
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Innermost crossing: scan outward from resonance on a geometric grid and
// bisect the first bracket.
double half_point(const FPGeometry& geom, const DispersionProfile& chi, double target,
                  double window) {
  auto f = [&](double x) { return 0.5 * round_trip_phase(geom, chi, x) - target; };
  constexpr int kScan = 400;
  const double f0 = f(0.0);
  for (int attempt = 0; attempt < 2; ++attempt) {
    double prev = 0.0;
    for (int k = 0; k <= kScan; ++k) {
      const double x = window * std::pow(1e-9, 1.0 - static_cast<double>(k) / kScan);
      if ((f(x) < 0.0) != (f0 < 0.0)) return bisect(f, prev, x);
      prev = x;
    }
    window *= 10.0;
  }
  throw NumericalError("narrowed_linewidth: no bracketed half-intensity point");
}

}  // namespace

LinewidthResult narrowed_linewidth(const FPGeometry& geom, const DispersionProfile& chi) {
  geom.validate();
  const double g = geom.g_rt();
  const double s = std::asin((1.0 - g) / (2.0 * std::sqrt(g)));
  const double w = geom.bare_linewidth();
  LinewidthResult out;
  out.omega_plus = half_point(geom, chi, s, w);
  out.omega_minus = half_point(geom, chi, -s, -w);
  out.delta_omega_prime = out.omega_plus - out.omega_minus;
  return out;
}

DispersionProfile eit_profile(const NTypeEnsembleParams& atoms, const FPGeometry& geom,
                              double kappa_phys) {
  atoms.validate();
  geom.validate();
  if (!(kappa_phys > 0.0)) throw ConfigError("eit_profile: kappa_phys must be > 0");
  const double scale = -2.0 * geom.L * kappa_phys / (geom.l_m * geom.omega_cav());
  return [atoms, scale, kappa_phys](double x) {
    return scale * linear_rates(atoms, x / kappa_phys).delta_omega_cav;
  };
}

}  // namespace blockade
