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

#pragma once

// Classical Fabry-Perot cavity with an intracavity dispersive medium.
// Frequencies are handled as offsets x = omega - omega_cav from the bare
// mode omega_cav = q 2 pi c / L, in rad/s.

#include <complex>
#include <functional>

#include "blockade/atomic_response.hpp"
#include "blockade/lindblad.hpp"

namespace blockade {

inline constexpr double kSpeedOfLight = 299792458.0;

struct FPGeometry {
  double L = 0.8;      // round-trip length [m]
  double l_m = 0.075;  // medium path per round trip [m]
  double r1 = 0.99498743710661997;
  double t1 = 0.1;
  double r2 = 0.99498743710661997;
  double alpha_loss = 0.0;  // [1/m]
  long long q = 1006289;

  // Throws ConfigError unless 0 < r1, r2 < 1, r1^2 + t1^2 <= 1, L >= l_m > 0.
  void validate() const;
  double omega_cav() const;
  // r1 r2 exp(-alpha L)
  double g_rt() const;
  // 4c/L arcsin((1 - g_rt) / (2 sqrt(g_rt)))
  double bare_linewidth() const;
};

// chi'(x), real part of the medium susceptibility at offset x.
using DispersionProfile = std::function<double(double)>;

// Round-trip phase reduced modulo 2 pi q: x L / c + (omega_cav + x) chi'(x) l_m / 2c.
double round_trip_phase(const FPGeometry& geom, const DispersionProfile& chi, double x);

std::complex<double> round_trip_gain(const FPGeometry& geom, const DispersionProfile& chi,
                                     double x);

// |t1|^2 / ((1 - g_rt)^2 + 4 g_rt sin^2(phase / 2)) over the offsets.
TimeSeries intensity_spectrum(const FPGeometry& geom, const DispersionProfile& chi,
                              const std::vector<double>& offsets);

struct LinewidthResult {
  double omega_plus = 0.0;  // offsets of the half-intensity points
  double omega_minus = 0.0;
  double delta_omega_prime = 0.0;
};

// Solves phase(x)/2 = +-arcsin((1 - g_rt) / 2 sqrt(g_rt)) for the crossing
// closest to resonance within [0, +-W], W = bare_linewidth(), by bisection.
// W is widened tenfold once before NumericalError is thrown.
LinewidthResult narrowed_linewidth(const FPGeometry& geom, const DispersionProfile& chi);

// chi'(x) = -2 L dw(x) / (l_m omega_cav), with dw the atomic pull in rad/s at
// probe offset x, evaluated from the closed forms with kappa = kappa_phys.
DispersionProfile eit_profile(const NTypeEnsembleParams& atoms, const FPGeometry& geom,
                              double kappa_phys);

}  // namespace blockade
