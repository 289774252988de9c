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

// Effective single-mode model of the cavity after the atoms are eliminated:
// H = (-D' + d[dw](D')) a^dag a + eta a^dag^2 a^2 + i sqrt(k_e1) eps (a^dag - a),
// with loss sqrt(1 + k_aL) a and sqrt(k_aNL) a^2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockade/atomic_response.hpp"
#include "blockade/lindblad.hpp"

namespace blockade {

struct EffectiveCavityConfig {
  double kappa_e1 = 0.45;
  double kappa_e2 = 0.45;
  double kappa_i = 0.1;
  // Unset means sqrt(kappa_e1) * eps_p = 0.05.
  std::optional<double> eps_p;
  std::vector<double> detuning_grid;
  // No atoms: bare driven cavity.
  std::optional<NTypeEnsembleParams> atom_params = NTypeEnsembleParams{};
  Index fock_cutoff = 20;
  unsigned workers = 1;

  double resolved_eps_p() const;
  // Throws ConfigError unless the port rates are non-negative and sum to 1.
  void validate() const;
};

struct SweepPoint {
  double delta_prime = 0.0;
  double transmission = 0.0;
  double g2_0 = 0.0;
  double mean_n = 0.0;
  EffectiveParams eff;
  double shift = 0.0;
  Index fock_cutoff = 0;
  // Empty unless the point failed.
  std::string error;

  bool ok() const { return error.empty(); }
};

struct EffectiveModel {
  Operator h;
  std::vector<CollapseChannel> channels;
  EffectiveParams eff;
  double shift = 0.0;
};

EffectiveModel build_effective_model(const EffectiveCavityConfig& cfg, double delta_prime);
EffectiveModel build_effective_model(const EffectiveCavityConfig& cfg, double delta_prime,
                                     Index fock_cutoff);

// Steady state at one detuning. If the top Fock level is populated the cutoff
// is doubled (up to four times the requested one) before giving up.
SweepPoint solve_sweep_point(const EffectiveCavityConfig& cfg, double delta_prime);

// One point per grid entry in grid order; failures are recorded in
// SweepPoint::error rather than thrown.
std::vector<SweepPoint> transmission_sweep(const EffectiveCavityConfig& cfg);

double weak_drive_g2_analytic(double kappa_t, double kappa_nl, double eta, double delta_eff);

// Full width at half maximum of T over the sweep, by linear interpolation.
// Throws NumericalError when the maximum sits on the grid edge or a
// half-maximum crossing is missing. Failed points are skipped.
double extract_fwhm(const std::vector<SweepPoint>& sweep);
double extract_fwhm(const std::vector<double>& x, const std::vector<double>& y);

// 0 plus +-inner * ratio^k for k = 0..per_side-1, ratio chosen so the last
// point is +-outer. Sorted ascending.
std::vector<double> geometric_grid(double inner, double outer, int per_side);

}  // namespace blockade
