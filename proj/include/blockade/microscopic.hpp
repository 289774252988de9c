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

// Full atom-cavity model for one or two N-type atoms coupled to a truncated
// cavity mode, used to check the closed-form rates by direct simulation.
//
// Space: atom_1 (x atom_2) x Fock, atomic levels |1>..|4> stored at 0..3.

#include <vector>

#include "blockade/atomic_response.hpp"
#include "blockade/lindblad.hpp"

namespace blockade {

struct MicroscopicConfig {
  int n_atoms = 1;
  Index fock_cutoff = 3;
  // N is ignored; g1, g2 are single-atom couplings.
  NTypeEnsembleParams atom_params{};
  // Probe detuning from the bare cavity, Delta = omega_p - omega_cav.
  double delta = 0.0;
  double eps_p = 0.01;
  double kappa_e1 = 0.45;
  double kappa_e2 = 0.45;
  double kappa_i = 0.1;

  // Throws ConfigError on n_atoms outside {1, 2}, fock_cutoff < 3, negative
  // rates or a composite dimension above kMaxCompositeDim.
  void validate() const;
  std::vector<Index> dims() const;
  Index composite_dim() const;
};

inline constexpr Index kMaxCompositeDim = 4096;

struct FullModel {
  Operator h;
  std::vector<CollapseChannel> channels;
  std::vector<Index> dims;
};

// |m><n| (levels 1..4) on atom j, embedded in the composite space.
Operator atomic_sigma(const MicroscopicConfig& cfg, int atom, int m, int n);
// Cavity annihilation operator embedded in the composite space.
Operator cavity_annihilation(const MicroscopicConfig& cfg);

FullModel build_full_model(const MicroscopicConfig& cfg);

// Sum over atoms and levels of <sigma_nn>.
double atomic_population(const MicroscopicConfig& cfg, const DensityMatrix& rho);

struct MicroscopicPoint {
  double delta = 0.0;
  double transmission = 0.0;
  double mean_n = 0.0;
};

// Steady-state transmission kappa_e2 <a^dag a> / eps_p^2 at cfg.delta.
MicroscopicPoint microscopic_transmission(const MicroscopicConfig& cfg);

struct LorentzianFit {
  double center = 0.0;
  double width = 0.0;  // FWHM
  double peak = 0.0;
};

// Least-squares fit of 1/T to a quadratic in the detuning.
LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& t);

struct ExtractedRates {
  LorentzianFit fit;
  // Resonance pull and one-photon loss added to the bare cavity width.
  double pull = 0.0;
  double added_loss = 0.0;
  std::vector<MicroscopicPoint> points;
};

// Sweeps cfg.delta over `grid`, fits a Lorentzian and reports the pull and
// the linewidth excess over the bare kappa = 1.
ExtractedRates extract_rates(const MicroscopicConfig& cfg, const std::vector<double>& grid,
                             unsigned workers = 1);

}  // namespace blockade
