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

// Cascaded pair of cavities: a coherently driven source d feeding the
// nonlinearly dissipative target a through a unidirectional channel with
// zero propagation delay. Composite ordering is d (x) a.

#include <optional>
#include <vector>

#include "blockade/lindblad.hpp"

namespace blockade {

struct CascadeConfig {
  double kappa_d1 = 0.5;
  double kappa_d2 = 0.5;
  double kappa_e1 = 0.5;
  double kappa_e2 = 0.5;
  double kappa_i = 0.0;
  double kappa_a_L = 0.0;
  double kappa_a_NL = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  Index dim_d = 8;
  Index dim_a = 8;
  // When set, alpha is replaced by calibrate_drive(cfg, *target_nbar).
  std::optional<double> target_nbar;
  // Largest population tolerated in the top Fock level of either mode.
  double truncation_tol = 1e-5;

  void validate() const;
  double kappa_d() const { return kappa_d1 + kappa_d2; }
  double kappa_a() const { return kappa_e1 + kappa_e2 + kappa_i + kappa_a_L; }
  double resolved_alpha() const;
};

enum class CascadeMode { kIncident, kTransmitted, kReflected };

struct ModeStatistics {
  CascadeMode mode = CascadeMode::kIncident;
  std::vector<double> probabilities;
  double mean_n = 0.0;
};

Liouvillian build_cascade_liouvillian(const CascadeConfig& cfg);

// alpha giving <d^dag d> = nbar for the isolated source: sqrt(nbar) k_d / (2 sqrt(k_d1)).
double calibrate_drive(const CascadeConfig& cfg, double nbar);

// Steady state of the cascade, checked against cfg.truncation_tol.
DensityMatrix cascade_steady_state(const CascadeConfig& cfg);

// State of c = (sqrt(k_d2) d + sqrt(k_e1) a) / sqrt(k_d2 + k_e1), on dim_d
// levels. The rotation is done in a space large enough to be exact; weight
// above the cutoff must stay below 1e-6.
DensityMatrix reflected_mode_state(const DensityMatrix& rho, const CascadeConfig& cfg);

ModeStatistics mode_fock_statistics(const DensityMatrix& rho, const CascadeConfig& cfg,
                                    CascadeMode mode);

const char* mode_name(CascadeMode mode);

}  // namespace blockade
