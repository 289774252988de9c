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

#include "blockade/experiments/presets.hpp"

#include <cmath>
#include <numbers>

#include "blockade/errors.hpp"

namespace blockade::experiments {

namespace {
constexpr double kHbar = 1.054571817e-34;
constexpr double kC = 299792458.0;
}  // namespace

const std::vector<PhysicalPreset>& presets() {
  static const std::vector<PhysicalPreset> all{
      {"rb87-d1", 1.32, 0.6, 0.6, 0.12, 0.2, 6020.0, 6.0, 794.979e-9},
  };
  return all;
}

const PhysicalPreset& find_preset(const std::string& name) {
  for (const PhysicalPreset& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::map<std::string, double> preset_defaults(const PhysicalPreset& p) {
  const double k = p.kappa_physical;
  return {
      {"cavity.kappa_e1", p.kappa_e1 / k},
      {"cavity.kappa_e2", p.kappa_e2 / k},
      {"cavity.kappa_i", p.kappa_i / k},
      {"ensemble.g1", p.g / k},
      {"ensemble.g2", p.g / k},
      {"ensemble.delta23", p.hyperfine_splitting / k},
      {"ensemble.delta21_res", p.hyperfine_splitting / k},
      {"ensemble.Gamma21", p.atomic_decay / k},
      {"ensemble.Gamma23", p.atomic_decay / k},
      {"ensemble.Gamma43", p.atomic_decay / k},
      {"fp.kappa_physical", kappa_rad_per_s(p)},
      {"drive.kappa_physical", kappa_rad_per_s(p)},
      {"drive.wavelength_m", p.wavelength_m},
  };
}

double kappa_rad_per_s(const PhysicalPreset& p) {
  return 2.0 * std::numbers::pi * p.kappa_physical * 1e6;
}

double probe_amplitude(double power_watts, double wavelength_m, double kappa_rad_s) {
  if (!(power_watts >= 0.0) || !(wavelength_m > 0.0) || !(kappa_rad_s > 0.0)) {
    throw ConfigError("probe_amplitude: need P >= 0, wavelength > 0, kappa > 0");
  }
  const double omega = 2.0 * std::numbers::pi * kC / wavelength_m;
  return std::sqrt(power_watts / (kHbar * omega) / kappa_rad_s);
}

}  // namespace blockade::experiments
