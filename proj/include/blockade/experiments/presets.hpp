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

#include <map>
#include <string>
#include <vector>

namespace blockade::experiments {

// Physical parameters with rates in units of 2 pi x MHz.
struct PhysicalPreset {
  std::string name;
  double kappa_physical = 0.0;
  double kappa_e1 = 0.0;
  double kappa_e2 = 0.0;
  double kappa_i = 0.0;
  double g = 0.0;
  double hyperfine_splitting = 0.0;
  double atomic_decay = 0.0;
  double wavelength_m = 0.0;
};

const std::vector<PhysicalPreset>& presets();
// Throws ConfigError for an unknown name.
const PhysicalPreset& find_preset(const std::string& name);

// The preset in units of kappa_physical, as dotted config paths.
std::map<std::string, double> preset_defaults(const PhysicalPreset& p);

// Total decay rate in rad/s.
double kappa_rad_per_s(const PhysicalPreset& p);

// eps_p = sqrt(P / (hbar omega_p)) in units of sqrt(kappa).
double probe_amplitude(double power_watts, double wavelength_m, double kappa_rad_s);

}  // namespace blockade::experiments
