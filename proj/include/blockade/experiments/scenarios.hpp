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

#include <cstddef>
#include <string>

#include "blockade/experiments/config.hpp"

namespace blockade::experiments {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunSummary {
  std::string csv_path;
  std::string manifest_path;
  std::size_t rows = 0;
  std::size_t failed_points = 0;
};

// Resolves all parameters (throwing ConfigError on invalid or unknown keys
// before any computation), runs the scenario, writes the CSV and
// <csv>.manifest.json. Numerical failures of individual grid points are
// counted in failed_points; whole-run failures throw NumericalError.
RunSummary run_scenario(ScenarioConfig& cfg);

}  // namespace blockade::experiments
