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

// Scenario configuration: a YAML parameter tree flattened to dotted paths,
// with presets and command-line overrides layered on top. Every value a
// scenario reads is recorded so the run manifest lists all resolved
// parameters, defaults included.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace blockade::experiments {

class Params {
 public:
  Params() = default;
  // Throws ConfigError when the root is not a map.
  explicit Params(const YAML::Node& root);

  bool has(const std::string& path) const { return values_.count(path) != 0; }
  // Sets `path` from a YAML scalar or flow sequence, e.g. "0.5" or "[1, 2]".
  void set(const std::string& path, const std::string& yaml_value);
  void set_string(const std::string& path, const std::string& value);
  // Sets `path` only when it is absent. Such values are never reported by
  // unused().
  void set_default(const std::string& path, double value);

  double get_double(const std::string& path, double fallback);
  long long get_int(const std::string& path, long long fallback);
  std::string get_string(const std::string& path, const std::string& fallback);
  std::optional<double> get_optional_double(const std::string& path);
  std::vector<double> get_doubles(const std::string& path, const std::vector<double>& fallback);

  // Paths present in the input that no scenario read.
  std::vector<std::string> unused() const;
  const nlohmann::ordered_json& resolved() const { return resolved_; }

 private:
  const YAML::Node* find(const std::string& path);
  void record(const std::string& path, nlohmann::ordered_json value);

  std::map<std::string, YAML::Node> values_;
  std::set<std::string> used_;
  std::set<std::string> defaulted_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

struct ScenarioConfig {
  std::string scenario;
  std::string output_path;
  unsigned workers = 1;
  std::optional<long long> fock_cutoff;
  std::string preset;
  Params params;
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"rates-linear", "rates-nonlinear", "spectrum-g2",
                                              "g2-tau",       "cascade-fock",    "linewidth",
                                              "oracle"};
  return names;
}

struct ConfigOverrides {
  std::optional<std::string> config_path;
  std::optional<std::string> output_path;
  std::optional<unsigned> workers;
  std::optional<long long> fock_cutoff;
  // "dotted.path=value" entries; later entries win.
  std::vector<std::string> sets;
};

// Reads the optional config file, applies the named preset (file key
// `preset`) under explicit values, then the overrides. Throws ConfigError.
ScenarioConfig load_config(const std::string& scenario, const ConfigOverrides& overrides);

}  // namespace blockade::experiments
