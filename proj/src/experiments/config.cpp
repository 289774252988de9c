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

#include "blockade/experiments/config.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "blockade/errors.hpp"
#include "blockade/experiments/presets.hpp"

namespace blockade::experiments {
namespace {

void flatten(const YAML::Node& node, const std::string& prefix,
             std::map<std::string, YAML::Node>& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (key.empty() || key.find('.') != std::string::npos) {
        throw ConfigError("config: invalid key '" + key + "'");
      }
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (!node.IsNull()) {
    out[prefix] = node;
  }
}

nlohmann::ordered_json::json_pointer pointer(const std::string& path) {
  std::string p = "/" + path;
  std::replace(p.begin(), p.end(), '.', '/');
  return nlohmann::ordered_json::json_pointer(p);
}

}  // namespace

Params::Params(const YAML::Node& root) {
  if (!root.IsNull() && !root.IsMap()) throw ConfigError("config: top level must be a map");
  flatten(root, "", values_);
}

void Params::set(const std::string& path, const std::string& yaml_value) {
  if (path.empty()) throw ConfigError("config: empty override path");
  YAML::Node node;
  try {
    node = YAML::Load(yaml_value);
  } catch (const YAML::Exception& e) {
    throw ConfigError("config: cannot parse override for '" + path + "': " + e.what());
  }
  if (node.IsMap()) throw ConfigError("config: override for '" + path + "' must not be a map");
  defaulted_.erase(path);
  if (node.IsNull()) {
    values_.erase(path);
  } else {
    values_[path] = node;
  }
}

void Params::set_string(const std::string& path, const std::string& value) {
  defaulted_.erase(path);
  values_[path] = YAML::Node(value);
}

void Params::set_default(const std::string& path, double value) {
  if (has(path)) return;
  values_[path] = YAML::Node(value);
  defaulted_.insert(path);
}

const YAML::Node* Params::find(const std::string& path) {
  const auto it = values_.find(path);
  if (it == values_.end()) return nullptr;
  used_.insert(path);
  return &it->second;
}

void Params::record(const std::string& path, nlohmann::ordered_json value) {
  resolved_[pointer(path)] = std::move(value);
}

double Params::get_double(const std::string& path, double fallback) {
  double v = fallback;
  if (const YAML::Node* n = find(path)) {
    try {
      v = n->as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError("config: '" + path + "' must be a number");
    }
  }
  if (!std::isfinite(v)) throw ConfigError("config: '" + path + "' must be finite");
  record(path, v);
  return v;
}

long long Params::get_int(const std::string& path, long long fallback) {
  long long v = fallback;
  if (const YAML::Node* n = find(path)) {
    try {
      v = n->as<long long>();
    } catch (const YAML::Exception&) {
      throw ConfigError("config: '" + path + "' must be an integer");
    }
  }
  record(path, v);
  return v;
}

std::string Params::get_string(const std::string& path, const std::string& fallback) {
  std::string v = fallback;
  if (const YAML::Node* n = find(path)) {
    if (!n->IsScalar()) throw ConfigError("config: '" + path + "' must be a string");
    v = n->as<std::string>();
  }
  record(path, v);
  return v;
}

std::optional<double> Params::get_optional_double(const std::string& path) {
  if (!has(path)) {
    record(path, nullptr);
    return std::nullopt;
  }
  return get_double(path, 0.0);
}

std::vector<double> Params::get_doubles(const std::string& path,
                                        const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (const YAML::Node* n = find(path)) {
    if (!n->IsSequence()) throw ConfigError("config: '" + path + "' must be a list");
    v.clear();
    for (const auto& item : *n) {
      try {
        v.push_back(item.as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError("config: '" + path + "' must be a list of numbers");
      }
      if (!std::isfinite(v.back())) throw ConfigError("config: '" + path + "' must be finite");
    }
  }
  record(path, v);
  return v;
}

std::vector<std::string> Params::unused() const {
  std::vector<std::string> out;
  for (const auto& kv : values_) {
    if (!used_.count(kv.first) && !defaulted_.count(kv.first)) out.push_back(kv.first);
  }
  return out;
}

ScenarioConfig load_config(const std::string& scenario, const ConfigOverrides& overrides) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), scenario) == names.end()) {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  if (overrides.config_path) {
    YAML::Node root;
    try {
      root = YAML::LoadFile(*overrides.config_path);
    } catch (const YAML::Exception& e) {
      throw ConfigError("cannot read config '" + *overrides.config_path + "': " + e.what());
    }
    cfg.params = Params(root);
  }
  for (const std::string& s : overrides.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + s + "' is not path=value");
    cfg.params.set(s.substr(0, eq), s.substr(eq + 1));
  }

  Params& p = cfg.params;
  const std::string declared = p.get_string("scenario", scenario);
  if (declared != scenario) {
    throw ConfigError("config declares scenario '" + declared + "' but '" + scenario +
                      "' was requested");
  }
  cfg.preset = p.get_string("preset", "");
  if (!cfg.preset.empty()) {
    for (const auto& [path, value] : preset_defaults(find_preset(cfg.preset))) {
      p.set_default(path, value);
    }
  }

  if (overrides.output_path) p.set_string("output", *overrides.output_path);
  cfg.output_path = p.get_string("output", scenario + ".csv");
  if (cfg.output_path.empty()) throw ConfigError("output path must not be empty");

  if (overrides.workers) p.set("workers", std::to_string(*overrides.workers));
  const long long workers =
      p.get_int("workers", static_cast<long long>(std::max(1u, std::thread::hardware_concurrency())));
  if (workers < 1) throw ConfigError("workers must be >= 1");
  cfg.workers = static_cast<unsigned>(workers);

  cfg.fock_cutoff = overrides.fock_cutoff;
  if (cfg.fock_cutoff && *cfg.fock_cutoff < 2) throw ConfigError("--fock-cutoff must be >= 2");
  return cfg;
}

}  // namespace blockade::experiments
