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

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blockade/errors.hpp"
#include "blockade/experiments/config.hpp"
#include "blockade/experiments/scenarios.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace blockade::experiments;
  CLI::App app{"Photon blockade from nonlinear dissipation: scenario runner"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ConfigOverrides ov;
  std::string config_path, out_path;
  unsigned workers = 0;
  long long cutoff = 0;
  std::vector<CLI::App*> subs;
  for (const std::string& name : scenario_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config_path, "YAML config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output CSV path (manifest goes to <out>.manifest.json)");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--fock-cutoff", cutoff, "Fock-space cutoff (highest photon number)");
    sub->add_option("--set", ov.sets, "override a config value: dotted.path=value");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::string scenario;
  for (CLI::App* sub : subs) {
    if (sub->parsed()) {
      scenario = sub->get_name();
      if (sub->count("--config")) ov.config_path = config_path;
      if (sub->count("--out")) ov.output_path = out_path;
      if (sub->count("--workers")) ov.workers = workers;
      if (sub->count("--fock-cutoff")) ov.fock_cutoff = cutoff;
    }
  }

  try {
    ScenarioConfig cfg = load_config(scenario, ov);
    const RunSummary s = run_scenario(cfg);
    std::fprintf(stderr, "%s: wrote %zu rows to %s (manifest %s)\n", scenario.c_str(), s.rows,
                 s.csv_path.c_str(), s.manifest_path.c_str());
    if (s.failed_points > 0) {
      std::fprintf(stderr, "%s: %zu grid points failed\n", scenario.c_str(), s.failed_points);
      return kExitNumerical;
    }
    return 0;
  } catch (const blockade::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const blockade::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
