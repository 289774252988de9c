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

#include "blockade/experiments/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "blockade/cascade.hpp"
#include "blockade/classical_fp.hpp"
#include "blockade/effective_cavity.hpp"
#include "blockade/experiments/presets.hpp"
#include "blockade/microscopic.hpp"
#include "blockade/parallel.hpp"

namespace blockade::experiments {
namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Output {
  Table table;
  json results = json::object();
  std::size_t failed = 0;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

NTypeEnsembleParams read_ensemble(Params& p, NTypeEnsembleParams d) {
  NTypeEnsembleParams e;
  e.N = p.get_double("ensemble.N", d.N);
  e.g1 = p.get_double("ensemble.g1", d.g1);
  e.g2 = p.get_double("ensemble.g2", d.g2);
  e.omega_c = p.get_double("ensemble.omega_c", d.omega_c);
  e.Gamma21 = p.get_double("ensemble.Gamma21", d.Gamma21);
  e.Gamma23 = p.get_double("ensemble.Gamma23", d.Gamma23);
  e.Gamma31 = p.get_double("ensemble.Gamma31", d.Gamma31);
  e.Gamma41 = p.get_double("ensemble.Gamma41", d.Gamma41);
  e.Gamma42 = p.get_double("ensemble.Gamma42", d.Gamma42);
  e.Gamma43 = p.get_double("ensemble.Gamma43", d.Gamma43);
  e.delta23 = p.get_double("ensemble.delta23", d.delta23);
  e.delta21_res = p.get_double("ensemble.delta21_res", d.delta21_res);
  e.delta43_res = p.get_double("ensemble.delta43_res", d.delta43_res);
  return e;
}

struct GridDefault {
  std::string kind;  // "linear" or "geometric"
  double a = 0.0;    // start / inner
  double b = 0.0;    // stop / outer
  long long n = 0;   // points / per_side
};

std::vector<double> read_grid(Params& p, const std::string& prefix, const GridDefault& d) {
  if (p.has(prefix + ".values")) {
    std::vector<double> v = p.get_doubles(prefix + ".values", {});
    if (v.empty()) throw ConfigError(prefix + ".values must not be empty");
    return v;
  }
  const std::string kind = p.get_string(prefix + ".kind", d.kind);
  if (kind == "linear") {
    const double start = p.get_double(prefix + ".start", d.kind == "linear" ? d.a : -1.0);
    const double stop = p.get_double(prefix + ".stop", d.kind == "linear" ? d.b : 1.0);
    const long long n = p.get_int(prefix + ".points", d.kind == "linear" ? d.n : 101);
    if (n < 1) throw ConfigError(prefix + ".points must be >= 1");
    if (n == 1) return {start};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
  }
  if (kind == "geometric") {
    const double inner = p.get_double(prefix + ".inner", d.kind == "geometric" ? d.a : 1e-6);
    const double outer = p.get_double(prefix + ".outer", d.kind == "geometric" ? d.b : 1e-2);
    const long long n = p.get_int(prefix + ".per_side", d.kind == "geometric" ? d.n : 100);
    if (n < 1 || n > 1000000) throw ConfigError(prefix + ".per_side out of range");
    return geometric_grid(inner, outer, static_cast<int>(n));
  }
  throw ConfigError(prefix + ".kind must be 'linear' or 'geometric'");
}

EffectiveCavityConfig read_cavity(Params& p, const ScenarioConfig& sc, long long cutoff_default) {
  EffectiveCavityConfig c;
  c.kappa_e1 = p.get_double("cavity.kappa_e1", 0.45);
  c.kappa_e2 = p.get_double("cavity.kappa_e2", 0.45);
  c.kappa_i = p.get_double("cavity.kappa_i", 0.1);
  if (sc.fock_cutoff) p.set("cavity.fock_cutoff", std::to_string(*sc.fock_cutoff));
  c.fock_cutoff = p.get_int("cavity.fock_cutoff", cutoff_default);
  const std::optional<double> power = p.get_optional_double("drive.power_watts");
  if (power) {
    if (p.has("cavity.eps_p")) throw ConfigError("set either cavity.eps_p or drive.power_watts");
    const double kappa = p.get_double("drive.kappa_physical", 2.0 * std::numbers::pi * 1.32e6);
    const double wavelength = p.get_double("drive.wavelength_m", 794.979e-9);
    c.eps_p = probe_amplitude(*power, wavelength, kappa);
  } else {
    c.eps_p = p.get_double("cavity.eps_p", 0.05 / std::sqrt(c.kappa_e1));
  }
  c.workers = sc.workers;
  if (p.get_int("cavity.atoms", 1) == 0) c.atom_params.reset();
  return c;
}

void require_all_used(const Params& p) {
  const auto unused = p.unused();
  if (unused.empty()) return;
  std::string msg = "unknown config keys:";
  for (const std::string& k : unused) msg += " " + k;
  throw ConfigError(msg);
}

using Runner = std::function<Output()>;

// rates-linear: pull and one-photon absorption versus the pulled cavity
// frequency, offset from the 1-2 transition, with the coupling laser resonant.
Runner resolve_rates_linear(ScenarioConfig& sc) {
  Params& p = sc.params;
  NTypeEnsembleParams d;
  d.delta23 = 0.0;
  d.delta21_res = 0.0;
  const NTypeEnsembleParams base = read_ensemble(p, d);
  const std::vector<double> grid = read_grid(p, "grid", {"linear", -30.0, 30.0, 601});
  base.validate();
  return [base, grid] {
    Output o;
    o.table.columns = {"cavity_offset", "delta_omega_cav", "kappa_a_L"};
    for (double off : grid) {
      NTypeEnsembleParams e = base;
      e.delta21_res = base.delta21_res - off;
      e.delta43_res = base.delta43_res - off;
      const LinearRates r = linear_rates(e, 0.0);
      o.table.rows.push_back({off, r.delta_omega_cav, r.kappa_a_L});
    }
    return o;
  };
}

// rates-nonlinear: all four rates versus omega_43 - omega'_cav at two-photon resonance.
Runner resolve_rates_nonlinear(ScenarioConfig& sc) {
  Params& p = sc.params;
  const NTypeEnsembleParams base = read_ensemble(p, NTypeEnsembleParams{});
  const std::vector<double> grid = read_grid(p, "grid", {"linear", -5.0, 5.0, 401});
  base.validate();
  return [base, grid] {
    Output o;
    o.table.columns = {"delta43", "eta", "kappa_a_NL", "kappa_a_L", "delta_omega_cav"};
    for (double d43 : grid) {
      NTypeEnsembleParams e = base;
      e.delta43_res = d43;
      const EffectiveParams r = effective_params(e, 0.0);
      o.table.rows.push_back({d43, r.eta, r.kappa_a_NL, r.kappa_a_L, r.delta_omega_cav});
    }
    const EffectiveParams op = effective_params(base, 0.0);
    o.results = {{"operating_point",
                  {{"delta43", base.delta43_res},
                   {"eta", op.eta},
                   {"kappa_a_NL", op.kappa_a_NL},
                   {"kappa_a_L", op.kappa_a_L},
                   {"delta_omega_cav", op.delta_omega_cav}}}};
    return o;
  };
}

Runner resolve_spectrum_g2(ScenarioConfig& sc) {
  Params& p = sc.params;
  EffectiveCavityConfig c = read_cavity(p, sc, 20);
  if (c.atom_params) c.atom_params = read_ensemble(p, NTypeEnsembleParams{});
  c.detuning_grid = read_grid(p, "grid", {"geometric", 1e-6, 2e-3, 100});
  c.validate();
  return [c] {
    Output o;
    o.table.columns = {"delta_prime", "T",          "g2_0", "mean_n", "kappa_a_L",
                       "kappa_a_NL",  "eta",        "shift", "fock_cutoff", "ok"};
    const std::vector<SweepPoint> sweep = transmission_sweep(c);
    double min_g2 = std::numeric_limits<double>::infinity();
    json failures = json::array();
    for (const SweepPoint& s : sweep) {
      if (s.ok()) {
        min_g2 = std::min(min_g2, s.g2_0);
        o.table.rows.push_back({s.delta_prime, s.transmission, s.g2_0, s.mean_n, s.eff.kappa_a_L,
                                s.eff.kappa_a_NL, s.eff.eta, s.shift,
                                static_cast<double>(s.fock_cutoff), 1.0});
      } else {
        ++o.failed;
        failures.push_back({{"delta_prime", s.delta_prime}, {"error", s.error}});
        o.table.rows.push_back({s.delta_prime, kNaN, kNaN, kNaN, s.eff.kappa_a_L,
                                s.eff.kappa_a_NL, s.eff.eta, s.shift,
                                static_cast<double>(s.fock_cutoff), 0.0});
      }
    }
    o.results["min_g2_0"] = min_g2;
    try {
      o.results["fwhm"] = extract_fwhm(sweep);
    } catch (const NumericalError& e) {
      o.results["fwhm"] = nullptr;
      o.results["fwhm_error"] = e.what();
    }
    o.results["failures"] = failures;
    return o;
  };
}

Runner resolve_g2_tau(ScenarioConfig& sc) {
  Params& p = sc.params;
  EffectiveCavityConfig c = read_cavity(p, sc, 20);
  if (c.atom_params) c.atom_params = read_ensemble(p, NTypeEnsembleParams{});
  const double dp = p.get_double("g2_tau.delta_prime", 0.0);
  const std::vector<double> taus = read_grid(p, "tau", {"linear", 0.0, 20.0, 201});
  c.validate();
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < 0.0 || (i > 0 && taus[i] <= taus[i - 1])) {
      throw ConfigError("tau grid must be non-negative and strictly increasing");
    }
  }
  return [c, dp, taus] {
    const EffectiveModel m = build_effective_model(c, dp);
    const Liouvillian l = build_liouvillian(m.h, m.channels);
    const DensityMatrix rho = steady_state(l);
    const Index dims[] = {c.fock_cutoff + 1};
    check_truncation(rho, dims);
    const TimeSeries g = g2_tau(l, rho, taus);
    Output o;
    o.table.columns = {"tau", "g2"};
    for (std::size_t i = 0; i < g.times.size(); ++i) o.table.rows.push_back({g.times[i], g.values[i]});
    o.results["g2_0"] = g2_zero(rho);
    return o;
  };
}

Runner resolve_cascade(ScenarioConfig& sc) {
  Params& p = sc.params;
  CascadeConfig c;
  c.kappa_d1 = p.get_double("cascade.kappa_d1", 0.5);
  c.kappa_d2 = p.get_double("cascade.kappa_d2", 0.5);
  c.kappa_e1 = p.get_double("cascade.kappa_e1", 0.5);
  c.kappa_e2 = p.get_double("cascade.kappa_e2", 0.5);
  c.kappa_i = p.get_double("cascade.kappa_i", 0.0);
  const bool from_atoms = p.get_int("cascade.from_atoms", 0) != 0;
  if (from_atoms) {
    const NTypeEnsembleParams e = read_ensemble(p, NTypeEnsembleParams{});
    e.validate();
    const EffectiveParams r = effective_params(e, 0.0);
    c.kappa_a_L = r.kappa_a_L;
    c.kappa_a_NL = r.kappa_a_NL;
    c.eta = r.eta;
  } else {
    c.kappa_a_L = p.get_double("cascade.kappa_a_L", 0.0);
    c.kappa_a_NL = p.get_double("cascade.kappa_a_NL", 28.0);
    c.eta = p.get_double("cascade.eta", 0.0);
  }
  const std::optional<double> alpha = p.get_optional_double("cascade.alpha");
  if (alpha) {
    if (p.has("cascade.nbar")) throw ConfigError("set either cascade.alpha or cascade.nbar");
    c.alpha = *alpha;
  } else {
    c.target_nbar = p.get_double("cascade.nbar", 0.6);
  }
  if (sc.fock_cutoff) p.set("cascade.dim", std::to_string(*sc.fock_cutoff + 1));
  c.dim_d = c.dim_a = p.get_int("cascade.dim", 8);
  c.truncation_tol = p.get_double("cascade.truncation_tol", 1e-5);
  c.validate();
  if (c.target_nbar) calibrate_drive(c, *c.target_nbar);
  return [c] {
    const DensityMatrix rho = cascade_steady_state(c);
    const ModeStatistics d = mode_fock_statistics(rho, c, CascadeMode::kIncident);
    const ModeStatistics a = mode_fock_statistics(rho, c, CascadeMode::kTransmitted);
    const ModeStatistics r = mode_fock_statistics(rho, c, CascadeMode::kReflected);
    Output o;
    o.table.columns = {"n", "incident", "transmitted", "reflected"};
    for (std::size_t n = 0; n < d.probabilities.size(); ++n) {
      o.table.rows.push_back({static_cast<double>(n), d.probabilities[n], a.probabilities[n],
                              r.probabilities[n]});
    }
    o.results = {{"alpha", c.resolved_alpha()},
                 {"kappa_a_L", c.kappa_a_L},
                 {"kappa_a_NL", c.kappa_a_NL},
                 {"eta", c.eta},
                 {"mean_n", {{"incident", d.mean_n}, {"transmitted", a.mean_n}, {"reflected", r.mean_n}}}};
    return o;
  };
}

// linewidth: the rate curves versus the probe detuning together with the
// classical intracavity intensity with and without the atomic medium.
Runner resolve_linewidth(ScenarioConfig& sc) {
  Params& p = sc.params;
  const NTypeEnsembleParams atoms = read_ensemble(p, NTypeEnsembleParams{});
  FPGeometry g;
  g.L = p.get_double("fp.L", g.L);
  g.l_m = p.get_double("fp.l_m", g.l_m);
  g.r1 = p.get_double("fp.r1", g.r1);
  g.t1 = p.get_double("fp.t1", g.t1);
  g.r2 = p.get_double("fp.r2", g.r2);
  g.alpha_loss = p.get_double("fp.alpha_loss", g.alpha_loss);
  g.q = p.get_int("fp.q", g.q);
  // Unset: use the bare classical linewidth as kappa.
  const std::optional<double> kappa_set = p.get_optional_double("fp.kappa_physical");
  const std::vector<double> grid = read_grid(p, "grid", {"geometric", 1e-6, 2e-2, 100});
  atoms.validate();
  g.validate();
  const double kappa = kappa_set ? *kappa_set : g.bare_linewidth();
  if (!(kappa > 0.0)) throw ConfigError("fp.kappa_physical must be > 0");
  return [atoms, g, grid, kappa] {
    const DispersionProfile chi = eit_profile(atoms, g, kappa);
    const DispersionProfile flat = [](double) { return 0.0; };
    std::vector<double> x;
    for (double dp : grid) x.push_back(dp * kappa);
    const TimeSeries empty = intensity_spectrum(g, flat, x);
    const TimeSeries medium = intensity_spectrum(g, chi, x);
    Output o;
    o.table.columns = {"delta_prime", "shift", "kappa_a_L", "eta", "kappa_a_NL",
                       "chi_prime",   "intensity_empty", "intensity_medium"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const EffectiveParams r = effective_params(atoms, grid[i]);
      o.table.rows.push_back({grid[i], dispersive_shift(atoms, grid[i]), r.kappa_a_L, r.eta,
                              r.kappa_a_NL, chi(x[i]), empty.values[i], medium.values[i]});
    }
    const LinewidthResult w = narrowed_linewidth(g, chi);
    o.results = {{"kappa_physical_rad_s", kappa},
                 {"bare_linewidth_rad_s", g.bare_linewidth()},
                 {"narrowed_linewidth_rad_s", w.delta_omega_prime},
                 {"omega_plus_rad_s", w.omega_plus},
                 {"omega_minus_rad_s", w.omega_minus},
                 {"narrowing_ratio", w.delta_omega_prime / g.bare_linewidth()}};
    return o;
  };
}

Runner resolve_oracle(ScenarioConfig& sc) {
  Params& p = sc.params;
  NTypeEnsembleParams d;
  d.N = 1.0;
  d.g2 = 0.0;
  d.omega_c = 2.0;
  d.Gamma31 = 0.01;
  d.delta23 = 0.0;
  d.delta21_res = 20.0;
  MicroscopicConfig m;
  m.atom_params = read_ensemble(p, d);
  m.n_atoms = static_cast<int>(p.get_int("oracle.n_atoms", 1));
  if (sc.fock_cutoff) p.set("oracle.fock_cutoff", std::to_string(*sc.fock_cutoff));
  m.fock_cutoff = p.get_int("oracle.fock_cutoff", 3);
  m.eps_p = p.get_double("oracle.eps_p", 0.01);
  m.kappa_e1 = p.get_double("cavity.kappa_e1", 0.45);
  m.kappa_e2 = p.get_double("cavity.kappa_e2", 0.45);
  m.kappa_i = p.get_double("cavity.kappa_i", 0.1);
  const std::vector<double> g1s = p.get_doubles("oracle.g1_values", {0.05, 0.1, 0.15});
  const std::vector<double> grid = read_grid(p, "grid", {"linear", -1.0, 1.0, 41});
  m.validate();
  if (g1s.empty()) throw ConfigError("oracle.g1_values must not be empty");
  const unsigned workers = sc.workers;
  return [m, g1s, grid, workers] {
    Output o;
    o.table.columns = {"g1",        "pull",      "pull_closed_form", "added_loss",
                       "kappa_a_L_closed_form", "fit_width", "fit_peak"};
    for (double g1 : g1s) {
      MicroscopicConfig c = m;
      c.atom_params.g1 = g1;
      const ExtractedRates r = extract_rates(c, grid, workers);
      NTypeEnsembleParams single = c.atom_params;
      single.N = static_cast<double>(c.n_atoms);
      const LinearRates closed = linear_rates(single, 0.0);
      o.table.rows.push_back({g1, r.pull, closed.delta_omega_cav, r.added_loss, closed.kappa_a_L,
                              r.fit.width, r.fit.peak});
    }
    return o;
  };
}

}  // namespace

RunSummary run_scenario(ScenarioConfig& sc) {
  const std::map<std::string, Runner (*)(ScenarioConfig&)> table{
      {"rates-linear", resolve_rates_linear},   {"rates-nonlinear", resolve_rates_nonlinear},
      {"spectrum-g2", resolve_spectrum_g2},     {"g2-tau", resolve_g2_tau},
      {"cascade-fock", resolve_cascade},        {"linewidth", resolve_linewidth},
      {"oracle", resolve_oracle}};
  const auto it = table.find(sc.scenario);
  if (it == table.end()) throw ConfigError("unknown scenario '" + sc.scenario + "'");
  const Runner run = it->second(sc);
  require_all_used(sc.params);

  const Output out = run();
  RunSummary summary;
  summary.csv_path = sc.output_path;
  summary.manifest_path = sc.output_path + ".manifest.json";
  summary.rows = out.table.rows.size();
  summary.failed_points = out.failed;
  write_csv(summary.csv_path, out.table);

  json manifest;
  manifest["tool"] = "blockade";
  manifest["version"] = kToolVersion;
  manifest["scenario"] = sc.scenario;
  manifest["output"] = summary.csv_path;
  manifest["columns"] = out.table.columns;
  manifest["rows"] = summary.rows;
  manifest["failed_points"] = summary.failed_points;
  manifest["params"] = sc.params.resolved();
  manifest["results"] = out.results;
  std::ofstream mf(summary.manifest_path, std::ios::binary);
  if (!mf) throw ConfigError("cannot open manifest '" + summary.manifest_path + "'");
  mf << manifest.dump(2) << '\n';
  return summary;
}

}  // namespace blockade::experiments
