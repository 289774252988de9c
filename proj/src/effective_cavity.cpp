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

#include "blockade/effective_cavity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "blockade/parallel.hpp"

namespace blockade {

double EffectiveCavityConfig::resolved_eps_p() const {
  if (eps_p) return *eps_p;
  return 0.05 / std::sqrt(kappa_e1);
}

void EffectiveCavityConfig::validate() const {
  if (!(kappa_e1 >= 0.0 && kappa_e2 >= 0.0 && kappa_i >= 0.0)) {
    throw ConfigError("effective cavity: port rates must be >= 0");
  }
  if (std::abs(kappa_e1 + kappa_e2 + kappa_i - 1.0) > 1e-12) {
    throw ConfigError("effective cavity: kappa_e1 + kappa_e2 + kappa_i must equal 1");
  }
  if (!eps_p && kappa_e1 == 0.0) {
    throw ConfigError("effective cavity: default eps_p needs kappa_e1 > 0");
  }
  if (!(resolved_eps_p() >= 0.0) || !std::isfinite(resolved_eps_p())) {
    throw ConfigError("effective cavity: eps_p must be finite and >= 0");
  }
  if (fock_cutoff < 2) throw ConfigError("effective cavity: fock_cutoff must be >= 2");
  if (atom_params) atom_params->validate();
}

EffectiveModel build_effective_model(const EffectiveCavityConfig& cfg, double delta_prime) {
  return build_effective_model(cfg, delta_prime, cfg.fock_cutoff);
}

EffectiveModel build_effective_model(const EffectiveCavityConfig& cfg, double delta_prime,
                                     Index fock_cutoff) {
  cfg.validate();
  EffectiveModel model{Operator::zero(fock_cutoff + 1), {}, {}, 0.0};
  if (cfg.atom_params) {
    model.eff = effective_params(*cfg.atom_params, delta_prime);
    model.shift = dispersive_shift(*cfg.atom_params, delta_prime);
  }
  if (!model.eff.physical()) {
    throw NumericalError("effective cavity: negative absorption rate at this detuning");
  }
  const FockSpace space(fock_cutoff + 1);
  const Operator a = annihilation_op(space);
  const Operator ad = a.adjoint();
  const double drive = std::sqrt(cfg.kappa_e1) * cfg.resolved_eps_p();
  model.h = (model.shift - delta_prime) * number_op(space) + model.eff.eta * (ad * ad * a * a) +
            kI * drive * (ad - a);
  model.channels.push_back({a, 1.0 + model.eff.kappa_a_L});
  if (model.eff.kappa_a_NL > 0.0) model.channels.push_back({a * a, model.eff.kappa_a_NL});
  return model;
}

SweepPoint solve_sweep_point(const EffectiveCavityConfig& cfg, double delta_prime) {
  SweepPoint pt;
  pt.delta_prime = delta_prime;
  Index cutoff = cfg.fock_cutoff;
  for (;;) {
    try {
      const EffectiveModel model = build_effective_model(cfg, delta_prime, cutoff);
      pt.eff = model.eff;
      pt.shift = model.shift;
      pt.fock_cutoff = cutoff;
      const DensityMatrix rho = steady_state(build_liouvillian(model.h, model.channels));
      const Index dims[] = {cutoff + 1};
      check_truncation(rho, dims);
      const Operator a = annihilation_op(FockSpace(cutoff + 1));
      pt.mean_n = expectation(rho, a.adjoint() * a).real();
      const double eps = cfg.resolved_eps_p();
      pt.transmission = cfg.kappa_e2 * pt.mean_n / (eps * eps);
      pt.g2_0 = g2_zero(rho);
      return pt;
    } catch (const TruncationError& e) {
      if (2 * cutoff > 4 * cfg.fock_cutoff) {
        pt.error = e.what();
        return pt;
      }
      cutoff *= 2;
    } catch (const std::exception& e) {
      pt.error = e.what();
      return pt;
    }
  }
}

std::vector<SweepPoint> transmission_sweep(const EffectiveCavityConfig& cfg) {
  cfg.validate();
  if (cfg.detuning_grid.empty()) throw ConfigError("transmission_sweep: empty detuning grid");
  std::vector<SweepPoint> out(cfg.detuning_grid.size());
  parallel_for(out.size(), cfg.workers,
               [&](std::size_t i) { out[i] = solve_sweep_point(cfg, cfg.detuning_grid[i]); });
  return out;
}

double weak_drive_g2_analytic(double kappa_t, double kappa_nl, double eta, double delta_eff) {
  const double num = 4.0 * (delta_eff * delta_eff + 0.25 * kappa_t * kappa_t);
  const double shifted = 2.0 * delta_eff + 2.0 * eta;
  const double width = kappa_t + kappa_nl;
  return num / (shifted * shifted + width * width);
}

double extract_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw NumericalError("extract_fwhm: need at least three points");
  }
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  if (peak == 0 || peak + 1 == y.size()) {
    throw NumericalError("extract_fwhm: maximum on the grid edge");
  }
  const double half = 0.5 * y[peak];
  auto crossing = [&](std::size_t inner, std::size_t outer) {
    return x[inner] + (half - y[inner]) * (x[outer] - x[inner]) / (y[outer] - y[inner]);
  };

  std::size_t i = peak;
  while (i > 0 && y[i - 1] > half) --i;
  if (i == 0) throw NumericalError("extract_fwhm: no half-maximum crossing below the peak");
  const double left = crossing(i, i - 1);

  std::size_t j = peak;
  while (j + 1 < y.size() && y[j + 1] > half) ++j;
  if (j + 1 == y.size()) {
    throw NumericalError("extract_fwhm: no half-maximum crossing above the peak");
  }
  const double right = crossing(j, j + 1);
  return right - left;
}

double extract_fwhm(const std::vector<SweepPoint>& sweep) {
  std::vector<double> x, y;
  for (const SweepPoint& p : sweep) {
    if (!p.ok()) continue;
    x.push_back(p.delta_prime);
    y.push_back(p.transmission);
  }
  return extract_fwhm(x, y);
}

std::vector<double> geometric_grid(double inner, double outer, int per_side) {
  if (!(inner > 0.0 && outer >= inner) || per_side < 1) {
    throw ConfigError("geometric_grid: need 0 < inner <= outer and per_side >= 1");
  }
  const double ratio = per_side == 1 ? 1.0 : std::pow(outer / inner, 1.0 / (per_side - 1));
  std::vector<double> pos(static_cast<std::size_t>(per_side));
  for (int k = 0; k < per_side; ++k) pos[static_cast<std::size_t>(k)] = inner * std::pow(ratio, k);
  pos.back() = outer;
  std::vector<double> grid;
  grid.reserve(pos.size() * 2 + 1);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

}  // namespace blockade
