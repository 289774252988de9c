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

#include "blockade/microscopic.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "blockade/parallel.hpp"

namespace blockade {

void MicroscopicConfig::validate() const {
  if (n_atoms != 1 && n_atoms != 2) throw ConfigError("microscopic: n_atoms must be 1 or 2");
  if (fock_cutoff < 3) throw ConfigError("microscopic: fock_cutoff must be >= 3");
  const NTypeEnsembleParams& p = atom_params;
  const double rates[] = {p.g1,      p.g2,      p.omega_c, p.Gamma21, p.Gamma23, p.Gamma31,
                          p.Gamma41, p.Gamma42, p.Gamma43, kappa_e1,  kappa_e2,  kappa_i};
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("microscopic: rates must be >= 0");
  }
  if (!std::isfinite(delta) || !(eps_p >= 0.0)) {
    throw ConfigError("microscopic: delta must be finite and eps_p >= 0");
  }
  Index dim = fock_cutoff + 1;
  for (int j = 0; j < n_atoms; ++j) dim *= 4;
  if (dim > kMaxCompositeDim) {
    throw ConfigError("microscopic: composite dimension " + std::to_string(dim) +
                      " exceeds " + std::to_string(kMaxCompositeDim));
  }
}

std::vector<Index> MicroscopicConfig::dims() const {
  std::vector<Index> out(static_cast<std::size_t>(n_atoms), 4);
  out.push_back(fock_cutoff + 1);
  return out;
}

Index MicroscopicConfig::composite_dim() const {
  Index dim = 1;
  for (Index d : dims()) dim *= d;
  return dim;
}

namespace {

Operator embed(const MicroscopicConfig& cfg, std::size_t slot, const Operator& local) {
  const std::vector<Index> dims = cfg.dims();
  Operator out = slot == 0 ? local : Operator::identity(dims[0]);
  for (std::size_t k = 1; k < dims.size(); ++k) {
    out = tensor(out, k == slot ? local : Operator::identity(dims[k]));
  }
  return out;
}

}  // namespace

Operator atomic_sigma(const MicroscopicConfig& cfg, int atom, int m, int n) {
  if (atom < 0 || atom >= cfg.n_atoms || m < 1 || m > 4 || n < 1 || n > 4) {
    throw ConfigError("atomic_sigma: index out of range");
  }
  Matrix s = Matrix::Zero(4, 4);
  s(m - 1, n - 1) = 1.0;
  return embed(cfg, static_cast<std::size_t>(atom), Operator(s));
}

Operator cavity_annihilation(const MicroscopicConfig& cfg) {
  return embed(cfg, static_cast<std::size_t>(cfg.n_atoms),
               annihilation_op(FockSpace(cfg.fock_cutoff + 1)));
}

FullModel build_full_model(const MicroscopicConfig& cfg) {
  cfg.validate();
  const NTypeEnsembleParams& p = cfg.atom_params;
  const Operator a = cavity_annihilation(cfg);
  const Operator ad = a.adjoint();
  const double d21 = p.delta21_res - cfg.delta;
  const double d43 = p.delta43_res - cfg.delta;
  const double d23 = p.delta23;

  Operator h = -cfg.delta * (ad * a) + kI * std::sqrt(cfg.kappa_e1) * cfg.eps_p * (ad - a);
  std::vector<CollapseChannel> channels;
  for (int j = 0; j < cfg.n_atoms; ++j) {
    auto s = [&](int m, int n) { return atomic_sigma(cfg, j, m, n); };
    const Operator s12 = s(1, 2), s34 = s(3, 4), s32 = s(3, 2);
    h += d21 * s(2, 2) + (d21 - d23) * s(3, 3) + (d21 - d23 + d43) * s(4, 4);
    h += kI * p.g1 * (ad * s12 - s12.adjoint() * a);
    h += kI * p.g2 * (ad * s34 - s34.adjoint() * a);
    h += kI * p.omega_c * (s32 - s32.adjoint());

    channels.push_back({s(1, 4), p.Gamma41});
    channels.push_back({s(3, 4), p.Gamma43});
    channels.push_back({s(2, 4), p.Gamma42});
    channels.push_back({s12, p.Gamma21});
    channels.push_back({s32, p.Gamma23});
    channels.push_back({s(1, 3), p.Gamma31});
  }
  channels.push_back({a, cfg.kappa_e1 + cfg.kappa_e2 + cfg.kappa_i});
  return {h, channels, cfg.dims()};
}

double atomic_population(const MicroscopicConfig& cfg, const DensityMatrix& rho) {
  double total = 0.0;
  for (int j = 0; j < cfg.n_atoms; ++j) {
    for (int n = 1; n <= 4; ++n) total += expectation(rho, atomic_sigma(cfg, j, n, n)).real();
  }
  return total;
}

MicroscopicPoint microscopic_transmission(const MicroscopicConfig& cfg) {
  if (!(cfg.eps_p > 0.0)) throw ConfigError("microscopic_transmission: eps_p must be > 0");
  const FullModel model = build_full_model(cfg);
  const DensityMatrix rho = steady_state(build_liouvillian(model.h, model.channels));
  check_truncation(rho, model.dims);
  const Operator a = cavity_annihilation(cfg);
  MicroscopicPoint pt;
  pt.delta = cfg.delta;
  pt.mean_n = expectation(rho, a.adjoint() * a).real();
  pt.transmission = cfg.kappa_e2 * pt.mean_n / (cfg.eps_p * cfg.eps_p);
  return pt;
}

LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& t) {
  if (x.size() != t.size() || x.size() < 3) {
    throw NumericalError("fit_lorentzian: need at least three points");
  }
  const auto n = static_cast<Index>(x.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double ti = t[static_cast<std::size_t>(i)];
    if (!(ti > 0.0)) throw NumericalError("fit_lorentzian: non-positive transmission");
    design(i, 0) = 1.0;
    design(i, 1) = xi;
    design(i, 2) = xi * xi;
    rhs(i) = 1.0 / ti;
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  if (!(c(2) > 0.0)) throw NumericalError("fit_lorentzian: data is not peaked");
  LorentzianFit fit;
  fit.center = -c(1) / (2.0 * c(2));
  const double floor = c(0) - c(2) * fit.center * fit.center;
  if (!(floor > 0.0)) throw NumericalError("fit_lorentzian: data is not Lorentzian");
  fit.width = 2.0 * std::sqrt(floor / c(2));
  fit.peak = 1.0 / floor;
  return fit;
}

ExtractedRates extract_rates(const MicroscopicConfig& cfg, const std::vector<double>& grid,
                             unsigned workers) {
  cfg.validate();
  if (grid.size() < 3) throw ConfigError("extract_rates: need at least three detunings");
  ExtractedRates out;
  out.points.resize(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    MicroscopicConfig c = cfg;
    c.delta = grid[i];
    try {
      out.points[i] = microscopic_transmission(c);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const std::string& e : errors) {
    if (!e.empty()) throw NumericalError("extract_rates: " + e);
  }
  std::vector<double> t;
  for (const MicroscopicPoint& pt : out.points) t.push_back(pt.transmission);
  out.fit = fit_lorentzian(grid, t);
  out.pull = out.fit.center;
  out.added_loss = out.fit.width - (cfg.kappa_e1 + cfg.kappa_e2 + cfg.kappa_i);
  return out;
}

}  // namespace blockade
