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

#include "blockade/cascade.hpp"

#include <cmath>
#include <string>

namespace blockade {

void CascadeConfig::validate() const {
  const double rates[] = {kappa_d1, kappa_d2, kappa_e1, kappa_e2, kappa_i, kappa_a_L, kappa_a_NL};
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("cascade: rates must be >= 0");
  }
  if (!std::isfinite(eta) || !std::isfinite(alpha)) {
    throw ConfigError("cascade: eta and alpha must be finite");
  }
  if (dim_d < 4 || dim_a < 4) throw ConfigError("cascade: mode dims must be >= 4");
  if (dim_d * dim_a > 1024) throw ConfigError("cascade: composite dimension exceeds 1024");
  if (target_nbar && !(*target_nbar >= 0.0)) throw ConfigError("cascade: target_nbar must be >= 0");
  if (!(truncation_tol > 0.0)) throw ConfigError("cascade: truncation_tol must be > 0");
}

double CascadeConfig::resolved_alpha() const {
  return target_nbar ? calibrate_drive(*this, *target_nbar) : alpha;
}

double calibrate_drive(const CascadeConfig& cfg, double nbar) {
  if (!(nbar >= 0.0)) throw ConfigError("calibrate_drive: nbar must be >= 0");
  if (!(cfg.kappa_d1 > 0.0)) throw ConfigError("calibrate_drive: kappa_d1 must be > 0");
  return std::sqrt(nbar) * cfg.kappa_d() / (2.0 * std::sqrt(cfg.kappa_d1));
}

Liouvillian build_cascade_liouvillian(const CascadeConfig& cfg) {
  cfg.validate();
  const Operator d = tensor(annihilation_op(FockSpace(cfg.dim_d)), Operator::identity(cfg.dim_a));
  const Operator a = tensor(Operator::identity(cfg.dim_d), annihilation_op(FockSpace(cfg.dim_a)));
  const Operator dd = d.adjoint(), ad = a.adjoint();
  const double alpha = cfg.resolved_alpha();

  const Operator h = -kI * std::sqrt(cfg.kappa_d1) * alpha * (dd - d) + cfg.eta * (ad * ad * a * a);
  SuperoperatorBuilder b(d.dim());
  b.add_hamiltonian(h);
  b.add_dissipator(d, cfg.kappa_d());
  b.add_dissipator(a, cfg.kappa_a());
  b.add_dissipator(a * a, cfg.kappa_a_NL);

  // -sqrt(k_d2 k_e1) (a^dag d rho - d rho a^dag - a rho d^dag + rho d^dag a)
  const double c = std::sqrt(cfg.kappa_d2 * cfg.kappa_e1);
  if (c > 0.0) {
    b.add_left((ad * d).matrix(), -c);
    b.add_sandwich(d.matrix(), ad.matrix(), c);
    b.add_sandwich(a.matrix(), dd.matrix(), c);
    b.add_right((dd * a).matrix(), -c);
  }
  return Liouvillian(d.dim(), b.build());
}

DensityMatrix cascade_steady_state(const CascadeConfig& cfg) {
  const DensityMatrix rho = steady_state(build_cascade_liouvillian(cfg));
  const Index dims[] = {cfg.dim_d, cfg.dim_a};
  check_truncation(rho, dims, cfg.truncation_tol);
  return rho;
}

namespace {

// Embeds a dim x dim single-mode index into a larger cutoff.
Matrix pad_two_mode(const Matrix& rho, Index dim, Index padded) {
  Matrix out = Matrix::Zero(padded * padded, padded * padded);
  for (Index i = 0; i < dim * dim; ++i) {
    const Index pi = (i / dim) * padded + i % dim;
    for (Index j = 0; j < dim * dim; ++j) {
      out(pi, (j / dim) * padded + j % dim) = rho(i, j);
    }
  }
  return out;
}

}  // namespace

DensityMatrix reflected_mode_state(const DensityMatrix& rho, const CascadeConfig& cfg) {
  if (cfg.dim_d != cfg.dim_a) throw ConfigError("reflected_mode_state: mode dims must be equal");
  const Index dim = cfg.dim_d;
  if (rho.dim() != dim * dim) throw ConfigError("reflected_mode_state: state dimension mismatch");
  const double denom = cfg.kappa_d2 + cfg.kappa_e1;
  if (!(denom > 0.0)) throw ConfigError("reflected_mode_state: k_d2 + k_e1 must be > 0");

  const double theta = std::atan2(std::sqrt(cfg.kappa_e1), std::sqrt(cfg.kappa_d2));
  const Index padded = 2 * dim - 1;
  const FockSpace space(padded);
  const Matrix u = beam_splitter_unitary(space, space, theta).matrix();
  const Matrix rotated = u * pad_two_mode(rho.matrix(), dim, padded) * u.adjoint();
  const Index dims[] = {padded, padded};
  const Matrix c = partial_trace(rotated, dims, 0);

  double leak = 0.0;
  for (Index n = dim; n < padded; ++n) leak += c(n, n).real();
  if (leak > 1e-6) {
    throw TruncationError("reflected_mode_state: weight " + std::to_string(leak) +
                          " above the cutoff");
  }
  return DensityMatrix::normalized(c.topLeftCorner(dim, dim));
}

ModeStatistics mode_fock_statistics(const DensityMatrix& rho, const CascadeConfig& cfg,
                                    CascadeMode mode) {
  ModeStatistics out;
  out.mode = mode;
  const Index dims[] = {cfg.dim_d, cfg.dim_a};
  switch (mode) {
    case CascadeMode::kIncident:
      out.probabilities = fock_probabilities(partial_trace(rho, dims, 0));
      break;
    case CascadeMode::kTransmitted:
      out.probabilities = fock_probabilities(partial_trace(rho, dims, 1));
      break;
    case CascadeMode::kReflected:
      out.probabilities = fock_probabilities(reflected_mode_state(rho, cfg));
      break;
  }
  for (std::size_t n = 0; n < out.probabilities.size(); ++n) {
    out.mean_n += static_cast<double>(n) * out.probabilities[n];
  }
  return out;
}

const char* mode_name(CascadeMode mode) {
  switch (mode) {
    case CascadeMode::kIncident:
      return "incident";
    case CascadeMode::kTransmitted:
      return "transmitted";
    case CascadeMode::kReflected:
      return "reflected";
  }
  return "unknown";
}

}  // namespace blockade
