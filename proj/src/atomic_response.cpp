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

#include "blockade/atomic_response.hpp"

#include <cmath>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

using cd = std::complex<double>;

struct LevelDecay {
  double G1, G2, G3, G4;
};

LevelDecay level_decay(const NTypeEnsembleParams& p) {
  return {0.0, p.Gamma21 + p.Gamma23, p.Gamma31, p.Gamma41 + p.Gamma42 + p.Gamma43};
}

// 1 / (i*d + g + |Oc|^2 / (i*(d - d23) + g2ph)), rewritten as
// (i*(d - d23) + g2ph) / ((i*d + g) * (i*(d - d23) + g2ph) + |Oc|^2).
cd inverse_eit_response(double detuning, double coherence, double d23, double two_photon_decay,
                        double omega_c) {
  const cd two_photon{two_photon_decay, detuning - d23};
  const cd one_photon{coherence, detuning};
  return two_photon / (one_photon * two_photon + omega_c * omega_c);
}

void require_y_defined(const NTypeEnsembleParams& p) {
  if (p.Gamma31 == 0.0) throw ConfigError("atomic response: Gamma31 = 0 makes Y1, Y2 singular");
  if (p.Gamma21 + p.Gamma23 == 0.0) {
    throw ConfigError("atomic response: Gamma21 + Gamma23 = 0 makes Y1, Y2 singular");
  }
}

}  // namespace

void NTypeEnsembleParams::validate() const {
  if (!(N >= 1.0)) throw ConfigError("NTypeEnsembleParams: N must be >= 1");
  if (!(omega_c > 0.0)) throw ConfigError("NTypeEnsembleParams: omega_c must be > 0");
  const double rates[] = {g1, g2, Gamma21, Gamma23, Gamma31, Gamma41, Gamma42, Gamma43};
  for (double r : rates) {
    if (!(r >= 0.0)) throw ConfigError("NTypeEnsembleParams: rates must be >= 0");
  }
  const double detunings[] = {delta23, delta21_res, delta43_res};
  for (double d : detunings) {
    if (!std::isfinite(d)) throw ConfigError("NTypeEnsembleParams: non-finite detuning");
  }
}

DephasingTable dephasing_rates(const NTypeEnsembleParams& p) {
  const auto [G1, G2, G3, G4] = level_decay(p);
  return {
      .gamma12 = 0.5 * (G1 + G2),
      .gamma13 = 0.5 * (G1 + G3),
      .gamma34 = 0.5 * (G3 + G4),
      .gamma24 = 0.5 * (G2 + G4),
      .gamma23 = 0.5 * (G2 + G3),
      .gamma14 = 0.5 * (G1 + G4),
  };
}

cd inverse_f1(const NTypeEnsembleParams& p, double delta_prime) {
  const DephasingTable g = dephasing_rates(p);
  return inverse_eit_response(p.delta21_res - delta_prime, g.gamma12, p.delta23, g.gamma13,
                              p.omega_c);
}

cd inverse_f2(const NTypeEnsembleParams& p, double delta_prime) {
  const DephasingTable g = dephasing_rates(p);
  return inverse_eit_response(p.delta43_res - delta_prime, g.gamma34, p.delta23, g.gamma24,
                              p.omega_c);
}

LinearResponse linear_responses(const NTypeEnsembleParams& p, double delta_prime) {
  require_y_defined(p);
  const DephasingTable g = dephasing_rates(p);
  const double d21 = p.delta21_res - delta_prime;
  const double d43 = p.delta43_res - delta_prime;
  const double oc2 = p.omega_c * p.omega_c;

  LinearResponse r;
  r.F1 = cd{g.gamma12, d21} + oc2 / cd{g.gamma13, d21 - p.delta23};
  r.F2 = cd{g.gamma34, d43} + oc2 / cd{g.gamma24, d43 - p.delta23};
  const double lower = p.Gamma31 * (p.Gamma21 + p.Gamma23);
  r.Y1 = (p.Gamma23 + 2.0 * p.Gamma31) / lower;
  r.Y2 = p.Gamma23 / lower;
  return r;
}

LinearRates linear_rates(const NTypeEnsembleParams& p, double delta_prime) {
  // Im[F]/|F|^2 = -Im[1/F] and Re[F]/|F|^2 = Re[1/F].
  const cd inv1 = inverse_f1(p, delta_prime);
  const double scale = p.g1 * p.g1 * p.N;
  return {.delta_omega_cav = scale * inv1.imag(), .kappa_a_L = 2.0 * scale * inv1.real()};
}

EffectiveParams effective_params(const NTypeEnsembleParams& p, double delta_prime) {
  const LinearResponse lr = linear_responses(p, delta_prime);
  const cd inv1 = inverse_f1(p, delta_prime);
  const cd inv2 = inverse_f2(p, delta_prime);
  const double r1 = inv1.real();
  const double i1 = inv1.imag();
  const double r2 = inv2.real();
  const double i2 = inv2.imag();
  const double g1sq = p.g1 * p.g1;
  const double g2sq = p.g2 * p.g2;
  const double scale = g1sq * p.N;

  EffectiveParams e;
  e.delta_omega_cav = scale * i1;
  e.kappa_a_L = 2.0 * scale * r1;
  e.kappa_a_NL = 4.0 * scale * (-g1sq * lr.Y1 * r1 * r1 + g2sq * lr.Y2 * r2 * r1);
  e.eta = 2.0 * scale * (-g1sq * lr.Y1 * i1 * r1 + g2sq * lr.Y2 * i2 * r1);
  return e;
}

double dispersive_shift(const NTypeEnsembleParams& p, double delta_prime) {
  if (delta_prime == 0.0) return 0.0;
  return linear_rates(p, delta_prime).delta_omega_cav - linear_rates(p, 0.0).delta_omega_cav;
}

}  // namespace blockade
