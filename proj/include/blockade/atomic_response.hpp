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

// Closed-form response of an ensemble of N-type atoms (levels 1,3 ground;
// 2,4 excited) after adiabatic elimination. All rates are in units of the
// total cavity decay rate kappa.

#include <complex>

namespace blockade {

struct NTypeEnsembleParams {
  double N = 12.5e6;
  double g1 = 0.15;
  double g2 = 0.15;
  double omega_c = 10.0;  // half Rabi frequency of the coupling laser
  double Gamma21 = 4.5;
  double Gamma23 = 4.5;
  double Gamma31 = 1e-5;
  double Gamma41 = 0.0;
  double Gamma42 = 0.0;
  double Gamma43 = 4.5;
  double delta23 = 4560.0;       // omega_23 - omega_c
  double delta21_res = 4560.0;   // omega_21 - omega'_cav
  double delta43_res = -0.0219;  // omega_43 - omega'_cav

  // Throws ConfigError on N < 1, negative rates or omega_c <= 0.
  void validate() const;
};

// gamma_mn = (Gamma_m + Gamma_n) / 2 from total level decay rates, with
// Gamma_1 = 0, Gamma_2 = Gamma21 + Gamma23, Gamma_3 = Gamma31 and
// Gamma_4 = Gamma41 + Gamma42 + Gamma43.
struct DephasingTable {
  double gamma12 = 0.0;
  double gamma13 = 0.0;
  double gamma34 = 0.0;
  double gamma24 = 0.0;
  double gamma23 = 0.0;
  double gamma14 = 0.0;
};

struct LinearResponse {
  std::complex<double> F1;
  std::complex<double> F2;
  double Y1 = 0.0;
  double Y2 = 0.0;
};

struct EffectiveParams {
  double delta_omega_cav = 0.0;
  double kappa_a_L = 0.0;
  double kappa_a_NL = 0.0;
  double eta = 0.0;

  // True when both absorption rates are non-negative.
  bool physical() const { return kappa_a_L >= 0.0 && kappa_a_NL >= 0.0; }
};

// Pull and one-photon absorption only; these need no Y1/Y2 and stay finite in
// the perfect-EIT limit.
struct LinearRates {
  double delta_omega_cav = 0.0;
  double kappa_a_L = 0.0;
};

DephasingTable dephasing_rates(const NTypeEnsembleParams& p);

// F1, F2 at probe detuning delta_prime from the pulled resonance, i.e. with
// Delta21 = delta21_res - delta_prime and Delta43 = delta43_res - delta_prime.
// Throws ConfigError when Gamma31 = 0 or Gamma21 + Gamma23 = 0.
LinearResponse linear_responses(const NTypeEnsembleParams& p, double delta_prime);

// 1/F1 and 1/F2 evaluated without forming F; zero when the EIT term diverges.
std::complex<double> inverse_f1(const NTypeEnsembleParams& p, double delta_prime);
std::complex<double> inverse_f2(const NTypeEnsembleParams& p, double delta_prime);

LinearRates linear_rates(const NTypeEnsembleParams& p, double delta_prime);

// The four effective rates with the ensemble sum replaced by N.
EffectiveParams effective_params(const NTypeEnsembleParams& p, double delta_prime);

// d[delta_omega_cav](delta_prime) = delta_omega_cav(delta_prime) - delta_omega_cav(0).
double dispersive_shift(const NTypeEnsembleParams& p, double delta_prime);

}  // namespace blockade
