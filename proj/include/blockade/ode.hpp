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

// Dormand-Prince 5(4) embedded Runge-Kutta integrator for autonomous linear
// or nonlinear systems y' = f(y) over complex vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "blockade/errors.hpp"

namespace blockade {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 picks a step from the derivative norm
  std::size_t max_steps = 50'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Advances y from t0 to t1 in place. `rhs(y, dydt)` must fill dydt.
// Throws NumericalError on step-size underflow or when max_steps is exceeded.
template <class Rhs>
OdeStats integrate_dopri5(Rhs&& rhs, Eigen::VectorXcd& y, double t0, double t1,
                          const OdeOptions& opt = {}) {
  OdeStats stats;
  if (t1 == t0) return stats;
  if (t1 < t0) throw ConfigError("integrate_dopri5: backward integration not supported");

  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Eigen::Index n = y.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n);

  auto error_norm = [&](const Eigen::VectorXcd& err) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      const double r = std::abs(err(i)) / scale;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(n, 1)));
  };

  rhs(y, k1);
  double h = opt.initial_step;
  if (h <= 0.0) {
    const double dnorm = k1.cwiseAbs().maxCoeff();
    const double ynorm = y.cwiseAbs().maxCoeff();
    h = dnorm > 0.0 ? 0.01 * std::max(ynorm, opt.atol) / dnorm : (t1 - t0);
    h = std::min(h, t1 - t0);
  }

  double t = t0;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      throw NumericalError("integrate_dopri5: exceeded maximum number of steps");
    }
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    const double min_step = 1e-14 * std::max(1.0, std::abs(t));
    if (h < min_step) {
      throw NumericalError("integrate_dopri5: step-size underflow at t=" + std::to_string(t) +
                           " (stiff problem or tolerance too tight)");
    }

    tmp = y + h * (a21 * k1);
    rhs(tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    rhs(tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(tmp, k6);
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(y_new, k7);

    tmp = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = error_norm(tmp);

    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      k1 = k7;  // first-same-as-last
      ++stats.accepted;
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++stats.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return stats;
}

}  // namespace blockade
