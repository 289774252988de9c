#include <cmath>
#include <random>
#include <vector>

#include "blockade/cascade.hpp"
#include "doctest.h"

using namespace blockade;

namespace {

CascadeConfig matched() {
  CascadeConfig cfg;
  cfg.target_nbar = 0.6;
  return cfg;
}

double poisson(double mean, int n) {
  return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

double sum(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += x;
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  CascadeConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dim_a = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dim_a = 8;
  cfg.kappa_e2 = -0.1;
  CHECK_THROWS_AS(build_cascade_liouvillian(cfg), ConfigError);
  cfg.kappa_e2 = 0.5;
  cfg.dim_d = cfg.dim_a = 40;
  CHECK_THROWS_AS(build_cascade_liouvillian(cfg), ConfigError);
}

TEST_CASE("drive calibration") {
  CascadeConfig cfg;
  CHECK(calibrate_drive(cfg, 0.0) == 0.0);
  CHECK(calibrate_drive(cfg, 0.6) == doctest::Approx(0.5477225575051661));
  cfg.kappa_d1 = 0.0;
  CHECK_THROWS_AS(calibrate_drive(cfg, 0.6), ConfigError);

  // Isolated source: no coupling to the target.
  CascadeConfig iso = matched();
  iso.kappa_e1 = 0.0;
  iso.dim_d = 14;
  const DensityMatrix rho = steady_state(build_cascade_liouvillian(iso));
  const ModeStatistics d = mode_fock_statistics(rho, iso, CascadeMode::kIncident);
  CHECK(d.mean_n == doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("undriven cascade relaxes to vacuum") {
  CascadeConfig cfg;
  cfg.kappa_a_NL = 3.0;
  const DensityMatrix rho = cascade_steady_state(cfg);
  CHECK(std::abs(rho(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("cascade generator is trace preserving") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    CascadeConfig cfg;
    cfg.kappa_d1 = u(rng);
    cfg.kappa_d2 = u(rng);
    cfg.kappa_e1 = u(rng);
    cfg.kappa_e2 = u(rng);
    cfg.kappa_i = u(rng);
    cfg.kappa_a_L = u(rng);
    cfg.kappa_a_NL = 10.0 * u(rng);
    cfg.eta = u(rng) - 1.0;
    cfg.alpha = u(rng);
    cfg.dim_d = 4 + trial;
    cfg.dim_a = 5;
    CHECK(build_cascade_liouvillian(cfg).trace_defect() < 1e-9);
  }
}

TEST_CASE("matched linear cascade transmits everything") {
  const CascadeConfig cfg = matched();
  const DensityMatrix rho = cascade_steady_state(cfg);

  const ModeStatistics d = mode_fock_statistics(rho, cfg, CascadeMode::kIncident);
  const ModeStatistics a = mode_fock_statistics(rho, cfg, CascadeMode::kTransmitted);
  const ModeStatistics c = mode_fock_statistics(rho, cfg, CascadeMode::kReflected);
  for (const ModeStatistics* s : {&d, &a, &c}) CHECK(std::abs(sum(s->probabilities) - 1.0) < 1e-8);

  CHECK(d.probabilities[0] == doctest::Approx(0.5488).epsilon(1e-3));
  CHECK(d.probabilities[1] == doctest::Approx(0.3293).epsilon(1e-3));
  CHECK(d.probabilities[2] == doctest::Approx(0.0988).epsilon(2e-3));
  CHECK(d.mean_n == doctest::Approx(0.6).epsilon(1e-3));

  double tv = 0.0;
  for (std::size_t n = 0; n < a.probabilities.size(); ++n) {
    tv += std::abs(a.probabilities[n] - poisson(0.6, static_cast<int>(n)));
  }
  CHECK(0.5 * tv < 1e-2);
  CHECK(c.probabilities[0] >= 0.999);

  // Flux leaving the target equals the flux fed in by the source.
  CHECK(cfg.kappa_e2 * a.mean_n == doctest::Approx(cfg.kappa_d2 * d.mean_n).epsilon(0.01));
}

TEST_CASE("two-photon loss blockades the transmitted mode") {
  CascadeConfig cfg = matched();
  const DensityMatrix linear = cascade_steady_state(cfg);
  cfg.kappa_a_NL = 28.0;
  const DensityMatrix rho = cascade_steady_state(cfg);

  const ModeStatistics d = mode_fock_statistics(rho, cfg, CascadeMode::kIncident);
  const ModeStatistics a = mode_fock_statistics(rho, cfg, CascadeMode::kTransmitted);
  const ModeStatistics c = mode_fock_statistics(rho, cfg, CascadeMode::kReflected);
  const double incident = d.probabilities[2] / d.probabilities[1];
  CHECK(incident == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(a.probabilities[2] / a.probabilities[1] < 0.1 * incident);
  CHECK(c.probabilities[0] > c.probabilities[1]);
  CHECK(c.probabilities[1] > c.probabilities[2]);

  const ModeStatistics a0 = mode_fock_statistics(linear, cfg, CascadeMode::kTransmitted);
  const ModeStatistics c0 = mode_fock_statistics(linear, cfg, CascadeMode::kReflected);
  CHECK(1.0 - a.probabilities[0] - a.probabilities[1] <
        1.0 - a0.probabilities[0] - a0.probabilities[1]);
  CHECK(1.0 - c.probabilities[0] > 1.0 - c0.probabilities[0]);
}

TEST_CASE("target does not act back on the source") {
  CascadeConfig cfg = matched();
  const Index dims[] = {cfg.dim_d, cfg.dim_a};
  const DensityMatrix ref = partial_trace(cascade_steady_state(cfg), dims, 0);
  cfg.kappa_a_NL = 17.0;
  cfg.eta = 2.5;
  cfg.kappa_a_L = 0.3;
  const DensityMatrix other = partial_trace(cascade_steady_state(cfg), dims, 0);
  CHECK((ref.matrix() - other.matrix()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("reflected mode reduces to the source without target coupling") {
  CascadeConfig cfg = matched();
  cfg.kappa_e1 = 0.0;
  const DensityMatrix rho = cascade_steady_state(cfg);
  const Index dims[] = {cfg.dim_d, cfg.dim_a};
  const DensityMatrix c = reflected_mode_state(rho, cfg);
  CHECK((c.matrix() - partial_trace(rho, dims, 0).matrix()).cwiseAbs().maxCoeff() < 1e-12);

  cfg.dim_a = 9;
  CHECK_THROWS_AS(reflected_mode_state(rho, cfg), ConfigError);
}

TEST_CASE("reflected mode rejects states with weight above the cutoff") {
  CascadeConfig cfg;
  cfg.dim_d = cfg.dim_a = 4;
  const DensityMatrix top = tensor(DensityMatrix::fock(4, 3), DensityMatrix::fock(4, 3));
  CHECK_THROWS_AS(reflected_mode_state(top, cfg), TruncationError);
}
