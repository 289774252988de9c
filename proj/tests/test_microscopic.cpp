#include <cmath>
#include <random>
#include <vector>

#include "blockade/microscopic.hpp"
#include "doctest.h"

using namespace blockade;

namespace {

MicroscopicConfig lambda_config(double g1) {
  MicroscopicConfig cfg;
  NTypeEnsembleParams& p = cfg.atom_params;
  p.N = 1.0;
  p.g1 = g1;
  p.g2 = 0.0;
  p.omega_c = 2.0;
  p.Gamma31 = 0.01;
  p.delta23 = 0.0;
  p.delta21_res = 20.0;
  return cfg;
}

std::vector<double> probe_grid() {
  std::vector<double> g;
  for (int i = -20; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

}  // namespace

TEST_CASE("config validation and dimension guard") {
  MicroscopicConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.composite_dim() == 16);
  cfg.n_atoms = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.n_atoms = 2;
  cfg.fock_cutoff = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.fock_cutoff = 255;  // 16 * 256 = 4096
  CHECK_NOTHROW(cfg.validate());
  cfg.fock_cutoff = 256;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.fock_cutoff = 3;
  cfg.atom_params.Gamma21 = -1.0;
  CHECK_THROWS_AS(build_full_model(cfg), ConfigError);
}

TEST_CASE("Hamiltonian is Hermitian") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 1; n <= 2; ++n) {
    MicroscopicConfig cfg;
    cfg.n_atoms = n;
    cfg.delta = u(rng);
    cfg.eps_p = std::abs(u(rng));
    cfg.atom_params.delta23 = u(rng);
    cfg.atom_params.delta21_res = u(rng);
    cfg.atom_params.delta43_res = u(rng);
    const FullModel m = build_full_model(cfg);
    CHECK(m.h.is_hermitian());
    CHECK(m.channels.size() == static_cast<std::size_t>(6 * n + 1));
  }
}

TEST_CASE("isolated excited-state decay") {
  MicroscopicConfig cfg;
  NTypeEnsembleParams& p = cfg.atom_params;
  p.g1 = p.g2 = p.omega_c = 0.0;
  p.Gamma21 = 3.0;
  p.Gamma23 = 1.0;
  p.Gamma31 = 0.0;
  cfg.eps_p = 0.0;
  const FullModel m = build_full_model(cfg);
  const Liouvillian l = build_liouvillian(m.h, m.channels);
  const DensityMatrix rho0 = tensor(DensityMatrix::fock(4, 1), DensityMatrix::fock(4, 0));
  const double t = 0.3;
  const DensityMatrix rho = evolve(l, rho0, t);
  const double lost = 1.0 - std::exp(-4.0 * t);
  CHECK(expectation(rho, atomic_sigma(cfg, 0, 2, 2)).real() ==
        doctest::Approx(std::exp(-4.0 * t)).epsilon(1e-7));
  CHECK(expectation(rho, atomic_sigma(cfg, 0, 1, 1)).real() ==
        doctest::Approx(0.75 * lost).epsilon(1e-7));
  CHECK(expectation(rho, atomic_sigma(cfg, 0, 3, 3)).real() ==
        doctest::Approx(0.25 * lost).epsilon(1e-7));
}

TEST_CASE("atomic population is conserved") {
  MicroscopicConfig cfg;
  cfg.n_atoms = 2;
  cfg.eps_p = 0.5;
  cfg.atom_params.g1 = 0.3;
  cfg.atom_params.g2 = 0.3;
  cfg.atom_params.Gamma41 = 0.5;
  cfg.atom_params.Gamma42 = 0.5;
  const FullModel m = build_full_model(cfg);
  const Liouvillian l = build_liouvillian(m.h, m.channels);
  const DensityMatrix two = DensityMatrix::fock(4, 1);
  DensityMatrix rho = tensor(tensor(two, DensityMatrix::fock(4, 3)), DensityMatrix::fock(4, 0));
  for (int step = 0; step < 4; ++step) {
    rho = evolve(l, rho, 0.25);
    CHECK(std::abs(atomic_population(cfg, rho) - 2.0) < 1e-8);
  }
}

TEST_CASE("lorentzian fit recovers exact data") {
  std::vector<double> x, t;
  for (int i = -10; i <= 10; ++i) {
    x.push_back(0.1 * i);
    const double d = x.back() - 0.07;
    t.push_back(0.8 / (1.0 + 4.0 * d * d / (0.6 * 0.6)));
  }
  const LorentzianFit f = fit_lorentzian(x, t);
  CHECK(f.center == doctest::Approx(0.07).epsilon(1e-10));
  CHECK(f.width == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(f.peak == doctest::Approx(0.8).epsilon(1e-10));
  std::vector<double> dip{0.1, 1.0, 0.1};
  CHECK_THROWS_AS(fit_lorentzian({-1.0, 0.0, 1.0}, {1.0, 0.1, 1.0}), NumericalError);
  CHECK_NOTHROW(fit_lorentzian({-1.0, 0.0, 1.0}, dip));
}

TEST_CASE("bare cavity with a decoupled atom") {
  MicroscopicConfig cfg = lambda_config(0.0);
  const ExtractedRates r = extract_rates(cfg, probe_grid());
  CHECK(std::abs(r.pull) < 1e-10);
  CHECK(std::abs(r.added_loss) < 1e-8);
  CHECK(r.fit.peak == doctest::Approx(4 * 0.45 * 0.45).epsilon(1e-6));
}

TEST_CASE("cavity pull agrees with the closed form") {
  MicroscopicConfig cfg = lambda_config(0.1);
  const ExtractedRates r = extract_rates(cfg, probe_grid(), 2);
  NTypeEnsembleParams one = cfg.atom_params;
  one.N = 1.0;
  const double closed = linear_rates(one, 0.0).delta_omega_cav;
  CHECK(r.pull == doctest::Approx(closed).epsilon(0.05));
}

TEST_CASE("pull and added loss scale as g1 squared") {
  const ExtractedRates ref = extract_rates(lambda_config(0.05), probe_grid());
  for (double g : {0.1, 0.15}) {
    const ExtractedRates r = extract_rates(lambda_config(g), probe_grid());
    const double s = (g / 0.05) * (g / 0.05);
    CHECK(r.pull / ref.pull == doctest::Approx(s).epsilon(0.05));
    CHECK(r.added_loss / ref.added_loss == doctest::Approx(s).epsilon(0.05));
  }
  // Halving g1 quarters the loss.
  const ExtractedRates half = extract_rates(lambda_config(0.075), probe_grid());
  const ExtractedRates full = extract_rates(lambda_config(0.15), probe_grid());
  CHECK(half.added_loss / full.added_loss == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("pull and loss vanish at two-photon resonance") {
  MicroscopicConfig cfg = lambda_config(0.15);
  cfg.atom_params.delta21_res = 0.0;
  cfg.atom_params.omega_c = 10.0;
  const ExtractedRates eit = extract_rates(cfg, probe_grid());
  cfg.atom_params.omega_c = 0.0;
  const ExtractedRates bare = extract_rates(cfg, probe_grid());
  CHECK(std::abs(eit.pull) < 1e-9);
  CHECK(bare.added_loss > 0.005);
  CHECK(std::abs(eit.added_loss) < 0.05 * bare.added_loss);
}
