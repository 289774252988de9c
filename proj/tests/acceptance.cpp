// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "blockade/cascade.hpp"
#include "blockade/classical_fp.hpp"
#include "blockade/effective_cavity.hpp"
#include "blockade/microscopic.hpp"

using namespace blockade;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome closed_form_rates() {
  const EffectiveParams e = effective_params(NTypeEnsembleParams{}, 0.0);
  const bool pass = std::abs(e.kappa_a_L - 0.02812) <= 0.0002 &&
                    std::abs(e.kappa_a_NL - 28.12) <= 0.15 &&
                    std::abs(e.delta_omega_cav) <= 1e-5 && std::abs(e.eta) <= 5e-4;
  return {pass, fmt::format("kappa_a_L={:.6g} kappa_a_NL={:.6g} delta_omega_cav={:.3g} eta={:.3g}",
                            e.kappa_a_L, e.kappa_a_NL, e.delta_omega_cav, e.eta)};
}

Outcome dispersive_shift_check() {
  const double d = dispersive_shift(NTypeEnsembleParams{}, -0.005);
  return {std::abs(d / 18.22 - 1.0) <= 0.01, fmt::format("d[dw](-0.005)={:.6g}", d)};
}

Outcome blockade_depth() {
  EffectiveCavityConfig cfg;
  cfg.fock_cutoff = 20;
  cfg.detuning_grid = geometric_grid(1e-6, 2e-3, 100);
  const std::vector<SweepPoint> sweep = transmission_sweep(cfg);
  double g2_res = NAN, t_max = 0.0;
  for (const SweepPoint& p : sweep) {
    if (!p.ok()) return {false, "sweep point failed: " + p.error};
    if (p.delta_prime == 0.0) g2_res = p.g2_0;
    t_max = std::max(t_max, p.transmission);
  }
  const double fwhm = extract_fwhm(sweep);
  double worst = 0.0;
  int inside = 0;
  for (const SweepPoint& p : sweep) {
    if (p.transmission >= 0.5 * t_max) {
      worst = std::max(worst, p.g2_0);
      ++inside;
    }
  }
  const bool pass = g2_res <= 0.01 && worst < 0.05 && inside > 2;
  return {pass, fmt::format("{} points, g2(0)={:.4g} at resonance, FWHM={:.4g}, max g2 inside "
                            "FWHM={:.4g} over {} points",
                            sweep.size(), g2_res, fwhm, worst, inside)};
}

Outcome weak_drive_oracle() {
  const EffectiveParams e = effective_params(NTypeEnsembleParams{}, 0.0);
  const double kt = 1.0 + e.kappa_a_L;
  const double drive = std::sqrt(0.45) * 0.02;
  const FockSpace s(9);
  const Operator a = annihilation_op(s), ad = a.adjoint();
  double worst = 0.0, at_operating = NAN;
  for (double knl : {0.0, 1.0, 5.0, 28.12, 60.0}) {
    for (double de : {-1.0, -0.3, 0.0, 0.3, 1.0}) {
      const Operator h = de * number_op(s) + e.eta * (ad * ad * a * a) + kI * drive * (ad - a);
      const std::vector<CollapseChannel> ch{{a, kt}, {a * a, knl}};
      const double g2 = g2_zero(steady_state(build_liouvillian(h, ch)));
      const double oracle = weak_drive_g2_analytic(kt, knl, e.eta, de);
      worst = std::max(worst, std::abs(g2 / oracle - 1.0));
      if (knl == 28.12 && de == 0.0) at_operating = g2;
    }
  }
  const bool pass = worst <= 0.02 && std::abs(at_operating - 0.00124) <= 0.02 * 0.00124;
  return {pass, fmt::format("max relative deviation {:.3g} over 25 points, g2(28.12, 0)={:.5g}",
                            worst, at_operating)};
}

Outcome g2_tau_check() {
  EffectiveCavityConfig cfg;
  cfg.fock_cutoff = 12;
  const EffectiveModel m = build_effective_model(cfg, 0.0);
  const Liouvillian l = build_liouvillian(m.h, m.channels);
  const DensityMatrix rho = steady_state(l);
  std::vector<double> taus;
  for (int i = 0; i <= 400; ++i) taus.push_back(0.05 * i);
  const TimeSeries g = g2_tau(l, rho, taus);
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < g.values.size(); ++i) {
    worst_drop = std::max(worst_drop, g.values[i - 1] - g.values[i]);
  }
  const double end = g.values.back();
  const bool pass = worst_drop <= 1e-4 && std::abs(end - 1.0) <= 0.01;
  return {pass, fmt::format("g2(0)={:.4g}, g2(20)={:.6g}, largest step decrease {:.3g}",
                            g.values.front(), end, worst_drop)};
}

double poisson(double mean, std::size_t n) {
  return std::exp(-mean + static_cast<double>(n) * std::log(mean) - std::lgamma(n + 1.0));
}

Outcome cascade_linear() {
  CascadeConfig cfg;
  cfg.target_nbar = 0.6;
  const DensityMatrix rho = cascade_steady_state(cfg);
  const ModeStatistics a = mode_fock_statistics(rho, cfg, CascadeMode::kTransmitted);
  const ModeStatistics c = mode_fock_statistics(rho, cfg, CascadeMode::kReflected);
  double tv = 0.0;
  for (std::size_t n = 0; n < a.probabilities.size(); ++n) {
    tv += std::abs(a.probabilities[n] - poisson(0.6, n));
  }
  tv *= 0.5;
  return {tv <= 1e-2 && c.probabilities[0] >= 0.999,
          fmt::format("transmitted TV distance to Poisson(0.6)={:.3g}, reflected P0={:.6f}", tv,
                      c.probabilities[0])};
}

Outcome cascade_blockade() {
  CascadeConfig cfg;
  cfg.target_nbar = 0.6;
  cfg.kappa_a_NL = 28.0;
  const DensityMatrix rho = cascade_steady_state(cfg);
  const ModeStatistics d = mode_fock_statistics(rho, cfg, CascadeMode::kIncident);
  const ModeStatistics a = mode_fock_statistics(rho, cfg, CascadeMode::kTransmitted);
  const ModeStatistics c = mode_fock_statistics(rho, cfg, CascadeMode::kReflected);
  const double incident = d.probabilities[2] / d.probabilities[1];
  const double transmitted = a.probabilities[2] / a.probabilities[1];
  const auto& pc = c.probabilities;
  const bool pass = transmitted * 10.0 <= incident && pc[0] > pc[1] && pc[1] > pc[2];
  return {pass, fmt::format("P2/P1 incident={:.4g} transmitted={:.4g}; reflected P0={:.4g} "
                            "P1={:.4g} P2={:.4g}",
                            incident, transmitted, pc[0], pc[1], pc[2])};
}

Outcome rate_bridge() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Index dim = 13;
  const FockSpace s(dim);
  const Operator a = annihilation_op(s);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double kl = 2.0 * u(rng), knl = 40.0 * u(rng);
    std::vector<double> p(dim);
    double total = 0.0;
    for (double& x : p) total += (x = u(rng));
    Matrix rho = Matrix::Zero(dim, dim);
    for (Index n = 0; n < dim; ++n) rho(n, n) = (p[n] /= total);
    const std::vector<CollapseChannel> ch{{a, kl}, {a * a, knl}};
    const Matrix drho = build_liouvillian(Operator::zero(dim), ch).apply(rho);
    const std::vector<double> rates = fock_rate_step(p, kl, knl);
    for (Index n = 0; n < dim; ++n) worst = std::max(worst, std::abs(drho(n, n).real() - rates[n]));
  }
  return {worst <= 1e-12, fmt::format("max |diag(L rho) - rate step| = {:.3g} over 100 vectors", worst)};
}

Outcome classical_linewidth() {
  const FPGeometry g;
  const double bare = g.bare_linewidth();
  const double flat = narrowed_linewidth(g, [](double) { return 0.0; }).delta_omega_prime;
  const double s = 1e-14;
  const double lin = narrowed_linewidth(g, [s](double x) { return s * x; }).delta_omega_prime;
  const double lin_expected = bare / (1.0 + g.l_m / (2.0 * g.L) * g.omega_cav() * s);
  const double eit =
      narrowed_linewidth(g, eit_profile(NTypeEnsembleParams{}, g, bare)).delta_omega_prime;
  const double e0 = std::abs(flat / bare - 1.0), e1 = std::abs(lin / lin_expected - 1.0);
  return {e0 <= 1e-3 && e1 <= 1e-2 && eit < bare,
          fmt::format("empty cavity rel err {:.2g}, linear profile rel err {:.2g}, EIT "
                      "narrowing ratio {:.4g}",
                      e0, e1, eit / bare)};
}

Outcome microscopic_scaling() {
  auto config = [](double g1) {
    MicroscopicConfig c;
    c.atom_params.N = 1.0;
    c.atom_params.g1 = g1;
    c.atom_params.g2 = 0.0;
    c.atom_params.omega_c = 2.0;
    c.atom_params.Gamma31 = 0.01;
    c.atom_params.delta23 = 0.0;
    c.atom_params.delta21_res = 20.0;
    return c;
  };
  std::vector<double> grid;
  for (int i = -20; i <= 20; ++i) grid.push_back(0.05 * i);
  const ExtractedRates ref = extract_rates(config(0.05), grid);
  double worst = 0.0;
  for (double g : {0.1, 0.15}) {
    const ExtractedRates r = extract_rates(config(g), grid);
    const double scale = (g / 0.05) * (g / 0.05);
    worst = std::max(worst, std::abs(r.pull / ref.pull / scale - 1.0));
    worst = std::max(worst, std::abs(r.added_loss / ref.added_loss / scale - 1.0));
  }
  MicroscopicConfig eit = config(0.15);
  eit.atom_params.delta21_res = 0.0;
  eit.atom_params.omega_c = 10.0;
  const double pull = extract_rates(eit, grid).pull;
  const bool pass = worst <= 0.05 && std::abs(pull) <= 1e-6 * std::abs(ref.pull) * 9.0;
  return {pass, fmt::format("max deviation from g1^2 scaling {:.3g}; pull at two-photon "
                            "resonance {:.3g} (detuned pull at g1=0.15: {:.3g})",
                            worst, pull, 9.0 * ref.pull)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form rates at the operating point", closed_form_rates},
      {"dispersive shift at -0.005 kappa", dispersive_shift_check},
      {"blockade depth of the transmission sweep", blockade_depth},
      {"weak-drive g2 oracle equivalence", weak_drive_oracle},
      {"g2(tau) monotone rise to 1", g2_tau_check},
      {"matched linear cascade", cascade_linear},
      {"cascade blockade", cascade_blockade},
      {"rate-equation bridge", rate_bridge},
      {"classical linewidth", classical_linewidth},
      {"microscopic g1^2 scaling", microscopic_scaling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
