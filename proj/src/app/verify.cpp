#include "qlinear/app/verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/analytic/phases.hpp"
#include "qlinear/app/config.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/core/spectral.hpp"
#include "qlinear/devices/spin_flip.hpp"
#include "qlinear/oracle/convergence.hpp"
#include "qlinear/oracle/split_step.hpp"
#include "qlinear/tunneling/scenarios.hpp"
#include "qlinear/tunneling/wkb.hpp"

namespace qlinear::app {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel(double got, double want, double scale = 1.0) {
  return std::abs(got - want) / std::max(std::abs(want), scale);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Outcome {
  double measured;
  double tolerance;
  std::string detail;
  bool passed() const { return measured <= tolerance; }
};

const UnitSystem kNatural = UnitSystem::natural();
const SpatialGrid kGrid(-60.0, 60.0, 2048);

GaussianSpec random_packet(Rng& rng) {
  return {uniform(rng, -3.0, 3.0), uniform(rng, -2.0, 2.0), uniform(rng, 0.8, 1.5)};
}

double random_slope(Rng& rng) {
  const double mag = uniform(rng, 0.5, 2.0);
  return uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
}

Outcome analytic_vs_oracle(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto spec = random_packet(rng);
    const double V0 = random_slope(rng);
    const double dt_total = i == 0 ? 0.5 : 1.0;
    const auto psi = sample_gaussian(spec, kGrid, kNatural);
    const auto exact = analytic::linear_evolve(psi, V0, dt_total, kNatural).psi;
    const auto num = oracle::evolve_to(psi, Potential::linear(V0), dt_total, 1e-4, kNatural);
    worst = std::max(worst, l2_distance(exact, num));
  }
  return {worst, 1e-7, "max L2 over 3 random draws at dt = 1e-4"};
}

Outcome strang_order(Rng& rng) {
  const auto spec = random_packet(rng);
  const double V0 = random_slope(rng);
  const auto psi = sample_gaussian(spec, kGrid, kNatural);
  const auto exact = analytic::linear_evolve(psi, V0, 1.0, kNatural).psi;
  const std::vector<double> dts{0.02, 0.01, 0.005, 0.0025};
  const auto study = oracle::convergence_study(psi, Potential::linear(V0), 1.0, dts, kNatural,
                                               exact);
  return {std::abs(study.slope - 2.0), 0.1, fmt("measured slope %.4f", study.slope)};
}

Outcome ordering_equivalence(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto psi = sample_gaussian(random_packet(rng), kGrid, kNatural);
    const double V0 = uniform(rng, -2.0, 2.0);
    const double dt = uniform(rng, 0.1, 1.5);
    const auto l = analytic::linear_evolve(psi, V0, dt, kNatural, analytic::Ordering::left);
    const auto r = analytic::linear_evolve(psi, V0, dt, kNatural, analytic::Ordering::right);
    worst = std::max(worst, l2_distance(l.psi, r.psi));
  }
  return {worst, 1e-12, "max L2 between left and right orderings, 20 states"};
}

Outcome ehrenfest(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto spec = random_packet(rng);
    const double V0 = uniform(rng, -2.0, 2.0);
    const double dt = uniform(rng, 0.1, 1.5);
    const auto psi = analytic::linear_evolve(sample_gaussian(spec, kGrid, kNatural), V0, dt,
                                             kNatural)
                         .psi;
    const double x = spec.x0 + spec.p0 * dt - 0.5 * V0 * dt * dt;
    const double p = spec.p0 - V0 * dt;
    worst = std::max({worst, rel(mean_position(psi), x), rel(mean_momentum(psi, kNatural), p)});
  }
  return {worst, 1e-10, "max relative deviation of <x>, <p> (scale floor 1), 20 draws"};
}

Outcome width_invariance(Rng&) {
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, kGrid, kNatural);
  const double ref = spatial_width(analytic::free_evolve(psi, 1.0, kNatural));
  double worst = 0.0;
  for (double V0 : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
    const auto out = analytic::linear_evolve(psi, V0, 1.0, kNatural).psi;
    worst = std::max(worst, std::abs(spatial_width(out) - ref));
  }
  return {worst, 1e-10, "max |sigma(V0) - sigma(0)| over V0 in {-10,-1,0,1,10}"};
}

Outcome density_shift(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto psi = sample_gaussian(random_packet(rng), kGrid, kNatural);
    const double V0 = uniform(rng, -2.0, 2.0);
    const double dt = uniform(rng, 0.1, 1.5);
    const auto out = analytic::linear_evolve(psi, V0, dt, kNatural).psi;
    const auto shifted =
        translate(analytic::free_evolve(psi, dt, kNatural), -V0 * dt * dt / 2.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
      worst = std::max(worst, std::abs(std::norm(out[j]) - std::norm(shifted[j])));
    }
  }
  return {worst, 1e-12, "max pointwise density difference, 5 draws"};
}

Outcome zassenhaus(Rng& rng) {
  const double V0 = uniform(rng, -2.0, 2.0), dt = uniform(rng, 0.1, 2.0);
  const auto z = analytic::zassenhaus_terms(V0, dt, kNatural);
  const double err = std::max(rel(z.c2_coeff, V0 * dt * dt / 2.0, 1e-300),
                              rel(z.c3_coeff, -V0 * V0 * dt * dt * dt / 6.0, 1e-300));
  return {z.c4_is_zero ? err : 1.0, 1e-14, "C2, C3 against closed forms; C4 must vanish"};
}

Outcome wkb_anchor(Rng&) {
  double worst = std::abs(tunneling::wkb_transmission_from_action(0.0) - 0.64);
  const tunneling::BarrierSpec b{0.0, 2.0, 10.0, 3.0};
  const Potential V = b.potential();
  worst = std::max(worst, std::abs(tunneling::wkb_transmission(V, b.peak, kNatural) - 0.64));
  for (double E : {1.0, 5.0, 9.0}) {
    const double closed = 2.0 / 3.0 * std::sqrt(2.0) * std::pow(b.peak - E, 1.5) *
                          (1.0 / b.front_slope() + b.descent() / b.peak);
    worst = std::max(worst, rel(tunneling::wkb_sigma_R(V, E, kNatural), closed, 1e-300));
  }
  return {worst, 1e-8, "T(sigma_R = 0) = 0.64 and triangle sigma_R against closed form"};
}

Outcome classical_limit(Rng&) {
  const auto s = tunneling::classical_limit_scenario();
  const auto r = tunneling::run_tunneling(s.packet, s.barrier, s.grid, s.run, s.units);
  const double sigma_a = free_gaussian_width(s.packet.sigma, r.t_turning_predicted, s.units);
  if (r.d_prime < 10.0 * sigma_a) return {1.0, 1e-4, "scenario does not satisfy D' >= 10 sigma"};
  return {r.transmitted, 1e-4, fmt("T with D' = %.1f, sigma(t_a) = %.2f", r.d_prime, sigma_a)};
}

Outcome over_barrier(Rng&) {
  const auto s = tunneling::over_barrier_scenario();
  const auto r = tunneling::run_tunneling(s.packet, s.barrier, s.grid, s.run, s.units);
  return {1.0 - r.transmitted, 0.01, fmt("1 - T, T = %.9f", r.transmitted)};
}

Outcome ramp(Rng&) {
  const auto s = tunneling::ramp_scenario();
  const auto m = tunneling::measure_ramp(s);
  const double width_err = std::abs(m.width_at_turning / (s.growth * s.packet.sigma) - 1.0);
  const double time_err = std::abs(s.t_turning / m.t_turning - 1.0);
  return {std::max(width_err / 0.005, time_err / 0.02), 1.0,
          fmt("width error %.2e (limit 5e-3), turning-time error %.2e (limit 2e-2)", width_err,
              time_err)};
}

Outcome width_scan(Rng&) {
  const auto s = tunneling::thin_barrier_scenario();
  const auto scan = tunneling::width_scan(s.packet, tunneling::width_scan_delays(),
                                          tunneling::ScanMode::delay, s.barrier, s.grid, s.run,
                                          s.units);
  double worst_drop = 0.0;
  for (std::size_t i = 0; i + 1 < scan.entries.size(); ++i) {
    worst_drop = std::max(worst_drop, scan.entries[i].result.transmitted -
                                          scan.entries[i + 1].result.transmitted);
  }
  return {worst_drop, scan.tolerance,
          fmt("largest drop in T along the sigma sweep (%g violations)",
              static_cast<double>(scan.violations.size()))};
}

Outcome psg_closed_form(Rng& rng) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    devices::PsgGeometry g{uniform(rng, 0.5, 2.0), uniform(rng, -3.0, 3.0), uniform(rng, 0.5, 2.0),
                           kNatural.with_mass(uniform(rng, 0.5, 2.0))};
    const double closed = devices::psg_phase(g);
    const auto composed = devices::psg_compose(g, uniform(rng, -2.0, 2.0));
    worst = std::max(worst, rel(composed.relative_phase, closed, 1e-300));
  }
  return {worst, 1e-10, "max relative deviation, 100 random geometries"};
}

Outcome psg_packet(Rng&) {
  const devices::PsgGeometry g{40.0, 0.5, 40.0, kNatural};
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, kGrid, kNatural);
  const auto r = devices::psg_compose(g, psi);
  const double dphase = std::abs(std::remainder(r.relative_phase - devices::psg_phase(g),
                                                2.0 * std::numbers::pi));
  return {std::max(dphase / 1e-4, r.modulus_deviation / 1e-6), 1.0,
          fmt("phase error %.2e (limit 1e-4), modulus deviation %.2e (limit 1e-6)", dphase,
              r.modulus_deviation)};
}

Outcome sg_outcome(Rng& rng) {
  const auto sg = devices::SgSpec::natural(uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0), +1);
  const auto rho = devices::sg_apply(devices::SpinDensity::unpolarized(), sg, kNatural);
  const auto br = rho.branches();
  if (br.size() != 2) return {1.0, 1e-12, "expected two branches"};
  const double dp = sg.delta_p();
  const double err =
      std::max({std::abs(br[0].probability - 0.5), std::abs(br[1].probability - 0.5),
                rel(br[0].momentum, -dp, 1e-300), rel(br[1].momentum, dp, 1e-300),
                rho.hermiticity_defect(), std::abs(rho.trace() - 1.0)});
  return {err, 1e-12, "branch weights, momenta +-dp, trace and hermiticity"};
}

Outcome spin_flip(Rng& rng) {
  const auto up = devices::SgSpec::natural(1.0, 1.0, +1);
  const auto down = devices::SgSpec::natural(1.0, 1.0, -1);
  const auto in = devices::SpinState::z(+1);
  const auto gate = [&](double target, const devices::SpinState& s) {
    const auto g = devices::solve_psg_for_phase(
        target, devices::PsgUnknowns{1.0, std::nullopt, 1.0, kNatural});
    return devices::spin_flip_circuit(s, up, g, down, kNatural);
  };
  const auto flip = gate(std::numbers::pi, in);
  const auto none = devices::spin_flip_circuit(in, up, std::nullopt, down, kNatural);
  const auto twice = gate(std::numbers::pi, flip.output);
  const double mu = uniform(rng, 0.0, 3.0), nu = uniform(rng, 0.0, 3.0);
  const auto composed = gate(nu, gate(mu, in).output);
  const auto direct = gate(mu + nu, in);
  const double err = std::max({std::abs(flip.flip_fidelity - 1.0), none.flip_fidelity,
                               std::abs(devices::fidelity(in, twice.output) - 1.0),
                               std::abs(devices::fidelity(composed.output, direct.output) - 1.0),
                               std::abs(flip.output_norm - 1.0)});
  return {err, 1e-9, "flip at pi, no flip without PSG, pi twice, mu + nu composition"};
}

Outcome psg_inverse(Rng& rng) {
  double worst = rel(devices::solve_psg_for_phase(
                         std::numbers::pi, devices::PsgUnknowns{1.0, std::nullopt, 1.0, kNatural})
                         .V0,
                     std::sqrt(1.5 * std::numbers::pi));
  for (int i = 0; i < 20; ++i) {
    const double target = uniform(rng, 0.01, 10.0);
    devices::PsgUnknowns u{uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0),
                           kNatural};
    switch (i % 3) {
      case 0: u.L.reset(); break;
      case 1: u.V0.reset(); break;
      default: u.v.reset(); break;
    }
    const auto g = devices::solve_psg_for_phase(target, u);
    worst = std::max(worst, rel(-devices::psg_phase(g), target, 1e-300));
  }
  return {worst, 1e-12, "pi example and round trip on 20 random targets"};
}

Outcome config_round_trip(Rng&) {
  double failures = 0.0;
  for (const char* cmd : {"evolve", "tunnel", "psg", "spin"}) {
    const std::string text = serialize_config(default_config(cmd));
    if (serialize_config(parse_config(text)) != text) failures += 1.0;
    if (!(parse_config(text) == default_config(cmd))) failures += 1.0;
  }
  return {failures, 0.0, "serialize/parse round trips of the command defaults"};
}

struct Check {
  const char* name;
  Outcome (*run)(Rng&);
};

const std::vector<Check>& checks() {
  static const std::vector<Check> list = {
      {"analytic_vs_oracle", analytic_vs_oracle},
      {"strang_order", strang_order},
      {"ordering_equivalence", ordering_equivalence},
      {"ehrenfest", ehrenfest},
      {"width_invariance", width_invariance},
      {"density_shift", density_shift},
      {"zassenhaus_terms", zassenhaus},
      {"wkb_anchor", wkb_anchor},
      {"classical_limit_no_tunneling", classical_limit},
      {"over_barrier_transmission", over_barrier},
      {"ramp_turning_point", ramp},
      {"width_scan_monotone", width_scan},
      {"psg_closed_form", psg_closed_form},
      {"psg_packet", psg_packet},
      {"sg_outcome", sg_outcome},
      {"spin_flip_gate", spin_flip},
      {"psg_inverse", psg_inverse},
      {"config_round_trip", config_round_trip},
  };
  return list;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  j["seed"] = seed;
  j["seconds"] = seconds;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail},
                           {"seconds", c.seconds}});
  }
  return j.dump(2);
}

std::vector<std::string> verify_check_names() {
  std::vector<std::string> names;
  for (const auto& c : checks()) names.emplace_back(c.name);
  return names;
}

VerifyReport run_verify(std::uint64_t seed,
                        const std::function<void(const CheckResult&)>& progress) {
  using Clock = std::chrono::steady_clock;
  VerifyReport report;
  report.seed = seed;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < checks().size(); ++i) {
    const auto& check = checks()[i];
    // One stream per check so results do not depend on which checks ran before.
    Rng rng(seed * 1000003u + i);
    CheckResult r;
    r.name = check.name;
    const auto t0 = Clock::now();
    try {
      const Outcome o = check.run(rng);
      r.passed = o.passed();
      r.measured = o.measured;
      r.tolerance = o.tolerance;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (progress) progress(r);
    report.checks.push_back(std::move(r));
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace qlinear::app
