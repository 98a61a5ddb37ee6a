#include "qlinear/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <limits>
#include <numbers>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/core/csv.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/devices/spin_flip.hpp"
#include "qlinear/tunneling/wkb.hpp"

namespace qlinear::app {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string out_path(const ExperimentConfig& c, const char* name) {
  return (std::filesystem::path(c.out_dir) / name).string();
}

void emit(CommandSummary& s, const ExperimentConfig& c, const CsvTable& table, const char* name) {
  const std::string path = out_path(c, name);
  table.write_file(path);
  s.files.push_back(path);
}

void save_effective(CommandSummary& s, const ExperimentConfig& c) {
  const std::string path = out_path(c, "config.ini");
  save_config(c, path);
  s.files.push_back(path);
}

devices::SpinState spin_input(const std::string& label) {
  const int sign = label[1] == '+' ? 1 : -1;
  return label[0] == 'z' ? devices::SpinState::z(sign) : devices::SpinState::x(sign);
}

}  // namespace

ExperimentConfig apply_options(ExperimentConfig c, const RunOptions& opts) {
  if (opts.out_dir) c.out_dir = *opts.out_dir;
  if (opts.dt) c.dt = *opts.dt;
  if (opts.seed) c.seed = *opts.seed;
  c.validate();
  return c;
}

CommandSummary cmd_evolve(const ExperimentConfig& c, const RunOptions&) {
  c.validate();
  const UnitSystem units = c.units();
  const SpatialGrid grid = c.grid();
  const WaveFunction psi0 = sample_gaussian(c.packet, grid, units);
  const bool closed_form = c.potential_kind != "barrier";
  const double slope = c.potential_kind == "linear" ? c.slope : 0.0;

  oracle::SolverConfig solver = c.solver();
  solver.store_states = closed_form;
  const auto traj = oracle::split_step_evolve(psi0, c.potential(), solver, units);

  CsvTable table("evolve_trajectory", 1,
                 {{"t", Dimension::time},
                  {"mean_x", Dimension::length},
                  {"mean_p", Dimension::momentum},
                  {"width", Dimension::length},
                  {"norm", Dimension::dimensionless},
                  {"width_closed_form", Dimension::length},
                  {"l2_analytic_oracle", Dimension::dimensionless}},
                 units);
  double max_l2 = closed_form ? 0.0 : kNaN;
  for (const auto& snap : traj.snapshots) {
    const double t = snap.obs.time;
    double l2 = kNaN;
    if (closed_form) {
      const auto exact = analytic::linear_evolve(psi0, slope, t, units);
      l2 = l2_distance(exact.psi, *snap.psi);
      max_l2 = std::max(max_l2, l2);
    }
    table.add_row({t, snap.obs.mean_x, snap.obs.mean_p, snap.obs.width, snap.obs.norm_squared,
                   free_gaussian_width(c.packet.sigma, t, units), l2});
  }

  CsvTable state("evolve_final_state", 1,
                 {{"x", Dimension::length},
                  {"re_psi", Dimension::dimensionless},
                  {"im_psi", Dimension::dimensionless},
                  {"density", Dimension::dimensionless}},
                 units);
  const auto& fin = traj.final_state;
  for (std::size_t j = 0; j < fin.size(); ++j) {
    state.add_row({grid.x(j), fin[j].real(), fin[j].imag(), std::norm(fin[j])});
  }

  CommandSummary s;
  emit(s, c, table, "evolve_trajectory.csv");
  emit(s, c, state, "evolve_final_state.csv");
  save_effective(s, c);
  s.values = {{"snapshots", static_cast<double>(traj.snapshots.size())},
              {"final_norm", traj.snapshots.back().obs.norm_squared},
              {"max_l2_analytic_oracle", max_l2}};
  return s;
}

CommandSummary cmd_tunnel(const ExperimentConfig& c, const RunOptions&) {
  c.validate();
  if (c.potential_kind != "barrier") {
    throw ValidationError("tunnel: potential.kind must be 'barrier'");
  }
  if (!(c.absorber_p_max > 0.0)) {
    throw ValidationError("tunnel: solver.absorber_p_max_kgmps must be positive");
  }
  const UnitSystem units = c.units();
  const SpatialGrid grid = c.grid();
  const Potential V = c.potential();

  tunneling::TunnelingRun run;
  run.solver = c.solver();
  run.solver.n_steps = c.step_budget;

  const auto mode = c.scan_mode == "delay" ? tunneling::ScanMode::delay
                                           : tunneling::ScanMode::initial_width;
  const auto scan =
      tunneling::width_scan(c.packet, c.scan_values, mode, c.barrier, grid, run, units);
  const double energy = c.packet.p0 * c.packet.p0 / (2.0 * units.mass()) + V(c.packet.x0);
  double wkb = kNaN;
  if (energy <= c.barrier.peak) wkb = tunneling::wkb_transmission(V, energy, units);

  CsvTable profile("barrier_profile", 1,
                   {{"x", Dimension::length},
                    {"V", Dimension::energy},
                    {"density_initial", Dimension::dimensionless}},
                   units);
  const WaveFunction psi0 = sample_gaussian(c.packet, grid, units);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    profile.add_row({grid.x(j), V(grid.x(j)), std::norm(psi0[j])});
  }

  CsvTable table("width_scan", 1,
                 {{"value", mode == tunneling::ScanMode::delay ? Dimension::time
                                                                 : Dimension::length},
                  {"sigma_launch", Dimension::length},
                  {"sigma_at_turning", Dimension::length},
                  {"t_turning", Dimension::time},
                  {"t_turning_predicted", Dimension::time},
                  {"transmitted", Dimension::dimensionless},
                  {"reflected", Dimension::dimensionless},
                  {"residual", Dimension::dimensionless},
                  {"wkb_transmission", Dimension::dimensionless},
                  {"violation", Dimension::dimensionless}},
                 units);
  for (std::size_t i = 0; i < scan.entries.size(); ++i) {
    const auto& r = scan.entries[i].result;
    bool violation = false;
    for (const auto& v : scan.violations) violation = violation || v.second == i;
    table.add_row({scan.entries[i].value, r.sigma_launch, r.sigma_at_turning, r.t_turning,
                   r.t_turning_predicted, r.transmitted, r.reflected, r.residual, wkb,
                   violation ? 1.0 : 0.0});
  }

  double t_min = scan.entries.front().result.transmitted, t_max = t_min;
  for (const auto& e : scan.entries) {
    t_min = std::min(t_min, e.result.transmitted);
    t_max = std::max(t_max, e.result.transmitted);
  }

  CommandSummary s;
  emit(s, c, profile, "barrier_profile.csv");
  emit(s, c, table, "width_scan.csv");
  save_effective(s, c);
  s.values = {{"energy", energy},
              {"wkb_transmission", wkb},
              {"violations", static_cast<double>(scan.violations.size())},
              {"transmitted_min", t_min},
              {"transmitted_max", t_max}};
  return s;
}

CommandSummary cmd_psg(const ExperimentConfig& c, const RunOptions& opts) {
  c.validate();
  const auto g = c.psg();
  const double closed = devices::psg_phase(g);
  const auto composed = devices::psg_compose(g, 0.0);

  std::vector<CsvColumn> cols{{"L", Dimension::length},
                              {"V0", Dimension::slope},
                              {"v", Dimension::velocity},
                              {"dt", Dimension::time},
                              {"phase_closed_form", Dimension::phase},
                              {"phase_composed", Dimension::phase},
                              {"difference", Dimension::phase},
                              {"net_kick", Dimension::momentum},
                              {"net_displacement", Dimension::length}};
  std::vector<double> row{g.L,
                          g.V0,
                          g.v,
                          g.dt(),
                          closed,
                          composed.relative_phase,
                          composed.relative_phase - closed,
                          composed.net_kick,
                          composed.net_displacement};
  CommandSummary s;
  s.values = {{"phase_closed_form", closed},
              {"phase_composed", composed.relative_phase},
              {"difference", composed.relative_phase - closed}};
  if (c.psg_packet) {
    const auto packet = devices::psg_compose(
        g, sample_gaussian(c.packet, c.grid(), c.units()), opts.override_preconditions);
    cols.push_back({"packet_phase", Dimension::phase});
    cols.push_back({"packet_modulus_deviation", Dimension::dimensionless});
    row.push_back(packet.relative_phase);
    row.push_back(packet.modulus_deviation);
    s.values.emplace_back("packet_phase", packet.relative_phase);
    s.values.emplace_back("packet_modulus_deviation", packet.modulus_deviation);
  }
  CsvTable report("psg_report", 1, cols, c.units());
  report.add_row(row);

  const std::size_t n = c.psg_sweep_points;
  std::vector<std::future<std::vector<double>>> jobs;
  for (std::size_t i = 0; i < n; ++i) {
    const double V0 = c.psg_sweep_V0_max * (-1.0 + 2.0 * static_cast<double>(i) /
                                                       static_cast<double>(n - 1));
    jobs.push_back(std::async(std::launch::async, [g, V0]() {
      auto gi = g;
      gi.V0 = V0;
      return std::vector<double>{V0, devices::psg_phase(gi),
                                 devices::psg_compose(gi, 0.0).relative_phase};
    }));
  }
  CsvTable sweep("psg_sweep", 1,
                 {{"V0", Dimension::slope},
                  {"phase_closed_form", Dimension::phase},
                  {"phase_composed", Dimension::phase}},
                 c.units());
  for (auto& j : jobs) sweep.add_row(j.get());

  emit(s, c, report, "psg_report.csv");
  emit(s, c, sweep, "psg_sweep.csv");
  save_effective(s, c);
  return s;
}

CommandSummary cmd_spin(const ExperimentConfig& c, const RunOptions&) {
  c.validate();
  const UnitSystem units = c.units();
  const auto up = c.sg(+1);
  const auto down = c.sg(-1);
  const auto input = spin_input(c.spin_input);

  CsvTable table("spin_gate", 1,
                 {{"psg", Dimension::dimensionless},
                  {"target_phase", Dimension::phase},
                  {"psg_V0", Dimension::slope},
                  {"applied_phase", Dimension::phase},
                  {"flip_fidelity", Dimension::dimensionless},
                  {"p_z_plus", Dimension::dimensionless},
                  {"p_z_minus", Dimension::dimensionless},
                  {"output_norm", Dimension::dimensionless}},
                 units);
  const auto add = [&](bool with_psg, double target, double V0,
                       const devices::GateReport& r) {
    table.add_row({with_psg ? 1.0 : 0.0, target, V0, r.phase, r.flip_fidelity,
                   std::norm(r.output.plus), std::norm(r.output.minus), r.output_norm});
  };

  CommandSummary s;
  if (c.spin_psg) {
    const std::size_t n = c.spin_phase_points;
    double at_pi = kNaN;
    for (std::size_t i = 0; i < n; ++i) {
      const double target =
          2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
      const auto g = devices::solve_psg_for_phase(
          target, devices::PsgUnknowns{c.psg_L, std::nullopt, c.psg_v, units});
      const auto r = devices::spin_flip_circuit(input, up, g, down, units);
      add(true, target, g.V0, r);
      if (2 * i == n - 1) at_pi = r.flip_fidelity;
    }
    s.values.emplace_back("flip_fidelity_at_pi", at_pi);
  }
  const auto control = devices::spin_flip_circuit(input, up, std::nullopt, down, units);
  add(false, 0.0, 0.0, control);
  s.values.emplace_back("flip_fidelity_without_psg", control.flip_fidelity);

  CsvTable branches("sg_branches", 1,
                    {{"momentum", Dimension::momentum}, {"probability", Dimension::dimensionless}},
                    units);
  const auto rho = devices::sg_apply(devices::SpinDensity::unpolarized(0.0), up, units);
  for (const auto& b : rho.branches()) branches.add_row({b.momentum, b.probability});
  s.values.emplace_back("delta_p", up.delta_p());

  emit(s, c, table, "spin_gate.csv");
  emit(s, c, branches, "sg_branches.csv");
  save_effective(s, c);
  return s;
}

}  // namespace qlinear::app
