#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/grid.hpp"
#include "qlinear/core/potential.hpp"
#include "qlinear/core/units.hpp"
#include "qlinear/devices/psg.hpp"
#include "qlinear/devices/stern_gerlach.hpp"
#include "qlinear/oracle/split_step.hpp"
#include "qlinear/tunneling/barrier.hpp"

// Experiment configuration, stored as a sectioned key = value file:
//
//   [units]      system (natural | si), mass_kg
//   [grid]       x_min_m, x_max_m, n
//   [state]      x0_m, p0_kgmps, sigma_m
//   [potential]  kind (free | linear | barrier), V0_Jpm,
//                x_start_m, x_peak_m, peak_J, descent_m
//   [solver]     dt_s, duration_s, record_every, absorber_fraction,
//                absorber_p_max_kgmps (0 disables the absorber)
//   [tunnel]     mode (delay | initial_width), values, step_budget
//   [psg]        L_m, V0_Jpm, v_mps, packet, sweep_points, sweep_V0_max_Jpm
//   [sg]         B0_T, moment_JpT, duration_s
//   [spin]       input (z+ | z- | x+ | x-), psg, phase_points
//   [output]     dir
//   [run]        seed
//
// The suffix names the SI unit of each quantity. With system = natural the
// same keys hold values in units of hbar = m = 1. Missing keys keep their
// defaults; unknown keys and malformed values are rejected with the
// offending field named.

namespace qlinear::app {

struct ExperimentConfig {
  std::string unit_system = "natural";
  double mass_kg = 1.0;

  double x_min = -60.0;
  double x_max = 60.0;
  std::size_t n = 2048;

  GaussianSpec packet{0.0, 1.0, 1.0};

  std::string potential_kind = "linear";
  double slope = 0.5;
  tunneling::BarrierSpec barrier{0.0, 2.0, 17.5, 2.0};

  double dt = 1e-3;
  double duration = 2.0;
  std::size_t record_every = 100;
  double absorber_fraction = 0.1;
  double absorber_p_max = 0.0;

  std::string scan_mode = "delay";
  std::vector<double> scan_values{0.0, 2.0, 4.0, 8.0, 16.0};
  std::size_t step_budget = 40000;

  double psg_L = 1.0;
  double psg_V0 = 0.0;
  double psg_v = 1.0;
  bool psg_packet = false;
  std::size_t psg_sweep_points = 21;
  double psg_sweep_V0_max = 3.0;

  double sg_B0 = 1.0;
  double sg_moment = 1.0;
  double sg_duration = 1.0;

  std::string spin_input = "z+";
  bool spin_psg = true;
  std::size_t spin_phase_points = 9;

  std::string out_dir = "out";
  std::uint64_t seed = 1;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ValidationError naming the first inconsistent field.
  void validate() const;

  UnitSystem units() const;
  SpatialGrid grid() const;
  Potential potential() const;
  oracle::SolverConfig solver() const;
  devices::PsgGeometry psg() const;
  devices::SgSpec sg(int axis) const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Canonical text: every key, in the fixed order above, numbers in their
/// shortest round-trip form. serialize(parse(serialize(c))) == serialize(c).
std::string serialize_config(const ExperimentConfig& c);
void save_config(const ExperimentConfig& c, const std::string& path);

/// Shortest decimal text that reads back as exactly `v`.
std::string format_double(double v);

/// Defaults for one command: evolve, tunnel, psg, spin.
ExperimentConfig default_config(const std::string& command);

}  // namespace qlinear::app
