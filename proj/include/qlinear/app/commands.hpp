#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlinear/app/config.hpp"
#include "qlinear/tunneling/scattering.hpp"

// One function per subcommand. Each writes its CSV files (and the effective
// configuration, config.ini) under the configured output directory and
// returns a summary for the caller to print.

namespace qlinear::app {

/// Command-line overrides applied on top of a configuration.
struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
  bool override_preconditions = false;
};

ExperimentConfig apply_options(ExperimentConfig c, const RunOptions& opts);

struct CommandSummary {
  std::vector<std::string> files;
  /// name = value lines for the terminal.
  std::vector<std::pair<std::string, double>> values;
};

/// Oracle trajectory, plus the closed-form comparison for free and linear
/// potentials. Files: evolve_trajectory.csv, evolve_final_state.csv.
CommandSummary cmd_evolve(const ExperimentConfig& c, const RunOptions& opts = {});

/// Width scan against the configured barrier. Files: barrier_profile.csv,
/// width_scan.csv.
CommandSummary cmd_tunnel(const ExperimentConfig& c, const RunOptions& opts = {});

/// Closed-form versus composed phase and a V0 sweep. Files: psg_report.csv,
/// psg_sweep.csv.
CommandSummary cmd_psg(const ExperimentConfig& c, const RunOptions& opts = {});

/// Gate fidelity over a phase sweep plus the PSG-free control, and the SG
/// branch table for unpolarized input. Files: spin_gate.csv, sg_branches.csv.
CommandSummary cmd_spin(const ExperimentConfig& c, const RunOptions& opts = {});

}  // namespace qlinear::app
