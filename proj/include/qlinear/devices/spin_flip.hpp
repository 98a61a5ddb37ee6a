#pragma once

#include <array>
#include <optional>

#include "qlinear/devices/psg.hpp"
#include "qlinear/devices/spin.hpp"
#include "qlinear/devices/stern_gerlach.hpp"

// SG(+x) -> PSG on the S_x,- branch -> SG(-x).
//
// SG(+x) kicks the S_x,+ and S_x,- components to opposite transverse
// momenta, the PSG imprints its phase on the S_x,- branch while the S_x,+
// branch flies freely for the same 4 dt, and SG(-x) undoes the kicks. With
// phase phi the spin comes out as (|S_x,+> + e^{i phi}|S_x,->)/sqrt(2) for a
// |S_z,+> input, which is |S_z,-> at phi = +-pi.

namespace qlinear::devices {

struct GateReport {
  SpinState input;
  /// z basis
  SpinState output;
  /// Phase applied to the S_x,- branch relative to the S_x,+ branch.
  double phase = 0.0;
  /// |<input_perp|output>|^2
  double flip_fidelity = 0.0;
  double output_norm = 0.0;
  /// Transverse momenta of the S_x,+ and S_x,- branches between the SG stages.
  std::array<double, 2> split_momenta{};
};

/// Throws ValidationError unless `down` has the opposite axis and the same
/// kick and duration as `up`.
void check_recombination(const SgSpec& up, const SgSpec& down);

/// Circuit on a transverse momentum eigenstate |p_in> (x) spin. Without a
/// PSG the S_x,- branch flies freely like the other one.
GateReport spin_flip_circuit(const SpinState& input, const SgSpec& up,
                             const std::optional<PsgGeometry>& psg, const SgSpec& down,
                             const UnitSystem& units, double p_in = 0.0);

struct PacketGateReport {
  /// z basis
  SpinorPacket output;
  /// <input_perp| rho_spin |input_perp> of the reduced spin state.
  double flip_fidelity = 0.0;
  double output_norm = 0.0;
  /// |<psi_+|psi_->| / sqrt(<psi_+|psi_+><psi_-|psi_->) of the x-branches at
  /// the exit. Below 1 the branches no longer overlap completely and the
  /// spin is left partly mixed.
  double branch_overlap = 0.0;
};

/// The same circuit on a wave packet (x) spin. The branches end up displaced
/// by +-dp (t_sg + 4 dt)/m relative to each other, so the result approaches
/// the plane-wave one only when that is small against the packet width.
PacketGateReport spin_flip_circuit(const WaveFunction& psi, const SpinState& input,
                                   const SgSpec& up, const std::optional<PsgGeometry>& psg,
                                   const SgSpec& down, const UnitSystem& units,
                                   bool override_preconditions = false);

}  // namespace qlinear::devices
