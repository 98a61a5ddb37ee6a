#pragma once

#include "qlinear/core/units.hpp"
#include "qlinear/devices/spin.hpp"

namespace qlinear::devices {

/// e hbar / (2 m_e), J/T (CODATA 2018).
inline constexpr double kBohrMagnetonSI = 9.2740100783e-24;

/// Ideal Stern-Gerlach stage: the transverse potential -coupling x sigma_axis
/// acts for `duration`, nothing outside it. axis = +1 for a field along +x,
/// -1 along -x.
struct SgSpec {
  double B0 = 0.0;
  /// Coupling per unit field; coupling = moment * B0 (energy/length).
  double moment = kBohrMagnetonSI;
  double duration = 0.0;
  int axis = +1;

  static SgSpec natural(double coupling, double duration, int axis) {
    return {coupling, 1.0, duration, axis};
  }

  double coupling() const noexcept { return moment * B0; }
  /// coupling * duration
  double delta_p() const noexcept { return coupling() * duration; }
  /// Slope V0 of the linear potential seen by the S_x = `branch` component.
  double branch_slope(int branch) const noexcept {
    return -coupling() * static_cast<double>(axis) * static_cast<double>(branch);
  }
  void validate() const;
};

/// Evolves each S_x component with the closed-form linear propagator at its
/// own slope. The result is in the x basis. Throws CoverageError when a
/// kicked branch leaves the grid.
SpinorPacket sg_apply(const SpinorPacket& psi, const SgSpec& sg, const UnitSystem& units);

/// Density-matrix form on transverse momentum eigenstates: each x-branch's
/// momentum label moves by -slope * duration and the coherences pick up the
/// relative plane-wave phase.
SpinDensity sg_apply(const SpinDensity& rho, const SgSpec& sg, const UnitSystem& units);

}  // namespace qlinear::devices
