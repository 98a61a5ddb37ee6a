#pragma once

#include <array>
#include <optional>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/analytic/phases.hpp"
#include "qlinear/core/units.hpp"

namespace qlinear::devices {

/// Three capacitors of lengths L, 2L, L crossed at longitudinal speed v.
/// The transverse slopes are +V0, -V0, +V0, so the segment durations are
/// dt, 2 dt, dt with dt = L / v.
struct PsgGeometry {
  double L = 1.0;
  double V0 = 0.0;
  double v = 1.0;
  UnitSystem units;

  double dt() const noexcept { return L / v; }
  void validate() const;
};

struct PsgSegment {
  double V0 = 0.0;
  double duration = 0.0;
};

std::array<PsgSegment, 3> psg_segments(const PsgGeometry& g);

/// -2 V0^2 L^3 / (3 hbar m v^3)
double psg_phase(const PsgGeometry& g);

/// Packet width to capacitor length ratio below which packet composition
/// refuses to run.
inline constexpr double kMinLengthToWidth = 20.0;

struct PsgPlaneWaveResult {
  double p_in = 0.0;
  double p_out = 0.0;
  std::array<analytic::PlaneWavePhase, 3> segments{};
  /// Sum of the segment phases.
  double composed_phase = 0.0;
  /// -p_in^2 (4 dt) / (2 m hbar)
  double free_phase = 0.0;
  /// composed_phase - free_phase
  double relative_phase = 0.0;
  double net_kick = 0.0;
  double net_displacement = 0.0;
};

/// Chains the exact plane-wave phases of the three segments.
PsgPlaneWaveResult psg_compose(const PsgGeometry& g, double p_in);

struct PsgPacketResult {
  /// Final state; the ledger holds the totals (cubic_phase is the phase
  /// relative to the reference, momentum_kick and argument_shift the net
  /// kick and displacement).
  analytic::EvolutionResult result;
  std::array<analytic::PhaseLedger, 3> segments;
  /// The input evolved freely for 4 dt.
  WaveFunction reference;
  /// arg <reference | result>
  double relative_phase = 0.0;
  /// sqrt(sum (|psi| - |reference|)^2 dx)
  double modulus_deviation = 0.0;
};

/// Runs the packet through the three segments with the closed-form
/// propagator. Requires L >= kMinLengthToWidth times the packet width unless
/// overridden (PreconditionError). Throws ValidationError if the composed
/// kick or displacement fails to cancel.
PsgPacketResult psg_compose(const PsgGeometry& g, const WaveFunction& psi,
                            bool override_preconditions = false);

/// Known parameters for `solve_psg_for_phase`; exactly one of L, V0, v is
/// left empty.
struct PsgUnknowns {
  std::optional<double> L;
  std::optional<double> V0;
  std::optional<double> v;
  UnitSystem units;
};

/// Fills in the missing parameter so that psg_phase(result) = -target.
/// `target` is the magnitude 2 V0^2 L^3/(3 hbar m v^3) and must be >= 0;
/// the returned V0, L or v is the positive root. Throws PreconditionError
/// when no positive solution exists, ValidationError unless exactly one
/// parameter is missing.
PsgGeometry solve_psg_for_phase(double target, const PsgUnknowns& fixed);

}  // namespace qlinear::devices
