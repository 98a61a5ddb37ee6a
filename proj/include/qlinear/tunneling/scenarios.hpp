#pragma once

#include <string>
#include <vector>

#include "qlinear/core/gaussian.hpp"
#include "qlinear/tunneling/scattering.hpp"

// Reference set-ups used by the verification suite, the acceptance tests and
// the command-line defaults.

namespace qlinear::tunneling {

struct TunnelingScenario {
  std::string name;
  UnitSystem units;
  GaussianSpec packet;
  BarrierSpec barrier;
  SpatialGrid grid;
  TunnelingRun run;
};

/// Natural units. A p0 = 20, sigma = 5 packet launched on the linear front
/// (slope 0.8) of a barrier 1.4 times its energy high: D' = 116, about 16
/// times the width at the turning point.
TunnelingScenario classical_limit_scenario();

/// Same packet from the flat region against a barrier half its energy high.
TunnelingScenario over_barrier_scenario();

/// p0 = 5, sigma = 2 against a thin triangle (front width 2, peak 1.4 E);
/// D' is well below the packet width and T is of order 0.1.
TunnelingScenario thin_barrier_scenario();

/// Free-flight delays for the width scan on `thin_barrier_scenario`.
std::vector<double> width_scan_delays();

/// Deceleration on an unbounded ramp V = slope x in SI units, with the mass
/// chosen so the packet has widened by `growth` when it stops.
struct RampScenario {
  UnitSystem units;
  GaussianSpec packet;
  double slope = 0.0;
  double stopping_distance = 0.0;
  double growth = 0.0;
  /// p0 / slope
  double t_turning = 0.0;
  SpatialGrid grid;
  double dt = 0.0;
  std::size_t n_steps = 0;
};

/// m = hbar t_a / (sigma^2 sqrt(growth^2 - 1)), t_a = 2 d / v.
double ramp_mass(double sigma, double speed, double stopping_distance, double growth);

/// sigma = 2 mm, v = 1 m/s, stopping distance 0.3 m, 10% growth.
RampScenario ramp_scenario();

struct RampMeasurement {
  /// Where <p> changes sign, interpolated between snapshots.
  double t_turning = 0.0;
  double mean_x_at_turning = 0.0;
  double width_at_turning = 0.0;
  oracle::Trajectory trajectory;
};

/// Runs the split-step oracle on the ramp and locates the turning point.
/// Throws NumericalError if <p> never changes sign.
RampMeasurement measure_ramp(const RampScenario& s, std::size_t record_every = 2);

}  // namespace qlinear::tunneling
