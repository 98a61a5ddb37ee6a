#include "qlinear/tunneling/scenarios.hpp"

#include <cmath>

#include "qlinear/core/errors.hpp"

namespace qlinear::tunneling {
namespace {

TunnelingRun make_run(double dt, std::size_t budget, std::size_t stride, double p_max,
                      const SpatialGrid& grid, const UnitSystem& units) {
  TunnelingRun run;
  run.solver.dt = dt;
  run.solver.n_steps = budget;
  run.solver.record_every = stride;
  run.solver.absorber = oracle::Absorber::for_momentum(p_max, 0.1, grid.span(), units);
  return run;
}

}  // namespace

TunnelingScenario classical_limit_scenario() {
  const UnitSystem units = UnitSystem::natural();
  const SpatialGrid grid(-200.0, 600.0, 8192);
  const GaussianSpec packet{40.0, 20.0, 5.0};
  const double slope = 0.8;
  const double energy = 0.5 * packet.p0 * packet.p0 + slope * packet.x0;
  const double peak = 1.4 * energy;
  const BarrierSpec barrier{0.0, peak / slope, peak, 100.0};
  return {"classical_limit", units, packet, barrier, grid,
          make_run(0.005, 40000, 20, 22.0, grid, units)};
}

TunnelingScenario over_barrier_scenario() {
  const UnitSystem units = UnitSystem::natural();
  const SpatialGrid grid(-200.0, 600.0, 8192);
  const GaussianSpec packet{-40.0, 20.0, 5.0};
  const double energy = 0.5 * packet.p0 * packet.p0;
  const double slope = 0.8;
  const double peak = 0.5 * energy;
  const BarrierSpec barrier{0.0, peak / slope, peak, 100.0};
  return {"over_barrier", units, packet, barrier, grid,
          make_run(0.005, 40000, 20, 22.0, grid, units)};
}

TunnelingScenario thin_barrier_scenario() {
  const UnitSystem units = UnitSystem::natural();
  const SpatialGrid grid(-150.0, 150.0, 2048);
  const GaussianSpec packet{-50.0, 5.0, 2.0};
  const double energy = 0.5 * packet.p0 * packet.p0;
  const BarrierSpec barrier{0.0, 2.0, 1.4 * energy, std::nullopt};
  return {"thin_barrier", units, packet, barrier, grid,
          make_run(0.01, 40000, 20, 9.0, grid, units)};
}

std::vector<double> width_scan_delays() { return {0.0, 2.0, 4.0, 8.0, 16.0}; }

double ramp_mass(double sigma, double speed, double stopping_distance, double growth) {
  const double t_a = 2.0 * stopping_distance / speed;
  return kHbarSI * t_a / (sigma * sigma * std::sqrt(growth * growth - 1.0));
}

RampScenario ramp_scenario() {
  RampScenario s{UnitSystem::natural(), {}, 0.0, 0.3, 1.1, 0.0, SpatialGrid(-0.05, 0.35, 65536),
                 0.0, 0};
  const double sigma = 0.002, speed = 1.0;
  s.units = UnitSystem::si(ramp_mass(sigma, speed, s.stopping_distance, s.growth));
  s.packet = {0.0, s.units.mass() * speed, sigma};
  s.t_turning = 2.0 * s.stopping_distance / speed;
  s.slope = s.packet.p0 / s.t_turning;
  s.n_steps = 660;
  s.dt = s.t_turning / 600.0;
  return s;
}

RampMeasurement measure_ramp(const RampScenario& s, std::size_t record_every) {
  oracle::SolverConfig cfg;
  cfg.dt = s.dt;
  cfg.n_steps = s.n_steps;
  cfg.record_every = record_every;
  RampMeasurement m{0.0, 0.0, 0.0,
                    oracle::split_step_evolve(sample_gaussian(s.packet, s.grid, s.units),
                                              Potential::linear(s.slope), cfg, s.units)};
  const auto& snaps = m.trajectory.snapshots;
  for (std::size_t k = 1; k < snaps.size(); ++k) {
    const auto& a = snaps[k - 1].obs;
    const auto& b = snaps[k].obs;
    if (a.mean_p > 0.0 && b.mean_p <= 0.0) {
      const double u = a.mean_p / (a.mean_p - b.mean_p);
      m.t_turning = a.time + u * (b.time - a.time);
      m.mean_x_at_turning = a.mean_x + u * (b.mean_x - a.mean_x);
      m.width_at_turning = a.width + u * (b.width - a.width);
      return m;
    }
  }
  throw NumericalError("ramp: the packet never turned around");
}

}  // namespace qlinear::tunneling
