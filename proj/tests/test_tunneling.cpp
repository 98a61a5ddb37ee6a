#include <doctest.h>

#include <cmath>
#include <limits>

#include "qlinear/core/errors.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/tunneling/barrier.hpp"
#include "qlinear/tunneling/scattering.hpp"
#include "qlinear/tunneling/scenarios.hpp"
#include "qlinear/tunneling/wkb.hpp"
#include "support/oracles.hpp"

using namespace qlinear;
using namespace qlinear::tunneling;

namespace {
const UnitSystem nat = UnitSystem::natural();
const double inf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("barrier geometry") {
  const BarrierSpec b{1.0, 3.0, 10.0, 5.0};
  CHECK(b.front_slope() == doctest::Approx(5.0));
  CHECK(b.descent() == 5.0);
  CHECK(b.x_end() == 8.0);
  const auto V = b.potential();
  CHECK(V(0.0) == 0.0);
  CHECK(V(2.0) == doctest::Approx(5.0));
  CHECK(V(5.5) == doctest::Approx(5.0));
  CHECK(V(9.0) == 0.0);
  CHECK(b.d_prime(5.0) == doctest::Approx(1.0));
  const BarrierSpec mirror{0.0, 2.0, 4.0, std::nullopt};
  CHECK(mirror.x_end() == 4.0);
  CHECK_THROWS_AS(BarrierSpec({2.0, 1.0, 1.0, {}}).validate(), ValidationError);
  CHECK_THROWS_AS(BarrierSpec({0.0, 1.0, -1.0, {}}).validate(), ValidationError);
  CHECK_THROWS_AS(BarrierSpec({0.0, 1.0, 1.0, 0.0}).validate(), ValidationError);
}

TEST_CASE("turning points") {
  const BarrierSpec b{0.0, 2.0, 10.0, 3.0};
  const auto tp = turning_points(b.potential(), 4.0);
  CHECK(tp.a == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(tp.b == doctest::Approx(2.0 + 0.6 * 3.0).epsilon(1e-14));
  const auto top = turning_points(b.potential(), 10.0);
  CHECK(top.a == 2.0);
  CHECK(top.b == 2.0);
  CHECK_THROWS_AS(turning_points(b.potential(), 11.0), PreconditionError);
  CHECK_THROWS_AS(turning_points(b.potential(), 0.0), PreconditionError);
  CHECK_THROWS_AS(turning_points(Potential::free(), 1.0), PreconditionError);

  const auto up = turning_points(Potential::linear(2.0), 3.0);
  CHECK(up.a == doctest::Approx(1.5));
  CHECK(up.b == inf);
  const auto down = turning_points(Potential::linear(-2.0), 3.0);
  CHECK(down.a == -inf);
  CHECK(down.b == doctest::Approx(-1.5));
}

TEST_CASE("WKB transmission anchor") {
  CHECK(wkb_transmission_from_action(0.0) == doctest::Approx(0.64).epsilon(1e-15));
  const double s = 1.7;
  CHECK(wkb_transmission_from_action(s) ==
        doctest::Approx(std::exp(-2 * s) / std::pow(1.0 + std::exp(-2 * s) / 4.0, 2)));
  const BarrierSpec b{0.0, 2.0, 10.0, 3.0};
  CHECK(wkb_transmission(b.potential(), 10.0, nat) == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("WKB action of triangular barriers") {
  const BarrierSpec b{0.0, 2.0, 10.0, 3.0};
  const double e5 = wkb_sigma_R(b.potential(), 5.0, nat);
  CHECK(e5 == doctest::Approx(5.27046276694729888666482257405).epsilon(1e-12));
  for (double E : {0.5, 2.0, 7.5, 9.9}) {
    CHECK(wkb_sigma_R(b.potential(), E, nat) ==
          doctest::Approx(qtest::triangle_sigma_R(10.0, 5.0, 10.0 / 3.0, E, nat)).epsilon(1e-10));
  }
  const auto thin = thin_barrier_scenario();
  const double E = thin.packet.p0 * thin.packet.p0 / 2.0;
  const double sR = wkb_sigma_R(thin.barrier.potential(), E, nat);
  CHECK(sR == doctest::Approx(2.409354407747336633903918891).epsilon(1e-12));
  CHECK(wkb_transmission_from_action(sR) ==
        doctest::Approx(0.00804468746068427230738210349758).epsilon(1e-12));
}

TEST_CASE("WKB on an unbounded ramp is a precondition error") {
  CHECK_THROWS_AS(wkb_sigma_R(Potential::linear(1.0), 1.0, nat), PreconditionError);
}

TEST_CASE("WKB on a sampled triangle") {
  const SpatialGrid g(-8.0, 8.0, 4096);
  const BarrierSpec b{0.0, 2.0, 10.0, 3.0};
  const auto V = Potential::sampled(g, b.potential().sample(g));
  CHECK(wkb_sigma_R(V, 5.0, nat) ==
        doctest::Approx(qtest::triangle_sigma_R(10.0, 5.0, 10.0 / 3.0, 5.0, nat)).epsilon(1e-4));
}

TEST_CASE("delayed launch keeps centre and momentum distribution") {
  const SpatialGrid g(-150.0, 150.0, 2048);
  const GaussianSpec spec{-50.0, 5.0, 2.0};
  const auto now = delayed_launch(spec, 0.0, g, nat);
  CHECK(l2_distance(now, sample_gaussian(spec, g, nat)) < 1e-13);
  const auto later = delayed_launch(spec, 8.0, g, nat);
  CHECK(mean_position(later) == doctest::Approx(-50.0).epsilon(1e-10));
  CHECK(mean_momentum(later, nat) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(spatial_width(later) == doctest::Approx(free_gaussian_width(2.0, 8.0, nat)).epsilon(1e-10));
  CHECK(momentum_width(later, nat) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(delayed_launch(spec, -1.0, g, nat), ValidationError);
}

TEST_CASE("thin barrier scattering") {
  const auto s = thin_barrier_scenario();
  const auto r = run_tunneling(s.packet, s.barrier, s.grid, s.run, s.units);
  CHECK(r.stationary);
  CHECK(r.energy == doctest::Approx(12.5));
  CHECK(r.turning_a == doctest::Approx(12.5 / 8.75).epsilon(1e-12));
  CHECK(r.turning_b == doctest::Approx(4.0 - 12.5 / 8.75).epsilon(1e-12));
  CHECK(r.d_prime == doctest::Approx(2.0 - 12.5 / 8.75).epsilon(1e-12));
  CHECK(r.accounting_error() < 1e-10);
  CHECK(r.residual < 1e-6);
  CHECK(r.transmitted == doctest::Approx(0.0587217974).epsilon(1e-6));
  CHECK(r.reflected == doctest::Approx(1.0 - 0.0587217974).epsilon(1e-6));
  CHECK(r.sigma_launch == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.t_turning_predicted == doctest::Approx(50.0 / 5.0 + 5.0 / 8.75));
  CHECK(r.t_turning > 9.0);
  CHECK(r.t_turning < 12.0);
  CHECK_FALSE(r.history.empty());
}

TEST_CASE("run settings") {
  const auto s = thin_barrier_scenario();
  auto run = s.run;
  run.solver.absorber.reset();
  CHECK_THROWS_AS(run_tunneling(s.packet, s.barrier, s.grid, run, s.units), ValidationError);
  run = s.run;
  run.solver.n_steps = 200;
  try {
    run_tunneling(s.packet, s.barrier, s.grid, run, s.units);
    FAIL("expected a timeout");
  } catch (const TunnelingTimeout& e) {
    CHECK(e.error_class() == ErrorClass::numerical);
    CHECK(e.partial().t_final == doctest::Approx(200 * run.solver.dt));
    CHECK_FALSE(e.partial().stationary);
  }
}

TEST_CASE("delay scan: transmission does not depend on arrival width") {
  const auto s = thin_barrier_scenario();
  const auto scan = width_scan(s.packet, width_scan_delays(), ScanMode::delay, s.barrier, s.grid,
                               s.run, s.units);
  REQUIRE(scan.entries.size() == 5);
  for (std::size_t i = 0; i + 1 < scan.entries.size(); ++i) {
    CHECK(scan.entries[i].result.sigma_at_turning <=
          scan.entries[i + 1].result.sigma_at_turning);
    CHECK(scan.entries[i].result.transmitted ==
          doctest::Approx(scan.entries[i + 1].result.transmitted).epsilon(1e-6));
  }
  CHECK(scan.non_decreasing());
  CHECK_THROWS_AS(width_scan(s.packet, {}, ScanMode::delay, s.barrier, s.grid, s.run, s.units),
                  ValidationError);
}

TEST_CASE("ramp scenario parameters") {
  CHECK(ramp_mass(0.002, 1.0, 0.3, 1.1) ==
        doctest::Approx(3.45189655512115566464917778541e-29).epsilon(1e-12));
  const auto r = ramp_scenario();
  CHECK(r.t_turning == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(r.units.mass() == doctest::Approx(3.45189655512115566464917778541e-29).epsilon(1e-12));
  CHECK(r.packet.p0 / r.units.mass() == doctest::Approx(1.0));
  CHECK(r.slope * r.stopping_distance ==
        doctest::Approx(r.packet.p0 * r.packet.p0 / (2.0 * r.units.mass())).epsilon(1e-12));
}
