#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "qlinear/core/errors.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/oracle/convergence.hpp"
#include "qlinear/oracle/split_step.hpp"
#include "qlinear/oracle/trajectory_csv.hpp"
#include "support/oracles.hpp"

using namespace qlinear;
using namespace qlinear::oracle;

namespace {
const UnitSystem nat = UnitSystem::natural();
const SpatialGrid grid(-60.0, 60.0, 2048);

WaveFunction from(const std::vector<Complex>& a, double t) { return WaveFunction(grid, a, t); }
}  // namespace

TEST_CASE("split-step with no potential is exact") {
  const GaussianSpec spec{0.0, 1.0, 1.0};
  const auto psi = sample_gaussian(spec, grid, nat);
  const auto out = evolve_to(psi, Potential::free(), 2.0, 0.25, nat);
  CHECK(out.time() == doctest::Approx(2.0));
  CHECK(qtest::l2(qtest::free_gaussian(spec, 2.0, grid, nat), out) < 1e-12);
}

TEST_CASE("split-step converges to the linear-potential closed form") {
  const GaussianSpec spec{1.0, -0.5, 1.2};
  const double V0 = 0.8;
  const auto psi = sample_gaussian(spec, grid, nat);
  const auto ref = from(qtest::linear_gaussian(spec, V0, 1.0, grid, nat), 1.0);
  const auto coarse = evolve_to(psi, Potential::linear(V0), 1.0, 0.01, nat);
  const auto fine = evolve_to(psi, Potential::linear(V0), 1.0, 0.001, nat);
  const double ec = l2_distance(coarse, ref), ef = l2_distance(fine, ref);
  CHECK(ef < 1e-5);
  CHECK(ec / ef == doctest::Approx(100.0).epsilon(0.02));
}

TEST_CASE("convergence study: slope 2 against a reference and by Richardson") {
  const GaussianSpec spec{0.0, 0.5, 1.0};
  const double V0 = -1.2;
  const auto psi = sample_gaussian(spec, grid, nat);
  const auto ref = from(qtest::linear_gaussian(spec, V0, 1.0, grid, nat), 1.0);
  const std::vector<double> dts{0.04, 0.02, 0.01, 0.005};
  const auto s = convergence_study(psi, Potential::linear(V0), 1.0, dts, nat, ref);
  CHECK(s.points.size() == 4);
  CHECK(s.monotone);
  CHECK(s.slope == doctest::Approx(2.0).epsilon(0.02));
  const auto r = convergence_study(psi, Potential::linear(V0), 1.0, dts, nat);
  CHECK(r.slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS(convergence_study(psi, Potential::linear(V0), 1.0, std::vector<double>{0.1},
                                    nat),
                  ValidationError);
  CHECK_THROWS_AS(convergence_study(psi, Potential::linear(V0), 1.0,
                                    std::vector<double>{0.01, 0.02}, nat),
                  ValidationError);
}

TEST_CASE("roundoff plateau is excluded from the fit") {
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, grid, nat);
  const std::vector<double> dts{0.5, 0.25, 0.125};
  const auto s = convergence_study(psi, Potential::free(), 1.0, dts, nat,
                                   from(qtest::free_gaussian({0.0, 0.0, 1.0}, 1.0, grid, nat), 1.0));
  CHECK(s.points_in_fit < 2);
  CHECK(std::isnan(s.slope));
  CHECK_FALSE(s.flags.empty());
}

TEST_CASE("trajectory recording and norm conservation") {
  const auto psi = sample_gaussian({0.0, 0.5, 1.0}, grid, nat);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.n_steps = 105;
  cfg.record_every = 10;
  cfg.store_states = true;
  const auto traj = split_step_evolve(psi, Potential::linear(0.3), cfg, nat);
  REQUIRE(traj.snapshots.size() == 12);
  CHECK(traj.snapshots.back().obs.time == doctest::Approx(1.05));
  CHECK(traj.snapshots[3].psi.has_value());
  for (double n : traj.norm_history) CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
  const double t = 1.05;
  CHECK(traj.snapshots.back().obs.mean_x ==
        doctest::Approx(0.5 * t - 0.5 * 0.3 * t * t).epsilon(1e-8));
  CHECK(traj.snapshots.back().obs.mean_p == doctest::Approx(0.5 - 0.3 * t).epsilon(1e-8));

  const auto table = trajectory_table(traj, nat);
  CHECK(table.rows() == 12);
  std::ostringstream os;
  table.write(os);
  CHECK(os.str().rfind("# qlinear trajectory v1\nt[nat],mean_x[nat],mean_p[nat],width[nat],norm[1]\n",
                       0) == 0);
  CHECK_THROWS_AS(trajectory_table(traj, nat, std::vector<double>{1.0}), ValidationError);
}

TEST_CASE("absorber removes outgoing probability and books it by side") {
  const SpatialGrid g(-50.0, 50.0, 1024);
  const auto psi = sample_gaussian({20.0, 3.0, 2.0}, g, nat);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.n_steps = 6000;
  cfg.record_every = 100;
  cfg.absorber = Absorber::for_momentum(7.0, 0.1, g.span(), nat);
  const auto traj = split_step_evolve(psi, Potential::free(), cfg, nat);
  const double remaining = traj.final_state.norm_squared();
  CHECK(remaining < 1e-6);
  CHECK(traj.absorbed_right > 0.99);
  CHECK(traj.absorbed_left < 1e-3);
  CHECK(remaining + traj.absorbed_left + traj.absorbed_right == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("absorber and solver validation") {
  CHECK_THROWS_AS(Absorber({0.5, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(Absorber({0.1, -1.0}).validate(), ValidationError);
  SolverConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg.dt = 0.1;
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, grid, nat);
  CHECK_THROWS_AS(evolve_to(psi, Potential::free(), 1.0, 0.3, nat), ValidationError);
}

TEST_CASE("time reversal recovers the initial state") {
  const auto psi = sample_gaussian({0.0, 0.7, 1.0}, grid, nat);
  const auto V = Potential::piecewise_linear({{-5.0, 0.0}, {0.0, 0.5}, {5.0, 0.0}});
  const auto fwd = evolve_to(psi, V, 2.0, 0.01, nat);
  const auto back = evolve_backward(fwd, V, 2.0, 0.01, nat);
  CHECK(l2_distance(back, psi) < 1e-10);
  CHECK(back.time() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("propagator stepping") {
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, grid, nat);
  SplitStepPropagator prop(psi, Potential::linear(1.0), 0.05, std::nullopt, nat);
  prop.step(20);
  CHECK(prop.time() == doctest::Approx(1.0));
  CHECK_FALSE(prop.absorbing());
  CHECK(prop.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  const auto o = observe(prop.state(), nat);
  CHECK(o.mean_p == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("absorber reflection stays below 1e-8") {
  // The layer the thin-barrier runs use, probed at their packet momentum and
  // at the slow edge of its momentum distribution.
  const SpatialGrid g(-150.0, 150.0, 2048);
  for (const GaussianSpec spec : {GaussianSpec{60.0, 5.0, 2.0}, GaussianSpec{60.0, 3.0, 8.0}}) {
    const auto psi = sample_gaussian(spec, g, nat);
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.n_steps = static_cast<std::size_t>(110.0 / spec.p0 / cfg.dt);
    cfg.record_every = cfg.n_steps;
    cfg.absorber = Absorber::for_momentum(9.0, 0.1, g.span(), nat);
    const auto traj = split_step_evolve(psi, Potential::free(), cfg, nat);
    double interior = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.x(j)) < 120.0) interior += std::norm(traj.final_state[j]) * g.dx();
    }
    CHECK(interior < 1e-8);
  }
}
