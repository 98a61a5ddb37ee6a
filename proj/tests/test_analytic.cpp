#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numbers>
#include <random>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/analytic/phases.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/core/spectral.hpp"
#include "support/oracles.hpp"

using namespace qlinear;
using analytic::Ordering;

namespace {
const UnitSystem nat = UnitSystem::natural();
const SpatialGrid grid(-60.0, 60.0, 2048);
}  // namespace

TEST_CASE("free evolution matches the textbook Gaussian") {
  const GaussianSpec spec{-1.0, 0.9, 1.1};
  const auto psi = sample_gaussian(spec, grid, nat);
  for (double t : {0.3, 1.0, 4.0}) {
    const auto out = analytic::free_evolve(psi, t, nat);
    CHECK(out.time() == doctest::Approx(t));
    CHECK(qtest::l2(qtest::free_gaussian(spec, t, grid, nat), out) < 1e-12);
  }
}

TEST_CASE("linear evolution matches the pointwise closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const GaussianSpec spec{2.0 * u(rng), 1.5 * u(rng), 1.1 + 0.3 * u(rng)};
    const double V0 = 1.8 * u(rng), t = 1.2 + u(rng);
    const auto psi = sample_gaussian(spec, grid, nat);
    const auto want = qtest::linear_gaussian(spec, V0, t, grid, nat);
    CHECK(qtest::l2(want, analytic::linear_evolve(psi, V0, t, nat, Ordering::left).psi) < 1e-11);
    CHECK(qtest::l2(want, analytic::linear_evolve(psi, V0, t, nat, Ordering::right).psi) < 1e-11);
  }
}

TEST_CASE("SI units: same state as the natural-unit run after rescaling") {
  const double m = 1.6726e-27, V0 = 3e-23, sigma = 1e-6;
  const auto si = UnitSystem::si(m);
  const SpatialGrid g(-60.0 * sigma, 60.0 * sigma, 2048);
  const GaussianSpec spec{0.0, 0.0, sigma};
  const double t = 1e-5;
  const auto psi = sample_gaussian(spec, g, si);
  const auto out = analytic::linear_evolve(psi, V0, t, si).psi;
  CHECK(qtest::l2(qtest::linear_gaussian(spec, V0, t, g, si), out) < 1e-11);
  CHECK(mean_position(out) == doctest::Approx(-V0 * t * t / (2.0 * m)).epsilon(1e-9));
}

TEST_CASE("ledger entries") {
  const UnitSystem u(2.0, 3.0, "custom");
  const double V0 = 0.7, dt = 1.3;
  const auto l = analytic::PhaseLedger::make(V0, dt, u, Ordering::left);
  CHECK(l.cubic_phase == doctest::Approx(-V0 * V0 * dt * dt * dt / 36.0));
  CHECK(l.potential_phase_coeff == doctest::Approx(-V0 * dt / 2.0));
  CHECK(l.momentum_shift_phase_coeff == doctest::Approx(V0 * dt * dt / 12.0));
  CHECK(l.argument_shift == doctest::Approx(V0 * dt * dt / 6.0));
  CHECK(l.momentum_kick == doctest::Approx(V0 * dt));
  const auto r = analytic::PhaseLedger::make(V0, dt, u, Ordering::right);
  CHECK(r.cubic_phase == doctest::Approx(V0 * V0 * dt * dt * dt / 18.0));
  CHECK(r.momentum_shift_phase_coeff == doctest::Approx(-V0 * dt * dt / 12.0));
  CHECK(std::string(analytic::to_string(Ordering::momentum)) == "momentum");
}

TEST_CASE("zero slope reduces to free evolution") {
  const auto psi = sample_gaussian({0.5, 1.0, 1.0}, grid, nat);
  const auto a = analytic::linear_evolve(psi, 0.0, 2.0, nat).psi;
  const auto b = analytic::free_evolve(psi, 2.0, nat);
  CHECK(l2_distance(a, b) == 0.0);
}

TEST_CASE("backward evolution undoes forward evolution") {
  const auto psi = sample_gaussian({0.5, -0.4, 1.2}, grid, nat);
  const auto fwd = analytic::linear_evolve(psi, 1.1, 1.5, nat).psi;
  const auto back = analytic::linear_evolve(fwd, 1.1, -1.5, nat).psi;
  CHECK(l2_distance(back, psi) < 1e-12);
  CHECK(back.time() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("steps compose") {
  const auto psi = sample_gaussian({0.0, 0.3, 1.0}, grid, nat);
  const auto once = analytic::linear_evolve(psi, -0.8, 1.0, nat).psi;
  const auto half = analytic::linear_evolve(psi, -0.8, 0.5, nat).psi;
  const auto twice = analytic::linear_evolve(half, -0.8, 0.5, nat).psi;
  CHECK(l2_distance(once, twice) < 1e-12);
}

TEST_CASE("momentum representation evolution agrees with position form") {
  const auto psi = sample_gaussian({1.0, -0.5, 1.3}, grid, nat);
  const double V0 = 0.9, dt = 1.4;
  const auto x_side = analytic::linear_evolve(psi, V0, dt, nat).psi;
  const auto p_side =
      analytic::linear_evolve_momentum(to_momentum_rep(psi, nat.hbar()), V0, dt, nat);
  CHECK(p_side.ledger.ordering == Ordering::momentum);
  CHECK(l2_distance(to_position_rep(p_side.phi), x_side) < 1e-12);
  CHECK_THROWS_AS(analytic::linear_evolve(psi, V0, dt, nat, Ordering::momentum),
                  ValidationError);
}

TEST_CASE("leaving the grid is a coverage error") {
  const auto psi = sample_gaussian({0.0, 0.0, 1.0}, grid, nat);
  CHECK_THROWS_AS(analytic::linear_evolve(psi, 20.0, 3.0, nat), CoverageError);
  CHECK_THROWS_AS(analytic::linear_evolve(psi, 50.0, 1.0, nat), CoverageError);
}

TEST_CASE("commutator algebra") {
  analytic::OperatorPoly x, p, p2, one;
  x.c[1] = 1.0;
  p.c[2] = 1.0;
  p2.c[3] = 1.0;
  one.c[0] = 1.0;
  const double hbar = 1.7;
  const auto xp = analytic::commutator(x, p, hbar);
  CHECK(xp.c[0] == Complex(0.0, hbar));
  CHECK(xp.c[1] == 0.0);
  const auto xp2 = analytic::commutator(x, p2, hbar);
  CHECK(xp2.c[2] == Complex(0.0, 2.0 * hbar));
  CHECK(analytic::commutator(p, p2, hbar).is_zero());
  CHECK(analytic::commutator(one, x, hbar).is_zero());
  CHECK(analytic::commutator(p, x, hbar).c[0] == Complex(0.0, -hbar));
}

TEST_CASE("Zassenhaus terms") {
  const UnitSystem u(1.3, 0.7, "custom");
  const double V0 = -1.1, dt = 0.6;
  const auto z = analytic::zassenhaus_terms(V0, dt, u);
  CHECK(z.c2_coeff == doctest::Approx(V0 * dt * dt / (2.0 * 0.7 * 1.3)).epsilon(1e-14));
  CHECK(z.c3_coeff ==
        doctest::Approx(-V0 * V0 * dt * dt * dt / (6.0 * 0.7 * 1.3)).epsilon(1e-14));
  CHECK(z.c4_is_zero);
}

TEST_CASE("plane-wave phase") {
  const auto ph = analytic::plane_wave_phase(0.7, 1.3, 0.9, nat);
  CHECK(ph.p_out == doctest::Approx(0.7 - 1.3 * 0.9));
  CHECK(ph.total() == doctest::Approx(-0.057285).epsilon(1e-12));
  CHECK(ph.total() == doctest::Approx(qtest::plane_wave_phase(0.7, 1.3, 0.9, nat)).epsilon(1e-12));
  const UnitSystem u(0.8, 2.5, "custom");
  for (double p : {-1.0, 0.0, 0.4, 2.0}) {
    const auto q = analytic::plane_wave_phase(p, -0.6, 1.7, u);
    CHECK(q.total() == doctest::Approx(qtest::plane_wave_phase(p, -0.6, 1.7, u)).epsilon(1e-12));
    CHECK(std::abs(q.factor()) == doctest::Approx(1.0));
  }
}

TEST_CASE("momentum density shifts by the kick") {
  const auto psi = sample_gaussian({0.5, 0.8, 1.1}, grid, nat);
  const double V0 = 1.2, dt = 0.9;
  const auto phi0 = to_momentum_rep(analytic::free_evolve(psi, dt, nat), 1.0);
  const auto phi = to_momentum_rep(analytic::linear_evolve(psi, V0, dt, nat).psi, 1.0);
  // V0 dt = 1.08 is not a multiple of dp, so compare against the closed-form density.
  double worst = 0.0;
  const double s = 1.1;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double p = phi.momentum(m) + V0 * dt - 0.8;
    const double want = s / std::sqrt(std::numbers::pi) * std::exp(-s * s * p * p);
    worst = std::max(worst, std::abs(std::norm(phi[m]) - want));
  }
  CHECK(worst < 1e-12);
  CHECK(phi0.norm_squared() == doctest::Approx(phi.norm_squared()));
}

TEST_CASE("plane-wave phase parts") {
  const auto zero = analytic::plane_wave_phase(0.0, 1.0, 1.0, nat);
  CHECK(zero.cubic == doctest::Approx(1.0 / 3.0));
  CHECK(zero.momentum_linear == 0.0);
  const auto free = analytic::plane_wave_phase(1.5, 0.0, 2.0, nat);
  CHECK(free.cubic == 0.0);
  CHECK(free.momentum_linear == 0.0);
  CHECK(free.total() == doctest::Approx(-1.5 * 1.5 * 2.0 / 2.0));
}
