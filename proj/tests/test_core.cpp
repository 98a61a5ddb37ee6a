#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qlinear/core/csv.hpp"
#include "qlinear/core/diagnostics.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/core/fft.hpp"
#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/grid.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/core/potential.hpp"
#include "qlinear/core/spectral.hpp"
#include "qlinear/core/units.hpp"
#include "support/oracles.hpp"

using namespace qlinear;

namespace {
const UnitSystem nat = UnitSystem::natural();
}

TEST_CASE("grid geometry and wavenumber ordering") {
  const SpatialGrid g(-8.0, 8.0, 16);
  CHECK(g.dx() == doctest::Approx(1.0));
  CHECK(g.dk() == doctest::Approx(2.0 * std::numbers::pi / 16.0));
  CHECK(g.k_max() == doctest::Approx(std::numbers::pi));
  CHECK(g.x(0) == -8.0);
  CHECK(g.x(15) == doctest::Approx(7.0));
  CHECK(g.wavenumber(1) == doctest::Approx(g.dk()));
  CHECK(g.wavenumber(8) == doctest::Approx(-8.0 * g.dk()));
  CHECK(g.wavenumber(15) == doctest::Approx(-g.dk()));
  CHECK(g.sorted_wavenumber(0) == doctest::Approx(-8.0 * g.dk()));
  for (std::size_t m = 0; m < 16; ++m) {
    CHECK(g.wavenumber(g.sorted_to_bin(m)) == doctest::Approx(g.sorted_wavenumber(m)));
  }
}

TEST_CASE("grid rejects bad sizes and bounds") {
  CHECK_THROWS_AS(SpatialGrid(0.0, 1.0, 100), ValidationError);
  CHECK_THROWS_AS(SpatialGrid(0.0, 1.0, 8), ValidationError);
  CHECK_THROWS_AS(SpatialGrid(1.0, 1.0, 64), ValidationError);
}

TEST_CASE("unit systems") {
  const auto si = UnitSystem::si(2e-27);
  CHECK(si.hbar() == kHbarSI);
  CHECK(si.mass() == 2e-27);
  CHECK(si.label() == "si");
  CHECK(nat.hbar() == 1.0);
  CHECK(nat.with_mass(3.0).mass() == 3.0);
  CHECK_THROWS_AS(UnitSystem::si(-1.0), ValidationError);
}

TEST_CASE("error classes map to exit codes") {
  CHECK(static_cast<int>(ValidationError("x").error_class()) == 1);
  CHECK(static_cast<int>(NumericalError("x").error_class()) == 2);
  CHECK(static_cast<int>(PreconditionError("x").error_class()) == 3);
  const CoverageError c("x", 2.5);
  CHECK(c.deficit() == 2.5);
  CHECK(c.error_class() == ErrorClass::precondition);
}

TEST_CASE("fft agrees with a direct DFT and inverts") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  std::vector<Complex> x(64);
  for (auto& v : x) v = {d(rng), d(rng)};
  const auto want = qtest::brute_dft(x);
  auto got = x;
  fft::forward(got);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);
  fft::backward(got);
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(got[j] / 64.0 - x[j]) < 1e-14);
}

TEST_CASE("sampled Gaussian matches the closed form and is normalized") {
  const SpatialGrid g(-30.0, 30.0, 1024);
  const GaussianSpec spec{1.5, -0.7, 1.3};
  const auto psi = sample_gaussian(spec, g, nat, 0.25);
  CHECK(psi.time() == 0.25);
  CHECK(psi.is_normalized(1e-12));
  CHECK(qtest::l2(qtest::free_gaussian(spec, 0.0, g, nat), psi) < 1e-13);
}

TEST_CASE("Gaussian coverage: error below 6 sigma, warning below 8") {
  const SpatialGrid g(-10.0, 10.0, 1024);
  CHECK_THROWS_AS(sample_gaussian({7.0, 0.0, 1.0}, g, nat), CoverageError);
  try {
    sample_gaussian({7.0, 0.0, 1.0}, g, nat);
  } catch (const CoverageError& e) {
    CHECK(e.deficit() > 0.0);
  }
  std::vector<std::string> seen;
  ScopedWarningHandler capture([&](std::string_view m) { seen.emplace_back(m); });
  sample_gaussian({2.8, 0.0, 1.0}, g, nat);
  CHECK(seen.size() == 1);
  // Momentum side: k_max = pi/dx ~ 160.8 here.
  CHECK_THROWS_AS(sample_gaussian({0.0, 158.0, 1.0}, g, nat), CoverageError);
}

TEST_CASE("GaussianSpec validation") {
  CHECK_THROWS_AS(GaussianSpec({0.0, 0.0, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS(GaussianSpec({NAN, 0.0, 1.0}).validate(), ValidationError);
}

TEST_CASE("momentum representation: Parseval, shape and round trip") {
  const SpatialGrid g(-40.0, 40.0, 2048);
  const GaussianSpec spec{-2.0, 1.5, 1.7};
  const auto psi = sample_gaussian(spec, g, nat);
  const auto phi = to_momentum_rep(psi, 1.0);
  CHECK(phi.norm_squared() == doctest::Approx(psi.norm_squared()).epsilon(1e-14));
  double worst = 0.0;
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double p = phi.momentum(m);
    const double want = spec.sigma / std::sqrt(std::numbers::pi) *
                        std::exp(-spec.sigma * spec.sigma * (p - spec.p0) * (p - spec.p0));
    worst = std::max(worst, std::abs(std::norm(phi[m]) - want));
  }
  CHECK(worst < 1e-12);
  const auto back = to_position_rep(phi);
  CHECK(l2_distance(back, psi) < 1e-13);
}

TEST_CASE("spectral translation is exact for band-limited data") {
  const SpatialGrid g(-30.0, 30.0, 1024);
  const GaussianSpec spec{0.0, 0.8, 1.2};
  const auto psi = sample_gaussian(spec, g, nat);
  const auto moved = translate(psi, 3.3);
  // psi(x - 3.3): the closed form of a packet at x0 = 3.3 with the same
  // carrier phase reference shifted along.
  auto want = qtest::free_gaussian({3.3, 0.8, 1.2}, 0.0, g, nat);
  CHECK(qtest::l2(want, moved) < 1e-12);
}

TEST_CASE("observables of a Gaussian") {
  const SpatialGrid g(-40.0, 40.0, 2048);
  const auto psi = sample_gaussian({1.25, -0.5, 2.0}, g, nat);
  CHECK(mean_position(psi) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(mean_momentum(psi, nat) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(spatial_width(psi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rms_width(psi) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(momentum_width(psi, nat) == doctest::Approx(0.5).epsilon(1e-12));
  const auto m = moments(psi, nat);
  CHECK(m.width() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(edge_norm_fraction(psi, 0.05) < 1e-100);
}

TEST_CASE("single observables require normalization; moments do not") {
  const SpatialGrid g(-40.0, 40.0, 2048);
  const auto psi = sample_gaussian({0.0, 1.0, 2.0}, g, nat);
  std::vector<Complex> half(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& a : half) a *= std::sqrt(0.5);
  const WaveFunction w(g, half);
  CHECK_THROWS_AS(mean_position(w), NormalizationError);
  const auto m = moments(w, nat);
  CHECK(m.norm_squared == doctest::Approx(0.5));
  CHECK(m.mean_p == doctest::Approx(1.0));
}

TEST_CASE("boundary contamination warns") {
  const SpatialGrid g(-10.0, 10.0, 512);
  std::vector<Complex> amps(512, 0.0);
  amps[2] = 1.0;
  const WaveFunction edge(g, amps);
  int warnings = 0;
  ScopedWarningHandler capture([&](std::string_view) { ++warnings; });
  CHECK(check_boundary_contamination(edge, "test"));
  CHECK(warnings == 1);
}

TEST_CASE("potential variants") {
  const auto lin = Potential::linear(2.0);
  CHECK(lin(3.0) == 6.0);
  CHECK(lin.knots().empty());
  const auto pw = Potential::piecewise_linear({{0.0, 0.0}, {2.0, 4.0}, {3.0, 0.0}});
  CHECK(pw(-5.0) == 0.0);
  CHECK(pw(1.0) == doctest::Approx(2.0));
  CHECK(pw(2.5) == doctest::Approx(2.0));
  CHECK(pw(10.0) == 0.0);
  CHECK(pw.knots() == std::vector<double>{0.0, 2.0, 3.0});
  CHECK_THROWS_AS(Potential::piecewise_linear({{0.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(Potential::piecewise_linear({{1.0, 0.0}, {0.0, 1.0}}), ValidationError);

  const SpatialGrid g(0.0, 16.0, 16);
  std::vector<double> v(16);
  for (std::size_t j = 0; j < 16; ++j) v[j] = static_cast<double>(j);
  const auto s = Potential::sampled(g, v);
  CHECK(s(2.5) == doctest::Approx(2.5));
  CHECK(s(-3.0) == 0.0);
  CHECK(s(40.0) == 15.0);
  CHECK(Potential::free()(5.0) == 0.0);
  CHECK(lin.sample(g)[3] == doctest::Approx(6.0));
}

TEST_CASE("csv layout and unit tags") {
  CHECK(unit_tag(Dimension::length, UnitSystem::si(1.0)) == "m");
  CHECK(unit_tag(Dimension::momentum, UnitSystem::si(1.0)) == "kg*m/s");
  CHECK(unit_tag(Dimension::velocity, UnitSystem::si(1.0)) == "m/s");
  CHECK(unit_tag(Dimension::length, nat) == "nat");
  CHECK(unit_tag(Dimension::phase, nat) == "rad");
  CsvTable t("demo", 3, {{"t", Dimension::time}, {"f", Dimension::dimensionless}}, nat);
  t.add_row({0.5, -2.0});
  CHECK_THROWS_AS(t.add_row({1.0}), ValidationError);
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() == "# qlinear demo v3\nt[nat],f[1]\n5.000000000000e-01,-2.000000000000e+00\n");
}
