#include "qlinear/core/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qlinear/core/diagnostics.hpp"
#include "qlinear/core/errors.hpp"

namespace qlinear {

void GaussianSpec::validate() const {
  if (!std::isfinite(x0) || !std::isfinite(p0) || !std::isfinite(sigma)) {
    throw ValidationError("gaussian: parameters must be finite");
  }
  if (!(sigma > 0.0)) throw ValidationError("gaussian: sigma must be positive");
}

namespace {

constexpr double kRequiredSigmas = 6.0;
constexpr double kQuietSigmas = 8.0;

// Number of widths between the packet centre and the nearest grid edge.
double position_coverage(const GaussianSpec& s, const SpatialGrid& g) {
  const double room = std::min(s.x0 - g.x_min(), g.x_min() + g.span() - g.dx() - s.x0);
  return room / s.sigma;
}

double momentum_coverage(const GaussianSpec& s, const SpatialGrid& g, double hbar) {
  const double k0 = s.p0 / hbar;
  return (g.k_max() - std::abs(k0)) * s.sigma;
}

}  // namespace

WaveFunction sample_gaussian(const GaussianSpec& spec, const SpatialGrid& grid,
                             const UnitSystem& units, double t_initial) {
  spec.validate();
  const double cov_x = position_coverage(spec, grid);
  if (cov_x < kRequiredSigmas) {
    const double deficit = (kRequiredSigmas - cov_x) * spec.sigma;
    std::ostringstream msg;
    msg << "gaussian: grid covers only " << cov_x << " sigma around x0; extend the grid by "
        << deficit << " length units";
    throw CoverageError(msg.str(), deficit);
  }
  const double cov_k = momentum_coverage(spec, grid, units.hbar());
  if (cov_k < kRequiredSigmas) {
    const double deficit = (kRequiredSigmas - cov_k) / spec.sigma * units.hbar();
    std::ostringstream msg;
    msg << "gaussian: momentum grid covers only " << cov_k
        << " momentum widths around p0; the Nyquist momentum is short by " << deficit;
    throw CoverageError(msg.str(), deficit);
  }
  if (cov_x < kQuietSigmas || cov_k < kQuietSigmas) {
    std::ostringstream msg;
    msg << "gaussian: marginal grid coverage (" << cov_x << " sigma in x, " << cov_k
        << " widths in p)";
    warn(msg.str());
  }

  const double amplitude = std::pow(std::numbers::pi, -0.25) / std::sqrt(spec.sigma);
  const double k0 = spec.p0 / units.hbar();
  std::vector<Complex> amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = grid.x(j) - spec.x0;
    amps[j] = std::polar(amplitude * std::exp(-u * u / (2.0 * spec.sigma * spec.sigma)), k0 * u);
  }
  return WaveFunction(grid, std::move(amps), t_initial);
}

double free_gaussian_width(double sigma, double dt, const UnitSystem& units) {
  const double tau = units.hbar() * dt / (units.mass() * sigma * sigma);
  return sigma * std::sqrt(1.0 + tau * tau);
}

}  // namespace qlinear
