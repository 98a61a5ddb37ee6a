#pragma once

#include "qlinear/core/grid.hpp"
#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qlinear {

/// Minimum-uncertainty packet
///   psi(x) = pi^(-1/4) sigma^(-1/2) exp[i p0 (x - x0)/hbar - (x - x0)^2 / (2 sigma^2)].
/// `sigma` is the width parameter; the rms width of |psi|^2 is sigma/sqrt(2).
struct GaussianSpec {
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma = 1.0;

  /// Throws ValidationError if sigma is not positive or any field is not finite.
  void validate() const;

  bool operator==(const GaussianSpec&) const = default;
};

/// Samples the packet at the grid points and stamps it with `t_initial`.
/// The grid must cover x0 +- 6 sigma in position and p0 +- 6 hbar/sigma in
/// momentum (CoverageError otherwise); coverage below 8 sigma is accepted
/// with a warning.
WaveFunction sample_gaussian(const GaussianSpec& spec, const SpatialGrid& grid,
                             const UnitSystem& units, double t_initial = 0.0);

/// Width parameter of the freely evolved packet,
/// sigma(dt) = sigma sqrt(1 + (hbar dt / (m sigma^2))^2).
double free_gaussian_width(double sigma, double dt, const UnitSystem& units);

}  // namespace qlinear
