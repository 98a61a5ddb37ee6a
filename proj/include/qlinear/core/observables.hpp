#pragma once

#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qlinear {

// Expectation values. The single-quantity functions require a normalized
// state (NormalizationError otherwise); `moments` accepts any non-zero state
// and normalizes internally, which is what trajectories with absorbing
// boundaries need.
//
// Width convention: `spatial_width` is the Gaussian width parameter, i.e.
// sqrt(2) times the rms spread, so a freshly sampled GaussianSpec reports
// exactly its sigma and a freely evolved one reports sigma(dt).

double mean_position(const WaveFunction& psi);
/// Computed spectrally, sum p |phi(p)|^2 dp.
double mean_momentum(const WaveFunction& psi, const UnitSystem& units);
double mean_momentum(const MomentumWaveFunction& phi);
/// sqrt(<x^2> - <x>^2)
double rms_width(const WaveFunction& psi);
/// sqrt(2) * rms_width
double spatial_width(const WaveFunction& psi);
/// sqrt(2) * rms momentum spread; hbar/sigma for a Gaussian.
double momentum_width(const WaveFunction& psi, const UnitSystem& units);
double momentum_width(const MomentumWaveFunction& phi);

struct Moments {
  double norm_squared = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
  double rms_x = 0.0;
  double rms_p = 0.0;

  double width() const;
};

Moments moments(const WaveFunction& psi, const UnitSystem& units);

/// Share of the norm sitting in the outer `edge_fraction` of the grid
/// (both ends together).
double edge_norm_fraction(const WaveFunction& psi, double edge_fraction);

/// Warns when more than `threshold` of the norm sits in the outer 5% of the
/// grid. Returns true when it warned.
bool check_boundary_contamination(const WaveFunction& psi, std::string_view context,
                                  double threshold = 1e-10);

}  // namespace qlinear
