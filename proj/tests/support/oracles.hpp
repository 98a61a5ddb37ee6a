#pragma once

// Reference implementations used only by the tests. None of them goes
// through the library's FFT, spectral shifts or propagators.

#include <array>
#include <vector>

#include "qlinear/core/gaussian.hpp"
#include "qlinear/core/grid.hpp"
#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qtest {

using qlinear::Complex;

/// Free Gaussian at time t, evaluated pointwise from the textbook formula.
std::vector<Complex> free_gaussian(const qlinear::GaussianSpec& g, double t,
                                   const qlinear::SpatialGrid& grid,
                                   const qlinear::UnitSystem& units);

/// Gaussian evolved in V = V0 x, pointwise:
/// e^{-i V0^2 t^3/(6 m hbar)} e^{-i V0 x t/hbar} psi_free(x + V0 t^2/(2m), t).
std::vector<Complex> linear_gaussian(const qlinear::GaussianSpec& g, double V0, double t,
                                     const qlinear::SpatialGrid& grid,
                                     const qlinear::UnitSystem& units);

/// -(1/(2 m hbar)) \int_0^dt (p - V0 s)^2 ds by composite Simpson.
double plane_wave_phase(double p, double V0, double dt, const qlinear::UnitSystem& units);

/// sigma_R of a triangle (linear front of slope s1 up to `peak`, linear
/// descent of slope s2) at energy E: (2/3) sqrt(2m)/hbar (peak-E)^{3/2} (1/s1 + 1/s2).
double triangle_sigma_R(double peak, double s1, double s2, double E,
                        const qlinear::UnitSystem& units);

/// O(n^2) forward DFT, X_k = sum_j x_j e^{-2 pi i jk/n}.
std::vector<Complex> brute_dft(const std::vector<Complex>& x);

/// sqrt(sum |a_j - b_j|^2 dx)
double l2(const std::vector<Complex>& a, const qlinear::WaveFunction& b);

/// max_j | |a_j|^2 - |b_j|^2 |
double max_density_gap(const qlinear::WaveFunction& a, const qlinear::WaveFunction& b);

/// The gate as an explicit 2x2 matrix on z-basis amplitudes:
/// H diag(1, e^{i phi}) H with H the Hadamard map between the z and x bases.
std::array<Complex, 2> gate_matrix_apply(const std::array<Complex, 2>& z, double phi);

}  // namespace qtest
