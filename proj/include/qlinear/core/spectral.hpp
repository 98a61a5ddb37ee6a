#pragma once

#include <span>
#include <vector>

#include "qlinear/core/fft.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qlinear {

/// Returns IDFT[ factor(k) * DFT[amps] ], with k the angular wavenumber of
/// each bin (wraparound order). `factor` is called once per bin.
template <class Factor>
std::vector<Complex> spectral_multiply(std::span<const Complex> amps, const SpatialGrid& grid,
                                       Factor&& factor) {
  std::vector<Complex> work(amps.begin(), amps.end());
  fft::forward(work);
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (std::size_t k = 0; k < work.size(); ++k) work[k] *= factor(grid.wavenumber(k)) * inv_n;
  fft::backward(work);
  return work;
}

/// psi(x - shift), by multiplying the spectrum with exp(-i k shift). Exact for
/// band-limited periodic data; no interpolation.
WaveFunction translate(const WaveFunction& psi, double shift);

/// Discrete counterpart of phi(p) = (2 pi hbar)^(-1/2) \int psi(x) e^{-ipx/hbar} dx.
/// The result is sorted by ascending p and satisfies discrete Parseval exactly.
MomentumWaveFunction to_momentum_rep(const WaveFunction& psi, double hbar);
WaveFunction to_position_rep(const MomentumWaveFunction& phi);

}  // namespace qlinear
