#include "qlinear/core/spectral.hpp"

#include <cmath>
#include <numbers>

namespace qlinear {

WaveFunction translate(const WaveFunction& psi, double shift) {
  auto out = spectral_multiply(psi.amplitudes(), psi.grid(),
                               [shift](double k) { return std::polar(1.0, -k * shift); });
  return WaveFunction(psi.grid(), std::move(out), psi.time());
}

// With x_j = x_min + j dx and p_m = hbar k_m:
//   phi_m = dx / sqrt(2 pi hbar) e^{-i k_m x_min} DFT[psi]_bin(m)
// so that sum |phi|^2 dp = dx^2/(2 pi hbar) * hbar dk * n sum |psi|^2 = dx sum |psi|^2.
MomentumWaveFunction to_momentum_rep(const WaveFunction& psi, double hbar) {
  const auto& grid = psi.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> work(psi.amplitudes().begin(), psi.amplitudes().end());
  fft::forward(work);
  const double scale = grid.dx() / std::sqrt(2.0 * std::numbers::pi * hbar);
  std::vector<Complex> sorted(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = grid.sorted_wavenumber(m);
    sorted[m] = work[grid.sorted_to_bin(m)] * std::polar(scale, -k * grid.x_min());
  }
  return MomentumWaveFunction(grid, hbar, std::move(sorted), psi.time());
}

WaveFunction to_position_rep(const MomentumWaveFunction& phi) {
  const auto& grid = phi.grid();
  const std::size_t n = grid.size();
  const double scale =
      std::sqrt(2.0 * std::numbers::pi * phi.hbar()) / (grid.dx() * static_cast<double>(n));
  std::vector<Complex> work(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = grid.sorted_wavenumber(m);
    work[grid.sorted_to_bin(m)] = phi[m] * std::polar(scale, k * grid.x_min());
  }
  fft::backward(work);
  return WaveFunction(grid, std::move(work), phi.time());
}

}  // namespace qlinear
