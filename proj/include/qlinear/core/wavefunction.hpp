#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qlinear/core/grid.hpp"

namespace qlinear {

using Complex = std::complex<double>;

/// Tolerance on |norm^2 - 1| for a state to count as normalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Position-space amplitudes on a grid, stamped with the time they refer to.
class WaveFunction {
 public:
  WaveFunction(SpatialGrid grid, std::vector<Complex> amplitudes, double time = 0.0);

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t j) const noexcept { return amps_[j]; }
  std::size_t size() const noexcept { return amps_.size(); }
  double time() const noexcept { return time_; }

  /// sum |psi_j|^2 dx
  double norm_squared() const noexcept;
  bool is_normalized(double tol = kNormalizationTolerance) const noexcept;

  WaveFunction with_time(double time) const;
  WaveFunction normalized() const;

 private:
  SpatialGrid grid_;
  std::vector<Complex> amps_;
  double time_;
};

/// Momentum-space amplitudes, ascending in p = hbar k, on the grid conjugate
/// to `grid()`. Normalized so that sum |phi_m|^2 dp equals the position-space
/// sum |psi_j|^2 dx exactly.
class MomentumWaveFunction {
 public:
  MomentumWaveFunction(SpatialGrid grid, double hbar, std::vector<Complex> amplitudes,
                       double time = 0.0);

  const SpatialGrid& grid() const noexcept { return grid_; }
  double hbar() const noexcept { return hbar_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t m) const noexcept { return amps_[m]; }
  std::size_t size() const noexcept { return amps_.size(); }
  double time() const noexcept { return time_; }

  double dp() const noexcept { return hbar_ * grid_.dk(); }
  double momentum(std::size_t m) const noexcept { return hbar_ * grid_.sorted_wavenumber(m); }
  std::vector<double> momenta() const;

  double norm_squared() const noexcept;

 private:
  SpatialGrid grid_;
  double hbar_;
  std::vector<Complex> amps_;
  double time_;
};

/// <a|b> = sum conj(a_j) b_j dx. Grids must match.
Complex inner_product(const WaveFunction& a, const WaveFunction& b);
/// sqrt(sum |a_j - b_j|^2 dx). Grids must match.
double l2_distance(const WaveFunction& a, const WaveFunction& b);
/// l2_distance(a, b) / ||b||.
double relative_l2_distance(const WaveFunction& a, const WaveFunction& b);
double l2_distance(const MomentumWaveFunction& a, const MomentumWaveFunction& b);

}  // namespace qlinear
