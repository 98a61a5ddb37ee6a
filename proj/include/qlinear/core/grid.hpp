#pragma once

#include <cstddef>
#include <vector>

namespace qlinear {

/// Uniform periodic 1-D grid, x_j = x_min + j dx for j = 0..n-1 (x_max itself
/// is the periodic image of x_min and is not a grid point).
///
/// Wavenumbers follow the discrete Fourier convention. Internally they are in
/// wraparound order (0, dk, ..., (n/2-1) dk, -n/2 dk, ..., -dk); everything
/// exported in momentum space is sorted ascending, from -n/2 dk to
/// (n/2-1) dk.
class SpatialGrid {
 public:
  static constexpr std::size_t kMinPoints = 16;

  /// Throws ValidationError unless x_max > x_min and n is a power of two
  /// no smaller than kMinPoints.
  SpatialGrid(double x_min, double x_max, std::size_t n);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double span() const noexcept { return x_max_ - x_min_; }
  double dx() const noexcept { return dx_; }
  double dk() const noexcept { return dk_; }
  /// Largest representable |k| (Nyquist), pi / dx.
  double k_max() const noexcept;

  double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * dx_; }
  std::vector<double> positions() const;

  /// Angular wavenumber of DFT bin `k` in wraparound order.
  double wavenumber(std::size_t k) const noexcept;
  /// Angular wavenumber of entry `m` of an ascending-sorted spectrum.
  double sorted_wavenumber(std::size_t m) const noexcept;
  /// DFT bin holding sorted entry `m`.
  std::size_t sorted_to_bin(std::size_t m) const noexcept { return (m + n_ / 2) % n_; }

  bool operator==(const SpatialGrid&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double dx_;
  double dk_;
};

}  // namespace qlinear
