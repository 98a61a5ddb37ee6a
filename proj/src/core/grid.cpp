#include "qlinear/core/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qlinear/core/errors.hpp"

namespace qlinear {

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw ValidationError("grid: need finite x_min < x_max");
  }
  if (n < kMinPoints || !std::has_single_bit(n)) {
    throw ValidationError("grid: point count " + std::to_string(n) +
                          " must be a power of two and at least " + std::to_string(kMinPoints));
  }
  dx_ = (x_max - x_min) / static_cast<double>(n);
  dk_ = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx_);
}

double SpatialGrid::k_max() const noexcept { return std::numbers::pi / dx_; }

std::vector<double> SpatialGrid::positions() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

double SpatialGrid::wavenumber(std::size_t k) const noexcept {
  const auto signed_k = k < n_ / 2 ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(n_);
  return signed_k * dk_;
}

double SpatialGrid::sorted_wavenumber(std::size_t m) const noexcept {
  return (static_cast<double>(m) - static_cast<double>(n_ / 2)) * dk_;
}

}  // namespace qlinear
