#include "qlinear/core/wavefunction.hpp"

#include <cmath>
#include <string>

#include "qlinear/core/errors.hpp"

namespace qlinear {
namespace {

double sum_abs2(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b) {
  if (!(a == b)) throw ValidationError("wave-functions live on different grids");
}

}  // namespace

WaveFunction::WaveFunction(SpatialGrid grid, std::vector<Complex> amplitudes, double time)
    : grid_(grid), amps_(std::move(amplitudes)), time_(time) {
  if (amps_.size() != grid_.size()) {
    throw ValidationError("wave-function: " + std::to_string(amps_.size()) +
                          " amplitudes for a grid of " + std::to_string(grid_.size()));
  }
}

double WaveFunction::norm_squared() const noexcept { return sum_abs2(amps_) * grid_.dx(); }

bool WaveFunction::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) < tol;
}

WaveFunction WaveFunction::with_time(double time) const { return WaveFunction(grid_, amps_, time); }

WaveFunction WaveFunction::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NormalizationError("cannot normalize a state with norm^2 = " + std::to_string(n2), n2);
  }
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<Complex> out(amps_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = amps_[j] * scale;
  return WaveFunction(grid_, std::move(out), time_);
}

MomentumWaveFunction::MomentumWaveFunction(SpatialGrid grid, double hbar,
                                           std::vector<Complex> amplitudes, double time)
    : grid_(grid), hbar_(hbar), amps_(std::move(amplitudes)), time_(time) {
  if (amps_.size() != grid_.size()) {
    throw ValidationError("momentum wave-function: amplitude count does not match grid");
  }
  if (!(hbar > 0.0)) throw ValidationError("momentum wave-function: hbar must be positive");
}

std::vector<double> MomentumWaveFunction::momenta() const {
  std::vector<double> ps(amps_.size());
  for (std::size_t m = 0; m < ps.size(); ++m) ps[m] = momentum(m);
  return ps;
}

double MomentumWaveFunction::norm_squared() const noexcept { return sum_abs2(amps_) * dp(); }

Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a.grid(), b.grid());
  Complex s{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
  return s * a.grid().dx();
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a.grid(), b.grid());
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s * a.grid().dx());
}

double relative_l2_distance(const WaveFunction& a, const WaveFunction& b) {
  return l2_distance(a, b) / std::sqrt(b.norm_squared());
}

double l2_distance(const MomentumWaveFunction& a, const MomentumWaveFunction& b) {
  require_same_grid(a.grid(), b.grid());
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) s += std::norm(a[m] - b[m]);
  return std::sqrt(s * a.dp());
}

}  // namespace qlinear
