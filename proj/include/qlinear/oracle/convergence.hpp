#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlinear/core/potential.hpp"
#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qlinear::oracle {

struct ConvergencePoint {
  double dt = 0.0;
  double error = 0.0;  ///< L2 distance to the reference
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  /// Least-squares slope of log(error) against log(dt) over the points kept
  /// in the asymptotic range (NaN with fewer than two).
  double slope = 0.0;
  std::size_t points_in_fit = 0;
  /// False when some error failed to decrease with dt, or hit the roundoff floor.
  bool monotone = true;
  std::vector<std::string> flags;
};

/// Errors below this are treated as the roundoff plateau and left out of the fit.
inline constexpr double kRoundoffFloor = 1e-12;

/// Runs the split-step solver for `duration` at each dt in `dt_list`
/// (strictly decreasing, each dividing `duration`) and measures the L2 error
/// against `reference`, or, without one, against the Richardson
/// extrapolation (4 psi(dt_min/2) - psi(dt_min)) / 3.
ConvergenceStudy convergence_study(const WaveFunction& psi, const Potential& V, double duration,
                                   std::span<const double> dt_list, const UnitSystem& units,
                                   const std::optional<WaveFunction>& reference = std::nullopt);

}  // namespace qlinear::oracle
