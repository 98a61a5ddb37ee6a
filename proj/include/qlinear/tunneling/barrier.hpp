#pragma once

#include <optional>

#include "qlinear/core/potential.hpp"

namespace qlinear::tunneling {

/// Triangular barrier: flat (V = 0) left of `x_start`, a linear front rising
/// to `peak` at `x_peak`, then a linear descent back to zero over
/// `descent_width` (the mirror image of the front when unset).
struct BarrierSpec {
  double x_start = 0.0;
  double x_peak = 1.0;
  double peak = 1.0;
  std::optional<double> descent_width;

  void validate() const;
  bool operator==(const BarrierSpec&) const = default;

  double front_slope() const { return peak / (x_peak - x_start); }
  double descent() const { return descent_width.value_or(x_peak - x_start); }
  double x_end() const { return x_peak + descent(); }
  Potential potential() const;

  /// Distance from the top of the linear front to the first turning point a
  /// at energy E: x_peak - a. Derived, never set.
  double d_prime(double energy) const;
};

struct TurningPoints {
  double a = 0.0;  ///< -inf when the left side never drops below E
  double b = 0.0;  ///< +inf when the right side never drops below E
};

/// Classical turning points around the global maximum of V: V(a) = V(b) = E
/// with a <= x_peak <= b, found by bisection on each flank. Free and Linear
/// potentials are handled in closed form.
/// Throws PreconditionError when E exceeds the peak (no turning points) or
/// lies at or below the asymptotic base on both sides (degenerate).
TurningPoints turning_points(const Potential& V, double energy);

}  // namespace qlinear::tunneling
