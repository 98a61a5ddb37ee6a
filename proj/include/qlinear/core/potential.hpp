#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "qlinear/core/grid.hpp"

namespace qlinear {

struct FreePotential {};

/// V(x) = slope * x.
struct LinearPotential {
  double slope = 0.0;
};

/// Continuous piecewise-linear profile through (x, V) breakpoints with
/// strictly increasing x. Constant beyond the first and last breakpoints.
struct PiecewiseLinearPotential {
  std::vector<std::pair<double, double>> breakpoints;
};

/// Values at the points of a grid, linearly interpolated in between and held
/// constant beyond the end points.
struct SampledPotential {
  SpatialGrid grid;
  std::vector<double> values;
};

class Potential {
 public:
  enum class Kind { free, linear, piecewise_linear, sampled };
  using Variant =
      std::variant<FreePotential, LinearPotential, PiecewiseLinearPotential, SampledPotential>;

  static Potential free() { return Potential(FreePotential{}); }
  static Potential linear(double slope);
  /// Throws ValidationError unless there are at least two breakpoints with
  /// strictly increasing, finite x.
  static Potential piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
  static Potential sampled(SpatialGrid grid, std::vector<double> values);

  Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }
  const Variant& variant() const noexcept { return v_; }

  double operator()(double x) const;
  std::vector<double> sample(const SpatialGrid& grid) const;

  /// Points where the profile may have a kink, ascending. Empty for Free and
  /// Linear.
  std::vector<double> knots() const;

 private:
  explicit Potential(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace qlinear
