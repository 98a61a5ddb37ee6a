#include "qlinear/tunneling/barrier.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qlinear/core/errors.hpp"

namespace qlinear::tunneling {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect_root(const Potential& V, double energy, double lo, double hi) {
  const auto f = [&](double x) { return V(x) - energy; };
  if (f(lo) == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  const auto [left, right] =
      boost::math::tools::bisect(f, lo, hi, boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (left + right);
}

[[noreturn]] void no_turning_points(double energy, double peak) {
  std::ostringstream msg;
  msg << "turning_points: energy " << energy << " is above the barrier peak " << peak;
  throw PreconditionError(msg.str());
}

}  // namespace

void BarrierSpec::validate() const {
  if (!std::isfinite(x_start) || !std::isfinite(x_peak) || !std::isfinite(peak)) {
    throw ValidationError("barrier: parameters must be finite");
  }
  if (!(x_peak > x_start)) throw ValidationError("barrier: x_peak must lie right of x_start");
  if (!(peak > 0.0)) throw ValidationError("barrier: peak height must be positive");
  if (descent_width && !(*descent_width > 0.0)) {
    throw ValidationError("barrier: descent width must be positive");
  }
}

Potential BarrierSpec::potential() const {
  validate();
  return Potential::piecewise_linear({{x_start, 0.0}, {x_peak, peak}, {x_end(), 0.0}});
}

double BarrierSpec::d_prime(double energy) const {
  const auto tp = turning_points(potential(), energy);
  return x_peak - tp.a;
}

TurningPoints turning_points(const Potential& V, double energy) {
  switch (V.kind()) {
    case Potential::Kind::free:
      throw PreconditionError("turning_points: a free particle has no turning points");
    case Potential::Kind::linear: {
      const double slope = std::get<LinearPotential>(V.variant()).slope;
      if (slope == 0.0) throw PreconditionError("turning_points: flat potential");
      const double x = energy / slope;
      return slope > 0.0 ? TurningPoints{x, kInf} : TurningPoints{-kInf, x};
    }
    default:
      break;
  }

  const auto knots = V.knots();
  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = V(knots[i]);
  const auto top = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
  const double peak = values[top];
  if (energy > peak) no_turning_points(energy, peak);
  if (energy <= values.front() && energy <= values.back()) {
    std::ostringstream msg;
    msg << "turning_points: energy " << energy << " is at or below the barrier base";
    throw PreconditionError(msg.str());
  }

  TurningPoints tp{-kInf, kInf};
  for (std::size_t i = top; i-- > 0;) {
    if (values[i] <= energy) {
      tp.a = bisect_root(V, energy, knots[i], knots[i + 1]);
      break;
    }
  }
  for (std::size_t i = top + 1; i < knots.size(); ++i) {
    if (values[i] <= energy) {
      tp.b = bisect_root(V, energy, knots[i - 1], knots[i]);
      break;
    }
  }
  if (energy == peak) tp.a = tp.b = knots[top];
  return tp;
}

}  // namespace qlinear::tunneling
