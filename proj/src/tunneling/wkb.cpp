#include "qlinear/tunneling/wkb.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlinear/core/errors.hpp"
#include "qlinear/tunneling/barrier.hpp"

namespace qlinear::tunneling {
namespace {

constexpr double kQuadratureTolerance = 1e-10;

}  // namespace

double wkb_sigma_R(const Potential& V, double energy, const UnitSystem& units) {
  const auto tp = turning_points(V, energy);
  if (!std::isfinite(tp.a) || !std::isfinite(tp.b)) {
    throw PreconditionError("wkb: the classically forbidden region is unbounded");
  }
  if (tp.a == tp.b) return 0.0;

  std::vector<double> cuts{tp.a};
  for (double k : V.knots()) {
    if (k > tp.a && k < tp.b) cuts.push_back(k);
  }
  cuts.push_back(tp.b);

  const double scale = std::sqrt(2.0 * units.mass()) / units.hbar();
  const auto integrand = [&](double x) { return std::sqrt(std::max(0.0, V(x) - energy)); };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double error = 0.0, l1 = 0.0;
    const double piece =
        integrator.integrate(integrand, cuts[i], cuts[i + 1], 1e-14, &error, &l1);
    if (!(error <= kQuadratureTolerance * std::max(l1, 1e-300))) {
      std::ostringstream msg;
      msg << "wkb: quadrature on [" << cuts[i] << ", " << cuts[i + 1]
          << "] reached only relative error " << error / l1;
      throw NumericalError(msg.str());
    }
    total += piece;
  }
  return scale * total;
}

double wkb_transmission_from_action(double sigma_R) {
  const double e = std::exp(-2.0 * sigma_R);
  const double d = 1.0 + 0.25 * e;
  return e / (d * d);
}

double wkb_transmission(const Potential& V, double energy, const UnitSystem& units) {
  return wkb_transmission_from_action(wkb_sigma_R(V, energy, units));
}

}  // namespace qlinear::tunneling
