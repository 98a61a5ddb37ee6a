#pragma once

#include "qlinear/core/potential.hpp"
#include "qlinear/core/units.hpp"

namespace qlinear::tunneling {

/// sigma_R = \int_a^b sqrt(2 m (V(x) - E)) / hbar dx between the classical
/// turning points.
///
/// The interval is split at the potential's knots and each piece is
/// integrated with tanh-sinh quadrature, whose double-exponential node
/// clustering absorbs the sqrt(x - a) behaviour at the turning points
/// without a change of variables. Throws NumericalError when the estimated
/// relative error exceeds 1e-10, and PreconditionError when a turning point
/// is missing.
double wkb_sigma_R(const Potential& V, double energy, const UnitSystem& units);

/// T = e^{-2 sigma_R} / (1 + e^{-2 sigma_R} / 4)^2
double wkb_transmission_from_action(double sigma_R);

double wkb_transmission(const Potential& V, double energy, const UnitSystem& units);

}  // namespace qlinear::tunneling
