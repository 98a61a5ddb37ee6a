#include "qlinear/core/units.hpp"

#include <cmath>

#include "qlinear/core/errors.hpp"

namespace qlinear {

UnitSystem::UnitSystem(double hbar, double mass, std::string label)
    : hbar_(hbar), mass_(mass), label_(std::move(label)) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("unit system: hbar must be positive and finite");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("unit system: mass must be positive and finite");
  }
}

UnitSystem UnitSystem::si(double mass_kg) { return UnitSystem(kHbarSI, mass_kg, "si"); }

UnitSystem UnitSystem::with_mass(double mass) const { return UnitSystem(hbar_, mass, label_); }

}  // namespace qlinear
