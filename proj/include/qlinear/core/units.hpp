#pragma once

#include <string>

namespace qlinear {

/// Reduced Planck constant, J s (CODATA 2018, exact).
inline constexpr double kHbarSI = 1.054571817e-34;

/// Carries hbar and the particle mass. Every length/time/momentum quantity in
/// the library is expressed in the units these two constants imply.
class UnitSystem {
 public:
  /// hbar = m = 1.
  UnitSystem() = default;
  UnitSystem(double hbar, double mass, std::string label);

  static UnitSystem natural() { return UnitSystem{}; }
  /// SI units with the CODATA hbar and the given particle mass in kg.
  static UnitSystem si(double mass_kg);

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  const std::string& label() const noexcept { return label_; }

  UnitSystem with_mass(double mass) const;

  bool operator==(const UnitSystem&) const = default;

 private:
  double hbar_ = 1.0;
  double mass_ = 1.0;
  std::string label_ = "natural";
};

}  // namespace qlinear
