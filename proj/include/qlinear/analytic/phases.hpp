#pragma once

#include <array>

#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

namespace qlinear::analytic {

/// Linear combination c0 1 + c1 x + c2 p + c3 p^2 of position/momentum
/// operators. The span is closed under commutators, which is all the
/// Zassenhaus terms of the linear-potential Hamiltonian need.
struct OperatorPoly {
  std::array<Complex, 4> c{};  // coefficients of 1, x, p, p^2

  OperatorPoly operator+(const OperatorPoly& o) const;
  OperatorPoly operator*(Complex s) const;
  bool is_zero(double tol = 0.0) const;
};

/// [a, b] with [x, p] = i hbar.
OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b, double hbar);

struct ZassenhausTerms {
  /// C2 = i * c2_coeff * p, c2_coeff = V0 dt^2 / (2 m hbar).
  double c2_coeff = 0.0;
  /// C3 = i * c3_coeff, c3_coeff = -V0^2 dt^3 / (6 m hbar).
  double c3_coeff = 0.0;
  /// C4 and every higher term vanish.
  bool c4_is_zero = false;
};

/// Evaluates C2, C3 and C4 for A = -i V0 x dt / hbar, B = -i p^2 dt / (2 m hbar)
/// with the commutator algebra above. Throws NumericalError if C2 is not
/// proportional to p or C3 not proportional to the identity.
ZassenhausTerms zassenhaus_terms(double V0, double dt, const UnitSystem& units);

/// Exact phase picked up by the momentum eigenstate |p_in> under the right
/// ordering U0 e^{+i V0^2 dt^3/(3 m hbar)} e^{-i V0 x dt/hbar} e^{-i V0 p dt^2/(2 m hbar)}.
/// The state comes out as exp(i total()) |p_out>, p_out = p_in - V0 dt.
struct PlaneWavePhase {
  double p_in = 0.0;
  double p_out = 0.0;
  /// +V0^2 dt^3 / (3 m hbar)
  double cubic = 0.0;
  /// -V0 p_in dt^2 / (2 m hbar)
  double momentum_linear = 0.0;
  /// -p_out^2 dt / (2 m hbar), free phase at the kicked momentum
  double free = 0.0;

  double total() const noexcept { return cubic + momentum_linear + free; }
  Complex factor() const { return std::polar(1.0, total()); }
};

PlaneWavePhase plane_wave_phase(double p_in, double V0, double dt, const UnitSystem& units);

}  // namespace qlinear::analytic
