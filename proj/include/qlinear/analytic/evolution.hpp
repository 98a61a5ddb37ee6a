#pragma once

#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

// Closed-form evolution under H = p^2/2m + V0 x.
//
// The Zassenhaus expansion of exp(-i H dt / hbar) terminates after the
// third term, which gives two exact factorisations:
//
//   left:  U = e^{-i V0^2 dt^3 / (6 m hbar)} e^{-i V0 x dt / hbar} e^{+i V0 p dt^2 / (2 m hbar)} U0
//   right: U = U0 e^{+i V0^2 dt^3 / (3 m hbar)} e^{-i V0 x dt / hbar} e^{-i V0 p dt^2 / (2 m hbar)}
//
// with U0 = e^{-i p^2 dt / (2 m hbar)}. In position space the left form reads
//
//   psi(x, t) = e^{-i V0^2 dt^3/(6 m hbar)} e^{-i V0 x dt/hbar} psi_free(x + V0 dt^2/(2m), t).
//
// Argument shifts are applied as spectral translations, so results are exact
// to spectral precision for states that stay inside the grid. Negative dt is
// allowed and evolves backwards.
namespace qlinear::analytic {

enum class Ordering {
  left,      ///< free evolution first, then the x- and p-dependent phases
  right,     ///< p- and x-dependent phases first, free evolution last
  momentum,  ///< momentum-representation form, cubic phase +V0^2 dt^3/(3 m hbar)
};

const char* to_string(Ordering o) noexcept;

/// Every phase and shift one evolution step produced.
struct PhaseLedger {
  Ordering ordering = Ordering::left;
  /// Global phase, rad: -V0^2 dt^3/(6 m hbar) (left) or +V0^2 dt^3/(3 m hbar)
  /// (right, momentum).
  double cubic_phase = 0.0;
  /// Coefficient of x in the position-dependent phase, rad/length: -V0 dt / hbar.
  double potential_phase_coeff = 0.0;
  /// Coefficient of p in the momentum-dependent phase, rad/momentum:
  /// +V0 dt^2/(2 m hbar) for left and momentum, -V0 dt^2/(2 m hbar) for right.
  double momentum_shift_phase_coeff = 0.0;
  /// V0 dt^2 / (2m). The free-evolved wave-function is evaluated at
  /// x + argument_shift, which moves the density by -argument_shift.
  double argument_shift = 0.0;
  /// V0 dt. The free-evolved momentum amplitude is evaluated at
  /// p + momentum_kick, so the mean momentum changes by -momentum_kick.
  double momentum_kick = 0.0;

  static PhaseLedger make(double V0, double dt, const UnitSystem& units, Ordering ordering);
};

struct EvolutionResult {
  WaveFunction psi;
  PhaseLedger ledger;
};

struct MomentumEvolutionResult {
  MomentumWaveFunction phi;
  PhaseLedger ledger;
};

/// Multiplies the momentum amplitudes by exp(-i p^2 dt / (2 m hbar)). Warns
/// when the result has more than 1e-10 of its norm in the outer 5% of the
/// grid.
WaveFunction free_evolve(const WaveFunction& psi, double dt, const UnitSystem& units);

/// Throws CoverageError if the evolved state (position or momentum support)
/// would leave the grid.
EvolutionResult linear_evolve(const WaveFunction& psi, double V0, double dt,
                              const UnitSystem& units, Ordering ordering = Ordering::left);

/// phi(p, t) = e^{+i V0^2 dt^3/(3 m hbar)} e^{+i V0 p dt^2/(2 m hbar)} phi_free(p + V0 dt, t)
MomentumEvolutionResult linear_evolve_momentum(const MomentumWaveFunction& phi, double V0,
                                               double dt, const UnitSystem& units);

}  // namespace qlinear::analytic
