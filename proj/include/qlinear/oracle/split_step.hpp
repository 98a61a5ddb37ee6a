#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qlinear/core/potential.hpp"
#include "qlinear/core/units.hpp"
#include "qlinear/core/wavefunction.hpp"

// Second-order Strang splitting for i hbar d_t psi = (p^2/2m + V(x)) psi:
//   psi <- e^{-i V dt/2hbar} F^-1 e^{-i p^2 dt/2m hbar} F e^{-i V dt/2hbar} psi
// on a periodic grid. Independent of the closed-form engine; it only needs
// V sampled on the grid.
namespace qlinear::oracle {

/// Smooth absorbing layer at both grid edges: an imaginary potential
/// -i W(x), W = strength * cos^2(pi d / 2w) with d the distance from the
/// edge and w = width_fraction * span. Zero with zero slope at the inner
/// edge of the layer.
struct Absorber {
  double width_fraction = 0.1;
  double strength = 1.0;  ///< energy units

  void validate() const;

  /// Strength for which a wave moving at momentum `p_max` keeps at most
  /// exp(-30) of its probability after crossing the layer and coming back.
  /// Slower components are absorbed faster; reflection off the ramp grows
  /// as they slow down, so `p_max` should not exceed what the run needs.
  static Absorber for_momentum(double p_max, double width_fraction, double span,
                               const UnitSystem& units);
};

struct SolverConfig {
  double dt = 1e-3;
  std::size_t n_steps = 0;
  std::optional<Absorber> absorber;
  /// Snapshot stride in steps; the initial and final states are always recorded.
  std::size_t record_every = 1;
  /// Keep full wave-functions in snapshots, not only observables.
  bool store_states = false;

  void validate() const;
};

struct Observables {
  double time = 0.0;
  double mean_x = 0.0;
  double mean_p = 0.0;
  double width = 0.0;  ///< width parameter, sqrt(2) * rms
  double norm_squared = 0.0;
};

struct Snapshot {
  Observables obs;
  double absorbed_left = 0.0;
  double absorbed_right = 0.0;
  std::optional<WaveFunction> psi;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<double> norm_history;
  WaveFunction final_state;
  double absorbed_left = 0.0;
  double absorbed_right = 0.0;
};

/// Step-by-step propagator; `split_step_evolve` drives one of these.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const WaveFunction& psi, const Potential& V, double dt,
                      std::optional<Absorber> absorber, const UnitSystem& units);

  void step(std::size_t count = 1);

  WaveFunction state() const;
  double time() const noexcept { return time_; }
  double dt() const noexcept { return dt_; }
  double norm_squared() const noexcept;
  double absorbed_left() const noexcept { return absorbed_left_; }
  double absorbed_right() const noexcept { return absorbed_right_; }
  bool absorbing() const noexcept { return absorbing_; }
  const UnitSystem& units() const noexcept { return units_; }
  const SpatialGrid& grid() const noexcept { return grid_; }

 private:
  void half_potential();

  SpatialGrid grid_;
  UnitSystem units_;
  double dt_;
  double time_;
  bool absorbing_;
  std::vector<Complex> psi_;
  std::vector<Complex> half_factor_;  // e^{(-i V - W) dt / 2 hbar}
  std::vector<double> half_loss_;     // 1 - |half_factor|^2
  std::vector<Complex> kinetic_;      // e^{-i hbar k^2 dt / 2m} / n
  double absorbed_left_ = 0.0;
  double absorbed_right_ = 0.0;
};

Observables observe(const WaveFunction& psi, const UnitSystem& units);

/// Throws NumericalError if, without an absorber, the norm drifts by more
/// than 1e-6; warns when an absorber-free run reaches the grid edge.
Trajectory split_step_evolve(const WaveFunction& psi, const Potential& V,
                             const SolverConfig& cfg, const UnitSystem& units);

/// Time reversal for a real potential: conj(evolve(conj(psi), +duration)).
WaveFunction evolve_backward(const WaveFunction& psi, const Potential& V, double duration,
                             double dt, const UnitSystem& units);

/// Final state of an absorber-free run of `duration` with step dt (which
/// must divide duration).
WaveFunction evolve_to(const WaveFunction& psi, const Potential& V, double duration, double dt,
                       const UnitSystem& units);

}  // namespace qlinear::oracle
