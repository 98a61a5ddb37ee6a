#include "qlinear/oracle/split_step.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qlinear/core/diagnostics.hpp"
#include "qlinear/core/errors.hpp"
#include "qlinear/core/fft.hpp"
#include "qlinear/core/observables.hpp"

namespace qlinear::oracle {
namespace {

constexpr double kInstabilityTolerance = 1e-6;

std::size_t steps_for(double duration, double dt) {
  const double ratio = duration / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "step " << dt << " does not divide the duration " << duration;
    throw ValidationError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

void Absorber::validate() const {
  if (!(width_fraction > 0.0) || width_fraction > 0.25) {
    throw ValidationError("absorber: width_fraction must lie in (0, 0.25]");
  }
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw ValidationError("absorber: strength must be non-negative");
  }
}

Absorber Absorber::for_momentum(double p_max, double width_fraction, double span,
                                const UnitSystem& units) {
  // One pass through the layer attenuates the probability by
  // exp(-strength * w / (hbar v)); in and back out doubles the exponent.
  const double v = std::abs(p_max) / units.mass();
  const double w = width_fraction * span;
  Absorber a{width_fraction, 15.0 * units.hbar() * v / w};
  a.validate();
  return a;
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("solver: dt must be positive");
  if (record_every == 0) throw ValidationError("solver: record_every must be at least 1");
  if (absorber) absorber->validate();
}

SplitStepPropagator::SplitStepPropagator(const WaveFunction& psi, const Potential& V, double dt,
                                         std::optional<Absorber> absorber,
                                         const UnitSystem& units)
    : grid_(psi.grid()),
      units_(units),
      dt_(dt),
      time_(psi.time()),
      absorbing_(absorber.has_value()),
      psi_(psi.amplitudes().begin(), psi.amplitudes().end()) {
  if (!std::isfinite(dt) || dt == 0.0) throw ValidationError("split-step: dt must be non-zero");
  if (absorber) absorber->validate();
  const std::size_t n = grid_.size();
  const auto v = V.sample(grid_);
  const double hbar = units.hbar();

  std::vector<double> w(n, 0.0);
  if (absorber) {
    const double layer = absorber->width_fraction * grid_.span();
    const double last = grid_.x(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::min(grid_.x(j) - grid_.x_min(), last - grid_.x(j));
      if (d < layer) {
        const double c = std::cos(0.5 * std::numbers::pi * d / layer);
        w[j] = absorber->strength * c * c;
      }
    }
  }
  half_factor_.resize(n);
  half_loss_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double damping = std::exp(-w[j] * dt / (2.0 * hbar));
    half_factor_[j] = std::polar(damping, -v[j] * dt / (2.0 * hbar));
    half_loss_[j] = 1.0 - damping * damping;
  }
  kinetic_.resize(n);
  const double c = hbar * dt / (2.0 * units.mass());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = grid_.wavenumber(k);
    kinetic_[k] = std::polar(inv_n, -c * kk * kk);
  }
}

void SplitStepPropagator::half_potential() {
  const std::size_t n = psi_.size();
  if (absorbing_) {
    double left = 0.0, right = 0.0;
    for (std::size_t j = 0; j < n / 2; ++j) left += std::norm(psi_[j]) * half_loss_[j];
    for (std::size_t j = n / 2; j < n; ++j) right += std::norm(psi_[j]) * half_loss_[j];
    absorbed_left_ += left * grid_.dx();
    absorbed_right_ += right * grid_.dx();
  }
  for (std::size_t j = 0; j < n; ++j) psi_[j] *= half_factor_[j];
}

void SplitStepPropagator::step(std::size_t count) {
  for (std::size_t s = 0; s < count; ++s) {
    half_potential();
    fft::forward(psi_);
    for (std::size_t k = 0; k < psi_.size(); ++k) psi_[k] *= kinetic_[k];
    fft::backward(psi_);
    half_potential();
    time_ += dt_;
  }
}

WaveFunction SplitStepPropagator::state() const { return WaveFunction(grid_, psi_, time_); }

double SplitStepPropagator::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& z : psi_) s += std::norm(z);
  return s * grid_.dx();
}

Observables observe(const WaveFunction& psi, const UnitSystem& units) {
  const auto m = moments(psi, units);
  return {psi.time(), m.mean_x, m.mean_p, m.width(), m.norm_squared};
}

Trajectory split_step_evolve(const WaveFunction& psi, const Potential& V,
                             const SolverConfig& cfg, const UnitSystem& units) {
  cfg.validate();
  SplitStepPropagator prop(psi, V, cfg.dt, cfg.absorber, units);
  const double initial_norm = psi.norm_squared();
  Trajectory traj{{}, {}, psi, 0.0, 0.0};
  bool warned = false;

  const auto record = [&](const WaveFunction& state) {
    Snapshot snap{observe(state, units), prop.absorbed_left(), prop.absorbed_right(), {}};
    if (cfg.store_states) snap.psi = state;
    traj.norm_history.push_back(snap.obs.norm_squared);
    traj.snapshots.push_back(std::move(snap));
    if (!prop.absorbing()) {
      if (std::abs(state.norm_squared() - initial_norm) > kInstabilityTolerance * initial_norm) {
        std::ostringstream msg;
        msg << "split-step: norm drifted from " << initial_norm << " to " << state.norm_squared()
            << " at t = " << state.time() << " without an absorber";
        throw NumericalError(msg.str());
      }
      if (!warned) warned = check_boundary_contamination(state, "split_step_evolve");
    }
  };

  record(psi);
  std::size_t done = 0;
  while (done < cfg.n_steps) {
    const std::size_t chunk = std::min(cfg.record_every, cfg.n_steps - done);
    prop.step(chunk);
    done += chunk;
    record(prop.state());
  }
  traj.final_state = prop.state();
  traj.absorbed_left = prop.absorbed_left();
  traj.absorbed_right = prop.absorbed_right();
  return traj;
}

WaveFunction evolve_to(const WaveFunction& psi, const Potential& V, double duration, double dt,
                       const UnitSystem& units) {
  const std::size_t steps = steps_for(duration, dt);
  SplitStepPropagator prop(psi, V, dt, std::nullopt, units);
  prop.step(steps);
  return prop.state();
}

WaveFunction evolve_backward(const WaveFunction& psi, const Potential& V, double duration,
                             double dt, const UnitSystem& units) {
  std::vector<Complex> conj(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& z : conj) z = std::conj(z);
  const auto fwd = evolve_to(WaveFunction(psi.grid(), std::move(conj), 0.0), V, duration, dt, units);
  std::vector<Complex> out(fwd.amplitudes().begin(), fwd.amplitudes().end());
  for (auto& z : out) z = std::conj(z);
  return WaveFunction(psi.grid(), std::move(out), psi.time() - duration);
}

}  // namespace qlinear::oracle
