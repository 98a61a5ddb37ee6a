#include "qlinear/analytic/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlinear/core/errors.hpp"
#include "qlinear/core/fft.hpp"
#include "qlinear/core/observables.hpp"
#include "qlinear/core/spectral.hpp"

namespace qlinear::analytic {
namespace {

// Mass allowed outside the support interval on each side, relative to the
// total.
constexpr double kSupportTail = 1e-14;

struct Interval {
  double lo;
  double hi;
};

// Smallest [lo, hi] over the ordered samples leaving at most kSupportTail of
// the weight on either side.
template <class Coord>
Interval support(const std::vector<double>& weight, Coord coord) {
  double total = 0.0;
  for (double w : weight) total += w;
  const double cut = kSupportTail * total;
  std::size_t lo = 0, hi = weight.size() - 1;
  for (double acc = 0.0; lo < weight.size(); ++lo) {
    acc += weight[lo];
    if (acc > cut) break;
  }
  for (double acc = 0.0; hi > 0; --hi) {
    acc += weight[hi];
    if (acc > cut) break;
  }
  return {coord(lo), coord(hi)};
}

Interval position_support(std::span<const Complex> amps, const SpatialGrid& g) {
  std::vector<double> w(amps.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::norm(amps[j]);
  return support(w, [&g](std::size_t j) { return g.x(j); });
}

// `spectrum` in wraparound order.
Interval momentum_support(std::span<const Complex> spectrum, const SpatialGrid& g, double hbar) {
  std::vector<double> w(spectrum.size());
  for (std::size_t m = 0; m < w.size(); ++m) w[m] = std::norm(spectrum[g.sorted_to_bin(m)]);
  return support(w, [&g, hbar](std::size_t m) { return hbar * g.sorted_wavenumber(m); });
}

void require_position_fit(Interval s, double shift, const SpatialGrid& g, const char* op) {
  const double lo = s.lo + shift, hi = s.hi + shift;
  const double last = g.x(g.size() - 1);
  const double deficit = std::max({0.0, g.x_min() - lo, hi - last});
  if (deficit > 0.0) {
    std::ostringstream msg;
    msg << op << ": evolved support [" << lo << ", " << hi << "] leaves the grid ["
        << g.x_min() << ", " << last << "]; required margin " << deficit;
    throw CoverageError(msg.str(), deficit);
  }
}

void require_momentum_fit(Interval s, double shift, const SpatialGrid& g, double hbar,
                          const char* op) {
  const double lo = s.lo + shift, hi = s.hi + shift;
  const double pmax = hbar * g.k_max();
  const double deficit = std::max({0.0, -pmax - lo, hi - (pmax - hbar * g.dk())});
  if (deficit > 0.0) {
    std::ostringstream msg;
    msg << op << ": evolved momentum support [" << lo << ", " << hi
        << "] exceeds the grid's Nyquist momentum " << pmax << "; required margin " << deficit;
    throw CoverageError(msg.str(), deficit);
  }
}

}  // namespace

const char* to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::left:
      return "left";
    case Ordering::right:
      return "right";
    case Ordering::momentum:
      return "momentum";
  }
  return "?";
}

PhaseLedger PhaseLedger::make(double V0, double dt, const UnitSystem& units, Ordering ordering) {
  const double m = units.mass(), hbar = units.hbar();
  const double dt2 = dt * dt, dt3 = dt2 * dt;
  PhaseLedger l;
  l.ordering = ordering;
  l.cubic_phase = ordering == Ordering::left ? -V0 * V0 * dt3 / (6.0 * m * hbar)
                                             : V0 * V0 * dt3 / (3.0 * m * hbar);
  l.potential_phase_coeff = -V0 * dt / hbar;
  l.momentum_shift_phase_coeff = (ordering == Ordering::right ? -1.0 : 1.0) * V0 * dt2 /
                                 (2.0 * m * hbar);
  l.argument_shift = V0 * dt2 / (2.0 * m);
  l.momentum_kick = V0 * dt;
  return l;
}

WaveFunction free_evolve(const WaveFunction& psi, double dt, const UnitSystem& units) {
  const double c = units.hbar() * dt / (2.0 * units.mass());
  auto out = spectral_multiply(psi.amplitudes(), psi.grid(),
                               [c](double k) { return std::polar(1.0, -c * k * k); });
  WaveFunction result(psi.grid(), std::move(out), psi.time() + dt);
  check_boundary_contamination(result, "free_evolve");
  return result;
}

EvolutionResult linear_evolve(const WaveFunction& psi, double V0, double dt,
                              const UnitSystem& units, Ordering ordering) {
  if (ordering == Ordering::momentum) {
    throw ValidationError("linear_evolve: use linear_evolve_momentum for the momentum form");
  }
  if (V0 == 0.0) {
    return {free_evolve(psi, dt, units), PhaseLedger::make(0.0, dt, units, ordering)};
  }
  const auto& g = psi.grid();
  const double hbar = units.hbar();
  const auto ledger = PhaseLedger::make(V0, dt, units, ordering);
  const double kinetic = hbar * dt / (2.0 * units.mass());
  const double shift = ledger.argument_shift;
  const double inv_n = 1.0 / static_cast<double>(g.size());

  // Free-evolved spectrum; both orderings share the coverage analysis.
  std::vector<Complex> spectrum(psi.amplitudes().begin(), psi.amplitudes().end());
  fft::forward(spectrum);
  require_momentum_fit(momentum_support(spectrum, g, hbar), -ledger.momentum_kick, g, hbar,
                       "linear_evolve");
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double kk = g.wavenumber(k);
    spectrum[k] *= std::polar(inv_n, -kinetic * kk * kk);
  }
  {
    std::vector<Complex> free_state = spectrum;
    fft::backward(free_state);
    require_position_fit(position_support(free_state, g), -shift, g, "linear_evolve");
  }

  std::vector<Complex> out;
  if (ordering == Ordering::left) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      spectrum[k] *= std::polar(1.0, g.wavenumber(k) * shift);
    }
    fft::backward(spectrum);
    out = std::move(spectrum);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] *= std::polar(1.0, ledger.potential_phase_coeff * g.x(j) + ledger.cubic_phase);
    }
  } else {
    out.assign(psi.amplitudes().begin(), psi.amplitudes().end());
    fft::forward(out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] *= std::polar(inv_n, -g.wavenumber(k) * shift);
    }
    fft::backward(out);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] *= std::polar(1.0, ledger.potential_phase_coeff * g.x(j) + ledger.cubic_phase);
    }
    fft::forward(out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double kk = g.wavenumber(k);
      out[k] *= std::polar(inv_n, -kinetic * kk * kk);
    }
    fft::backward(out);
  }
  return {WaveFunction(g, std::move(out), psi.time() + dt), ledger};
}

MomentumEvolutionResult linear_evolve_momentum(const MomentumWaveFunction& phi, double V0,
                                               double dt, const UnitSystem& units) {
  const auto& g = phi.grid();
  const double hbar = units.hbar();
  if (hbar != phi.hbar()) {
    throw ValidationError("linear_evolve_momentum: state and unit system disagree on hbar");
  }
  const auto ledger = PhaseLedger::make(V0, dt, units, Ordering::momentum);

  std::vector<double> weight(phi.size());
  for (std::size_t m = 0; m < weight.size(); ++m) weight[m] = std::norm(phi[m]);
  require_momentum_fit(support(weight, [&phi](std::size_t m) { return phi.momentum(m); }),
                       -ledger.momentum_kick, g, hbar, "linear_evolve_momentum");

  const double kinetic = dt / (2.0 * units.mass() * hbar);
  std::vector<Complex> free_amps(phi.size());
  for (std::size_t m = 0; m < phi.size(); ++m) {
    const double p = phi.momentum(m);
    free_amps[m] = phi[m] * std::polar(1.0, -kinetic * p * p);
  }
  // phi_free(p + V0 dt) <-> multiplication by e^{-i V0 dt x / hbar} in position space.
  auto pos = to_position_rep(MomentumWaveFunction(g, hbar, std::move(free_amps), phi.time()));
  require_position_fit(position_support(pos.amplitudes(), g), -ledger.argument_shift, g,
                       "linear_evolve_momentum");
  std::vector<Complex> kicked(pos.amplitudes().begin(), pos.amplitudes().end());
  for (std::size_t j = 0; j < kicked.size(); ++j) {
    kicked[j] *= std::polar(1.0, ledger.potential_phase_coeff * g.x(j));
  }
  const auto shifted = to_momentum_rep(WaveFunction(g, std::move(kicked), phi.time()), hbar);

  std::vector<Complex> out(shifted.amplitudes().begin(), shifted.amplitudes().end());
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] *= std::polar(1.0, ledger.cubic_phase +
                                  ledger.momentum_shift_phase_coeff * shifted.momentum(m));
  }
  return {MomentumWaveFunction(g, hbar, std::move(out), phi.time() + dt), ledger};
}

}  // namespace qlinear::analytic
