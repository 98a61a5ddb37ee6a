#include "qlinear/devices/psg.hpp"

#include <cmath>
#include <sstream>

#include "qlinear/core/errors.hpp"
#include "qlinear/core/observables.hpp"

namespace qlinear::devices {
namespace {

constexpr double kCancellationTolerance = 1e-12;

struct Net {
  double kick = 0.0;
  double displacement = 0.0;
};

// Momentum change and density displacement accumulated over the segments.
Net accumulate(const std::array<PsgSegment, 3>& segs, double mass) {
  Net n;
  for (const auto& s : segs) {
    n.displacement += n.kick * s.duration / mass - s.V0 * s.duration * s.duration / (2.0 * mass);
    n.kick -= s.V0 * s.duration;
  }
  return n;
}

void check_cancellation(const PsgGeometry& g, const Net& n) {
  const double kick_scale = std::abs(g.V0) * g.dt();
  const double disp_scale = kick_scale * g.dt() / g.units.mass();
  if (std::abs(n.kick) > kCancellationTolerance * kick_scale ||
      std::abs(n.displacement) > kCancellationTolerance * disp_scale) {
    std::ostringstream msg;
    msg << "psg: segments do not cancel (net kick " << n.kick << ", net displacement "
        << n.displacement << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

void PsgGeometry::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw ValidationError("psg: L must be positive");
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("psg: v must be positive");
  if (!std::isfinite(V0)) throw ValidationError("psg: V0 must be finite");
}

std::array<PsgSegment, 3> psg_segments(const PsgGeometry& g) {
  g.validate();
  const double dt = g.dt();
  return {PsgSegment{g.V0, dt}, PsgSegment{-g.V0, 2.0 * dt}, PsgSegment{g.V0, dt}};
}

double psg_phase(const PsgGeometry& g) {
  g.validate();
  return -2.0 * g.V0 * g.V0 * g.L * g.L * g.L /
         (3.0 * g.units.hbar() * g.units.mass() * g.v * g.v * g.v);
}

PsgPlaneWaveResult psg_compose(const PsgGeometry& g, double p_in) {
  const auto segs = psg_segments(g);
  PsgPlaneWaveResult r;
  r.p_in = p_in;
  double p = p_in;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    r.segments[i] = analytic::plane_wave_phase(p, segs[i].V0, segs[i].duration, g.units);
    r.composed_phase += r.segments[i].total();
    p = r.segments[i].p_out;
  }
  r.p_out = p;
  const double total_time = 4.0 * g.dt();
  r.free_phase = -p_in * p_in * total_time / (2.0 * g.units.mass() * g.units.hbar());
  r.relative_phase = r.composed_phase - r.free_phase;
  const Net n = accumulate(segs, g.units.mass());
  r.net_kick = n.kick;
  r.net_displacement = n.displacement;
  check_cancellation(g, n);
  return r;
}

PsgPacketResult psg_compose(const PsgGeometry& g, const WaveFunction& psi,
                            bool override_preconditions) {
  const auto segs = psg_segments(g);
  const double width = moments(psi, g.units).width();
  if (!override_preconditions && g.L < kMinLengthToWidth * width) {
    std::ostringstream msg;
    msg << "psg: capacitor length " << g.L << " is less than " << kMinLengthToWidth
        << " packet widths (" << width << ")";
    throw PreconditionError(msg.str());
  }

  const Net n = accumulate(segs, g.units.mass());
  check_cancellation(g, n);

  WaveFunction state = psi;
  std::array<analytic::PhaseLedger, 3> ledgers{};
  analytic::PhaseLedger total;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto step = analytic::linear_evolve(state, segs[i].V0, segs[i].duration, g.units);
    ledgers[i] = step.ledger;
    total.potential_phase_coeff += step.ledger.potential_phase_coeff;
    total.momentum_shift_phase_coeff += step.ledger.momentum_shift_phase_coeff;
    state = std::move(step.psi);
  }
  WaveFunction reference = analytic::free_evolve(psi, 4.0 * g.dt(), g.units);

  PsgPacketResult r{{state, total}, ledgers, reference, 0.0, 0.0};
  r.relative_phase = std::arg(inner_product(reference, state));
  double dev = 0.0;
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double d = std::abs(state[j]) - std::abs(reference[j]);
    dev += d * d;
  }
  r.modulus_deviation = std::sqrt(dev * psi.grid().dx());
  r.result.ledger.cubic_phase = r.relative_phase;
  r.result.ledger.momentum_kick = -n.kick;
  r.result.ledger.argument_shift = -n.displacement;
  return r;
}

PsgGeometry solve_psg_for_phase(double target, const PsgUnknowns& fixed) {
  const int missing = !fixed.L + !fixed.V0 + !fixed.v;
  if (missing != 1) {
    throw ValidationError("solve_psg_for_phase: exactly one of L, V0, v must be left free");
  }
  if (!std::isfinite(target) || target < 0.0) {
    std::ostringstream msg;
    msg << "solve_psg_for_phase: no positive solution for target " << target
        << " (the phase magnitude must be non-negative)";
    throw PreconditionError(msg.str());
  }
  const double hm = fixed.units.hbar() * fixed.units.mass();
  PsgGeometry g;
  g.units = fixed.units;
  if (!fixed.V0) {
    g.L = *fixed.L;
    g.v = *fixed.v;
    g.validate();
    g.V0 = std::sqrt(1.5 * hm * g.v * g.v * g.v * target / (g.L * g.L * g.L));
  } else if (!fixed.L) {
    g.V0 = *fixed.V0;
    g.v = *fixed.v;
    if (target == 0.0 || g.V0 == 0.0) {
      throw PreconditionError("solve_psg_for_phase: no positive L reaches this target");
    }
    g.L = std::cbrt(1.5 * hm * g.v * g.v * g.v * target / (g.V0 * g.V0));
  } else {
    g.V0 = *fixed.V0;
    g.L = *fixed.L;
    if (target == 0.0 || g.V0 == 0.0) {
      throw PreconditionError("solve_psg_for_phase: no positive v reaches this target");
    }
    g.v = std::cbrt(2.0 * g.V0 * g.V0 * g.L * g.L * g.L / (3.0 * hm * target));
  }
  g.validate();
  return g;
}

}  // namespace qlinear::devices
