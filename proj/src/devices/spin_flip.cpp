#include "qlinear/devices/spin_flip.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlinear/analytic/evolution.hpp"
#include "qlinear/analytic/phases.hpp"
#include "qlinear/core/errors.hpp"

namespace qlinear::devices {
namespace {

constexpr double kMatchTolerance = 1e-12;

bool close(double a, double b) {
  return std::abs(a - b) <= kMatchTolerance * std::max(std::abs(a), std::abs(b));
}

void check_units(const std::optional<PsgGeometry>& psg, const UnitSystem& units) {
  if (psg && !(psg->units == units)) {
    throw ValidationError("spin_flip: PSG and SG stages use different unit systems");
  }
}

double free_phase(double p, double duration, const UnitSystem& units) {
  return -p * p * duration / (2.0 * units.mass() * units.hbar());
}

}  // namespace

void check_recombination(const SgSpec& up, const SgSpec& down) {
  up.validate();
  down.validate();
  std::ostringstream msg;
  if (down.axis != -up.axis) {
    msg << "spin_flip: recombining stage must have the opposite axis (got " << up.axis << " and "
        << down.axis << ")";
  } else if (!close(up.delta_p(), down.delta_p())) {
    msg << "spin_flip: branch kicks differ (" << up.delta_p() << " vs " << down.delta_p() << ")";
  } else if (!close(up.duration, down.duration)) {
    msg << "spin_flip: stage durations differ (" << up.duration << " vs " << down.duration
        << ")";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

GateReport spin_flip_circuit(const SpinState& input, const SgSpec& up,
                             const std::optional<PsgGeometry>& psg, const SgSpec& down,
                             const UnitSystem& units, double p_in) {
  check_recombination(up, down);
  check_units(psg, units);
  const SpinState x = input.in_basis(Axis::x);

  // Stage 1.
  const auto a1 = analytic::plane_wave_phase(p_in, up.branch_slope(+1), up.duration, units);
  const auto b1 = analytic::plane_wave_phase(p_in, up.branch_slope(-1), up.duration, units);
  double phase_plus = a1.total();
  double phase_minus = b1.total();
  const double p_plus = a1.p_out, p_minus = b1.p_out;

  // Stage 2: PSG on the minus branch, free flight for both otherwise.
  const double flight = psg ? 4.0 * psg->dt() : 0.0;
  phase_plus += free_phase(p_plus, flight, units);
  if (psg) {
    const auto pw = psg_compose(*psg, p_minus);
    phase_minus += pw.composed_phase;
  }

  // Stage 3.
  const auto a3 = analytic::plane_wave_phase(p_plus, down.branch_slope(+1), down.duration, units);
  const auto b3 = analytic::plane_wave_phase(p_minus, down.branch_slope(-1), down.duration, units);
  phase_plus += a3.total();
  phase_minus += b3.total();
  const double p_scale = std::max({std::abs(p_in), std::abs(up.delta_p()), 1e-300});
  if (std::abs(a3.p_out - b3.p_out) > kMatchTolerance * p_scale) {
    throw ValidationError("spin_flip: branches leave the circuit with different momenta");
  }

  GateReport r;
  r.input = input;
  r.output = SpinState{x.plus * std::polar(1.0, phase_plus),
                       x.minus * std::polar(1.0, phase_minus), Axis::x}
                 .in_basis(Axis::z);
  r.phase = phase_minus - phase_plus;
  r.flip_fidelity = fidelity(orthogonal(input), r.output);
  r.output_norm = r.output.norm_squared();
  r.split_momenta = {p_plus, p_minus};
  return r;
}

PacketGateReport spin_flip_circuit(const WaveFunction& psi, const SpinState& input,
                                   const SgSpec& up, const std::optional<PsgGeometry>& psg,
                                   const SgSpec& down, const UnitSystem& units,
                                   bool override_preconditions) {
  check_recombination(up, down);
  check_units(psg, units);

  const SpinorPacket split = sg_apply(SpinorPacket::product(psi, input), up, units);
  WaveFunction plus = split.plus();
  WaveFunction minus = split.minus();
  if (psg) {
    plus = analytic::free_evolve(plus, 4.0 * psg->dt(), units);
    minus = psg_compose(*psg, minus, override_preconditions).result.psi;
  }
  const SpinorPacket joined = sg_apply(SpinorPacket(plus, minus, Axis::x), down, units);

  PacketGateReport r{joined.in_basis(Axis::z), 0.0, 0.0, 0.0};
  const auto rho = r.output.reduced_density();
  const SpinState perp = orthogonal(input).in_basis(Axis::z);
  const Complex value = std::conj(perp.plus) * (rho[0] * perp.plus + rho[1] * perp.minus) +
                        std::conj(perp.minus) * (rho[2] * perp.plus + rho[3] * perp.minus);
  r.output_norm = r.output.norm_squared();
  r.flip_fidelity = value.real() / r.output_norm;
  const double np = joined.plus().norm_squared(), nm = joined.minus().norm_squared();
  r.branch_overlap = np > 0.0 && nm > 0.0
                         ? std::abs(inner_product(joined.plus(), joined.minus())) /
                               std::sqrt(np * nm)
                         : 0.0;
  return r;
}

}  // namespace qlinear::devices
