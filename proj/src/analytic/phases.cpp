#include "qlinear/analytic/phases.hpp"

#include <cmath>

#include "qlinear/core/errors.hpp"

namespace qlinear::analytic {
namespace {

enum Basis { kOne = 0, kX = 1, kP = 2, kP2 = 3 };

// [e_i, e_j] for basis monomials, as an OperatorPoly.
OperatorPoly basis_commutator(int i, int j, double hbar) {
  const Complex ih{0.0, hbar};
  OperatorPoly r;
  if (i == kX && j == kP) r.c[kOne] = ih;
  if (i == kP && j == kX) r.c[kOne] = -ih;
  if (i == kX && j == kP2) r.c[kP] = 2.0 * ih;
  if (i == kP2 && j == kX) r.c[kP] = -2.0 * ih;
  return r;
}

}  // namespace

OperatorPoly OperatorPoly::operator+(const OperatorPoly& o) const {
  OperatorPoly r;
  for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

OperatorPoly OperatorPoly::operator*(Complex s) const {
  OperatorPoly r;
  for (int i = 0; i < 4; ++i) r.c[i] = c[i] * s;
  return r;
}

bool OperatorPoly::is_zero(double tol) const {
  for (const auto& z : c) {
    if (std::abs(z) > tol) return false;
  }
  return true;
}

OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b, double hbar) {
  OperatorPoly r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (a.c[i] == 0.0 || b.c[j] == 0.0) continue;
      r = r + basis_commutator(i, j, hbar) * (a.c[i] * b.c[j]);
    }
  }
  return r;
}

ZassenhausTerms zassenhaus_terms(double V0, double dt, const UnitSystem& units) {
  const double hbar = units.hbar(), m = units.mass();
  const Complex minus_i{0.0, -1.0};
  OperatorPoly A, B;
  A.c[kX] = minus_i * V0 * dt / hbar;
  B.c[kP2] = minus_i * dt / (2.0 * m * hbar);

  const auto comm = [hbar](const OperatorPoly& a, const OperatorPoly& b) {
    return commutator(a, b, hbar);
  };
  const auto BA = comm(B, A);
  const auto BA_A = comm(BA, A);
  const auto BA_B = comm(BA, B);
  const auto C2 = BA * 0.5;
  const auto C3 = BA_B * (1.0 / 3.0) + BA_A * (1.0 / 6.0);
  const auto C4 = (comm(BA_B, B) + comm(BA_A, B)) * 0.125 + comm(BA_A, A) * (1.0 / 24.0);

  if (C2.c[kOne] != 0.0 || C2.c[kX] != 0.0 || C2.c[kP2] != 0.0 || C2.c[kP].real() != 0.0) {
    throw NumericalError("zassenhaus: C2 is not an imaginary multiple of p");
  }
  if (C3.c[kX] != 0.0 || C3.c[kP] != 0.0 || C3.c[kP2] != 0.0 || C3.c[kOne].real() != 0.0) {
    throw NumericalError("zassenhaus: C3 is not an imaginary multiple of the identity");
  }
  return {C2.c[kP].imag(), C3.c[kOne].imag(), C4.is_zero()};
}

PlaneWavePhase plane_wave_phase(double p_in, double V0, double dt, const UnitSystem& units) {
  const double mh = units.mass() * units.hbar();
  PlaneWavePhase r;
  r.p_in = p_in;
  r.p_out = p_in - V0 * dt;
  r.cubic = V0 * V0 * dt * dt * dt / (3.0 * mh);
  r.momentum_linear = -V0 * p_in * dt * dt / (2.0 * mh);
  r.free = -r.p_out * r.p_out * dt / (2.0 * mh);
  return r;
}

}  // namespace qlinear::analytic
