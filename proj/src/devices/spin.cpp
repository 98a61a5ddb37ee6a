#include "qlinear/devices/spin.hpp"

#include <algorithm>
#include <cmath>

#include "qlinear/core/errors.hpp"

namespace qlinear::devices {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<Complex> combine(const WaveFunction& a, const WaveFunction& b, double sign) {
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = (a[j] + sign * b[j]) * kInvSqrt2;
  return out;
}

}  // namespace

const char* to_string(Axis a) noexcept { return a == Axis::x ? "x" : "z"; }

SpinState SpinState::z(int sign) {
  return sign >= 0 ? SpinState{1.0, 0.0, Axis::z} : SpinState{0.0, 1.0, Axis::z};
}

SpinState SpinState::x(int sign) {
  return sign >= 0 ? SpinState{1.0, 0.0, Axis::x} : SpinState{0.0, 1.0, Axis::x};
}

SpinState SpinState::in_basis(Axis target) const {
  if (target == basis) return *this;
  return {(plus + minus) * kInvSqrt2, (plus - minus) * kInvSqrt2, target};
}

Complex overlap(const SpinState& a, const SpinState& b) {
  const SpinState bb = b.in_basis(a.basis);
  return std::conj(a.plus) * bb.plus + std::conj(a.minus) * bb.minus;
}

double fidelity(const SpinState& a, const SpinState& b) { return std::norm(overlap(a, b)); }

SpinState orthogonal(const SpinState& s) {
  return {-std::conj(s.minus), std::conj(s.plus), s.basis};
}

SpinorPacket::SpinorPacket(WaveFunction plus, WaveFunction minus, Axis basis)
    : plus_(std::move(plus)), minus_(std::move(minus)), basis_(basis) {
  if (!(plus_.grid() == minus_.grid())) {
    throw ValidationError("spinor: components live on different grids");
  }
}

SpinorPacket SpinorPacket::product(const WaveFunction& psi, const SpinState& spin) {
  std::vector<Complex> a(psi.size()), b(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    a[j] = psi[j] * spin.plus;
    b[j] = psi[j] * spin.minus;
  }
  return {WaveFunction(psi.grid(), std::move(a), psi.time()),
          WaveFunction(psi.grid(), std::move(b), psi.time()), spin.basis};
}

double SpinorPacket::norm_squared() const noexcept {
  return plus_.norm_squared() + minus_.norm_squared();
}

SpinorPacket SpinorPacket::in_basis(Axis target) const {
  if (target == basis_) return *this;
  return {WaveFunction(plus_.grid(), combine(plus_, minus_, 1.0), plus_.time()),
          WaveFunction(plus_.grid(), combine(plus_, minus_, -1.0), plus_.time()), target};
}

std::array<Complex, 4> SpinorPacket::reduced_density() const {
  return {inner_product(plus_, plus_), inner_product(minus_, plus_),
          inner_product(plus_, minus_), inner_product(minus_, minus_)};
}

SpinDensity::SpinDensity(std::array<Complex, 4> rho_x, std::array<double, 2> momenta)
    : rho_(rho_x), p_(momenta) {}

SpinDensity SpinDensity::unpolarized(double p) {
  return SpinDensity({0.5, 0.0, 0.0, 0.5}, {p, p});
}

SpinDensity SpinDensity::pure(const SpinState& s, double p) {
  const SpinState x = s.in_basis(Axis::x);
  const double n = x.norm_squared();
  return SpinDensity({x.plus * std::conj(x.plus) / n, x.plus * std::conj(x.minus) / n,
                      x.minus * std::conj(x.plus) / n, x.minus * std::conj(x.minus) / n},
                     {p, p});
}

double SpinDensity::hermiticity_defect() const noexcept {
  return std::max({std::abs(rho_[0].imag()), std::abs(rho_[3].imag()),
                   std::abs(rho_[1] - std::conj(rho_[2]))});
}

std::array<double, 2> SpinDensity::eigenvalues() const noexcept {
  const double a = rho_[0].real(), d = rho_[3].real();
  const double off = std::abs(0.5 * (rho_[1] + std::conj(rho_[2])));
  const double r = std::hypot(0.5 * (a - d), off);
  return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

std::vector<MomentumBranch> SpinDensity::branches() const {
  const double w_plus = rho_[0].real(), w_minus = rho_[3].real();
  if (p_[0] == p_[1]) return {{p_[0], w_plus + w_minus}};
  std::vector<MomentumBranch> out{{p_[0], w_plus}, {p_[1], w_minus}};
  if (out[1].momentum < out[0].momentum) std::swap(out[0], out[1]);
  return out;
}

}  // namespace qlinear::devices
