#include "fanno/gas.hpp"

#include <cmath>
#include <sstream>

#include "fanno/error.hpp"

namespace fanno {

namespace {

void require_density(double rho) {
  if (!(rho >= kMinDensity) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << "density must be positive, got " << rho;
    throw Error(ErrorKind::NonPositiveDensity, msg.str());
  }
}

}  // namespace

GasParams GasParams::make(double gamma, double alpha, double beta) {
  if (!std::isfinite(gamma) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidParameter, "gas parameters must be finite");
  }
  if (!(gamma > 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "gamma must exceed 1");
  }
  FrictionCase c = FrictionCase::Generic;
  if (alpha == 1.0) {
    c = FrictionCase::AlphaOne;
  } else if (alpha == -gamma) {
    c = FrictionCase::AlphaNegGamma;
  }
  return GasParams(gamma, alpha, beta, c);
}

double sound_speed(const GasParams& gas, double rho) {
  require_density(rho);
  return std::sqrt(gas.gamma()) * std::pow(rho, 0.5 * (gas.gamma() - 1.0));
}

double density_from_sound_speed(const GasParams& gas, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::NonPositiveSoundSpeed, "sound speed must be positive");
  }
  return std::pow(c * c / gas.gamma(), 1.0 / (gas.gamma() - 1.0));
}

double mach_number(const GasParams& gas, const FlowState& state) {
  return state.u / sound_speed(gas, state.rho);
}

Eigenvalues eigenvalues(const GasParams& gas, const FlowState& state) {
  const double c = sound_speed(gas, state.rho);
  return {state.u - c, state.u + c};
}

Eigenbasis eigenvectors(const GasParams& gas, const FlowState& state) {
  const double rho = state.rho;
  const double c = sound_speed(gas, rho);
  const double norm = std::hypot(rho, c);
  const double half = 0.5 * norm;
  Eigenbasis e;
  e.r1 = {rho / norm, -c / norm};
  e.r2 = {rho / norm, c / norm};
  e.l1 = {half / rho, -half / c};
  e.l2 = {half / rho, half / c};
  return e;
}

Mat2 coefficient_matrix(const GasParams& gas, const FlowState& state) {
  require_density(state.rho);
  const double g = gas.gamma();
  return {{{state.u, state.rho}, {g * std::pow(state.rho, g - 2.0), state.u}}};
}

RiemannState to_riemann(const GasParams& gas, const FlowState& state) {
  const double c = sound_speed(gas, state.rho);
  const double w = c / (gas.gamma() - 1.0);
  return {0.5 * state.u - w, 0.5 * state.u + w};
}

FlowState from_riemann(const GasParams& gas, const RiemannState& rs) {
  if (!(rs.s > rs.r)) {
    throw Error(ErrorKind::NonPositiveSoundSpeed, "Riemann invariants require s > r");
  }
  const double c = sound_speed_of(gas, rs.r, rs.s);
  return {density_from_sound_speed(gas, c), velocity_of(rs.r, rs.s)};
}

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

Vec2 apply(const Mat2& m, const Vec2& v) { return {dot(m[0], v), dot(m[1], v)}; }

}  // namespace fanno
