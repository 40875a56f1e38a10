#include "fanno/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fanno/error.hpp"
#include "fanno/numfmt.hpp"

namespace fanno {

namespace {

constexpr double kPhaseLattice = 4294967296.0;  // 2^32

}  // namespace

std::string_view to_string(SignalShape shape) {
  switch (shape) {
    case SignalShape::Bump: return "bump";
    case SignalShape::SineRamp: return "sine-ramp";
  }
  return "unknown";
}

std::optional<SignalShape> parse_shape(std::string_view name) {
  if (name == "bump") return SignalShape::Bump;
  if (name == "sine-ramp") return SignalShape::SineRamp;
  return std::nullopt;
}

double shape_value(SignalShape shape, double theta) {
  using std::numbers::pi;
  const double s1 = std::sin(pi * theta);
  switch (shape) {
    case SignalShape::Bump:
      return s1 * s1;
    case SignalShape::SineRamp:
      return std::sin(2.0 * pi * theta) * s1 * s1;
  }
  return 0.0;
}

double shape_slope(SignalShape shape, double theta) {
  using std::numbers::pi;
  const double s1 = std::sin(pi * theta);
  const double s2 = std::sin(2.0 * pi * theta);
  switch (shape) {
    case SignalShape::Bump:
      return pi * s2;
    case SignalShape::SineRamp:
      return 2.0 * pi * std::cos(2.0 * pi * theta) * s1 * s1 + pi * s2 * s2;
  }
  return 0.0;
}

BoundarySignal BoundarySignal::make(const UpstreamState& base, const GasParams& gas,
                                    double period, double epsilon, SignalShape shape) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorKind::InvalidParameter, "period must be positive");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidParameter, "epsilon must be non-negative");
  }
  BoundarySignal sig(period, epsilon, shape, base.rho_minus(gas), base.u_minus);
  for (int k = 0; k < kAdmissibilitySamples; ++k) {
    const double t = period * static_cast<double>(k) / kAdmissibilitySamples;
    const FlowState v = sig.at(t);
    const bool ok = v.rho >= kMinDensity && v.u > 0.0 && v.u > sound_speed(gas, v.rho);
    if (!ok) {
      std::ostringstream msg;
      msg << "inflow is not supersonic at t=" << format_double(t) << " (rho=" << format_double(v.rho)
          << ", u=" << format_double(v.u) << ") for epsilon=" << format_double(epsilon);
      throw Error(ErrorKind::EpsilonTooLarge, msg.str(), FailureSite{t, 0.0});
    }
  }
  return sig;
}

double BoundarySignal::phase(double t) const {
  const double q = t / period_;
  double theta = q - std::floor(q);
  theta = std::nearbyint(theta * kPhaseLattice) / kPhaseLattice;
  return theta >= 1.0 ? 0.0 : theta;
}

FlowState BoundarySignal::at(double t) const {
  const double w = epsilon_ * shape_value(shape_, phase(t));
  return {rho_minus_ + w, u_minus_ - w};
}

FlowState BoundarySignal::rate(double t) const {
  const double w = epsilon_ * shape_slope(shape_, phase(t)) / period_;
  return {w, -w};
}

RiemannState BoundarySignal::invariants(const GasParams& gas, double t) const {
  return to_riemann(gas, at(t));
}

CornerData corner_from_profile(const SteadyProfile& profile) {
  const GasParams& gas = profile.gas;
  const UpstreamState& up = profile.upstream;
  const double u = up.u_minus;
  const double rho = up.rho_minus(gas);
  const double du = gas.beta() == 0.0 ? 0.0 : profile_velocity_slope(gas, up, u);
  // rho u is constant along the profile
  return {rho, u, -rho * du / u, du};
}

CornerData corner_from_samples(double dx, const double* rho, const double* u, std::size_t n) {
  if (n < 3) {
    throw Error(ErrorKind::InvalidParameter, "corner derivatives need three samples");
  }
  auto d = [dx](const double* f) { return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx); };
  return {rho[0], u[0], d(rho), d(u)};
}

double CompatibilityReport::max_abs() const {
  return std::max({std::abs(mass), std::abs(momentum), std::abs(corner_density),
                   std::abs(corner_velocity)});
}

CompatibilityReport check_compatibility(const GasParams& gas, const CornerData& init,
                                        const BoundarySignal& signal, double tolerance) {
  const FlowState bc = signal.at(0.0);
  const FlowState bc_rate = signal.rate(0.0);
  const double g = gas.gamma();
  const double dp = g * std::pow(init.rho, g - 1.0) * init.drho_dx;

  CompatibilityReport rep;
  rep.mass = bc_rate.rho + init.drho_dx * init.u + init.rho * init.du_dx;
  rep.momentum = bc_rate.rho * bc.u + bc.rho * bc_rate.u + init.drho_dx * init.u * init.u +
                 2.0 * init.rho * init.u * init.du_dx + dp -
                 gas.beta() * init.rho * std::pow(init.u, gas.alpha() + 1.0);
  rep.corner_density = init.rho - bc.rho;
  rep.corner_velocity = init.u - bc.u;
  rep.tolerance = tolerance;
  rep.passed = rep.max_abs() <= tolerance;
  return rep;
}

}  // namespace fanno
