#pragma once

// Time-periodic inflow data at x = 0 and the corner compatibility check
// against the initial data at (t, x) = (0, 0).

#include <optional>
#include <string_view>

#include "fanno/gas.hpp"
#include "fanno/steady.hpp"

namespace fanno {

/// Unit-period waveforms; both vanish with vanishing slope at phase 0.
enum class SignalShape {
  Bump,      // sin^2(pi theta)
  SineRamp,  // sin(2 pi theta) sin^2(pi theta)
};

std::string_view to_string(SignalShape shape);
std::optional<SignalShape> parse_shape(std::string_view name);

double shape_value(SignalShape shape, double theta);
double shape_slope(SignalShape shape, double theta);  // d/dtheta

/// rho_l(t) = rho_- + eps phi(t/P mod 1), u_l(t) = u_- - eps phi(t/P mod 1):
/// the inflow is compressed and slowed, so large eps drives it subsonic.
class BoundarySignal {
 public:
  /// Throws EpsilonTooLarge (with the failing time, x = 0) when the inflow
  /// leaves the supersonic regime or the density turns non-positive at any
  /// of kAdmissibilitySamples phases of one period.
  static BoundarySignal make(const UpstreamState& base, const GasParams& gas, double period,
                             double epsilon, SignalShape shape);

  static constexpr int kAdmissibilitySamples = 8192;

  double period() const noexcept { return period_; }
  double epsilon() const noexcept { return epsilon_; }
  SignalShape shape() const noexcept { return shape_; }
  double rho_minus() const noexcept { return rho_minus_; }
  double u_minus() const noexcept { return u_minus_; }

  /// Phase in [0, 1), snapped to a 2^-32 lattice so that t and t + P
  /// land on the same phase despite rounding in t + P.
  double phase(double t) const;

  FlowState at(double t) const;
  FlowState rate(double t) const;  // time derivative of (rho_l, u_l)
  RiemannState invariants(const GasParams& gas, double t) const;

 private:
  BoundarySignal(double period, double epsilon, SignalShape shape, double rho_minus,
                 double u_minus)
      : period_(period), epsilon_(epsilon), shape_(shape), rho_minus_(rho_minus),
        u_minus_(u_minus) {}

  double period_;
  double epsilon_;
  SignalShape shape_;
  double rho_minus_;
  double u_minus_;
};

/// Initial data and its one-sided x-derivatives at x = 0.
struct CornerData {
  double rho = 0.0;
  double u = 0.0;
  double drho_dx = 0.0;
  double du_dx = 0.0;
};

/// Exact corner data of a steady profile, slopes from the steady ODE.
CornerData corner_from_profile(const SteadyProfile& profile);

/// Corner data from samples on a uniform grid (second-order one-sided
/// differences). Needs at least three samples.
CornerData corner_from_samples(double dx, const double* rho, const double* u, std::size_t n);

struct CompatibilityReport {
  double mass = 0.0;             // rho_l' + (rho0 u0)'
  double momentum = 0.0;         // (rho_l u_l)' + (rho0 u0^2 + p0)' - beta rho0 u0^(alpha+1)
  double corner_density = 0.0;   // rho0(0) - rho_l(0)
  double corner_velocity = 0.0;  // u0(0) - u_l(0)
  double tolerance = 0.0;
  bool passed = false;

  double max_abs() const;
};

CompatibilityReport check_compatibility(const GasParams& gas, const CornerData& init,
                                        const BoundarySignal& signal, double tolerance = 1e-10);

}  // namespace fanno
