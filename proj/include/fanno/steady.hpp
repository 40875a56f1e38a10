#pragma once

// Steady Fanno flow: the duct profile that the transient solver perturbs.
//
// Along a steady profile the mass flux fixes c * u^((gamma-1)/2), and the
// momentum balance integrates to potential(u(x)) = potential(u_minus) + beta*x.
// The potential has a single minimum at the critical speed s_c (Mach 1), so
// each profile lives on one monotone branch: s > s_c supersonic, s < s_c
// subsonic.

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "fanno/gas.hpp"

namespace fanno {

struct UpstreamState {
  double c_minus = 1.0;
  double u_minus = 1.0;

  /// Throws InvalidParameter unless both values are positive and finite.
  static UpstreamState make(double c_minus, double u_minus);
  static UpstreamState from_density(const GasParams& gas, double rho_minus, double u_minus);

  bool supersonic() const noexcept { return u_minus > c_minus; }
  bool sonic() const noexcept { return u_minus == c_minus; }
  double rho_minus(const GasParams& gas) const { return density_from_sound_speed(gas, c_minus); }
};

/// The four monotone orderings a steady profile can follow.
enum class Regime {
  SubsonicDecelerating = 1,   // beta > 0, c_- > u_-: 0 < u < u_- < c_- < c
  SupersonicAccelerating = 2, // beta > 0, c_- < u_-: 0 < c < c_- < u_- < u
  SubsonicChoking = 3,        // beta < 0, c_- > u_-: 0 < u_- < u < c < c_-
  SupersonicChoking = 4,      // beta < 0, c_- < u_-: 0 < c_- < c < u < u_-
};

std::string_view to_string(Regime regime);

/// How far the steady profile extends from x = 0.
struct DuctLimit {
  enum class Kind {
    Unbounded,  // profile exists for every x > 0
    Choking,    // beta < 0: profile reaches Mach 1 at `length`
    Blowup,     // beta > 0, supersonic, alpha > 1: u -> infinity at `length`
    Vacuum,     // beta > 0, subsonic, alpha < -gamma: u -> 0 at `length`
  };
  Kind kind = Kind::Unbounded;
  double length = 0.0;  // meaningful only when bounded()

  bool bounded() const noexcept { return kind != Kind::Unbounded; }
  /// True iff a duct of length L admits a smooth profile.
  bool admits(double L) const noexcept { return !bounded() || L < length; }
};

struct SteadyProfile {
  GasParams gas = GasParams::make(2.0, 0.0, 0.0);
  UpstreamState upstream;
  double length = 0.0;
  std::vector<double> xs;
  std::vector<double> u_tilde;
  std::vector<double> c_tilde;
  std::vector<double> rho_tilde;
  std::optional<Regime> regime;  // empty when beta == 0
  DuctLimit limit;

  std::size_t size() const noexcept { return xs.size(); }
  FlowState state(std::size_t i) const { return {rho_tilde[i], u_tilde[i]}; }
};

/// s_c = c_-^(2/(gamma+1)) u_-^((gamma-1)/(gamma+1)).
double critical_speed(const UpstreamState& up, const GasParams& gas);

/// Branch potential h, f or g depending on the friction case. Throws
/// NonPositiveSpeed for s <= 0.
double implicit_potential(const GasParams& gas, const UpstreamState& up, double s);

/// d/ds of implicit_potential: s^(-alpha) (1 - K s^(-gamma-1)),
/// K = c_-^2 u_-^(gamma-1). Vanishes exactly at s_c.
double potential_slope(const GasParams& gas, const UpstreamState& up, double s);

/// Sound speed on the profile through (c_-, u_-) at velocity u.
double profile_sound_speed(const GasParams& gas, const UpstreamState& up, double u);

/// u'(x) of the steady ODE, beta / potential_slope(u).
double profile_velocity_slope(const GasParams& gas, const UpstreamState& up, double u);

DuctLimit max_duct_length(const GasParams& gas, const UpstreamState& up);

Regime classify_regime(const GasParams& gas, const UpstreamState& up);

/// Velocity of the steady profile at a single position x >= 0.
double solve_velocity_at(const GasParams& gas, const UpstreamState& up, double x);

/// Samples the profile on n_points uniformly spaced positions of [0, length].
SteadyProfile solve_profile(const GasParams& gas, const UpstreamState& up, double length,
                            int n_points);

/// CSV with header x,u_tilde,c_tilde,rho_tilde,mach.
void write_profile_csv(std::ostream& out, const SteadyProfile& profile);

}  // namespace fanno
