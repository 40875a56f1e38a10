#include "fanno/steady.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "fanno/error.hpp"
#include "fanno/numfmt.hpp"
#include "fanno/root_find.hpp"

namespace fanno {

namespace {

constexpr double kRootRelTol = 1e-12;
constexpr int kRootMaxIter = 200;
constexpr int kMaxBracketGrowth = 2048;

// c_-^2 u_-^(gamma-1), the mass-flux constant shared by all potentials.
double flux_constant(const GasParams& gas, const UpstreamState& up) {
  return up.c_minus * up.c_minus * std::pow(up.u_minus, gas.gamma() - 1.0);
}

void require_non_sonic(const UpstreamState& up) {
  if (up.sonic()) {
    throw Error(ErrorKind::SonicUpstream, "upstream state is sonic (u_minus == c_minus)");
  }
}

std::string describe_too_long(double x, const DuctLimit& limit) {
  std::ostringstream msg;
  msg << "duct length " << format_double(x) << " is not below the maximal length l_max="
      << format_double(limit.length);
  return msg.str();
}

}  // namespace

UpstreamState UpstreamState::make(double c_minus, double u_minus) {
  if (!(c_minus > 0.0) || !std::isfinite(c_minus)) {
    throw Error(ErrorKind::InvalidParameter, "c_minus must be positive");
  }
  if (!(u_minus > 0.0) || !std::isfinite(u_minus)) {
    throw Error(ErrorKind::InvalidParameter, "u_minus must be positive");
  }
  return {c_minus, u_minus};
}

UpstreamState UpstreamState::from_density(const GasParams& gas, double rho_minus,
                                          double u_minus) {
  if (!(rho_minus > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "rho_minus must be positive");
  }
  return make(sound_speed(gas, rho_minus), u_minus);
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::SubsonicDecelerating: return "subsonic_decelerating";
    case Regime::SupersonicAccelerating: return "supersonic_accelerating";
    case Regime::SubsonicChoking: return "subsonic_choking";
    case Regime::SupersonicChoking: return "supersonic_choking";
  }
  return "unknown";
}

double critical_speed(const UpstreamState& up, const GasParams& gas) {
  const double g = gas.gamma();
  return std::pow(up.c_minus, 2.0 / (g + 1.0)) * std::pow(up.u_minus, (g - 1.0) / (g + 1.0));
}

double implicit_potential(const GasParams& gas, const UpstreamState& up, double s) {
  if (!(s > 0.0)) {
    throw Error(ErrorKind::NonPositiveSpeed, "potential needs a positive speed");
  }
  const double g = gas.gamma();
  const double a = gas.alpha();
  const double k = flux_constant(gas, up);
  switch (gas.friction_case()) {
    case FrictionCase::AlphaOne:
      return std::log(s) + k * std::pow(s, -g - 1.0) / (g + 1.0);
    case FrictionCase::AlphaNegGamma:
      return std::pow(s, g + 1.0) / (g + 1.0) - k * std::log(s);
    case FrictionCase::Generic:
      break;
  }
  return std::pow(s, 1.0 - a) / (1.0 - a) + k * std::pow(s, -g - a) / (g + a);
}

double potential_slope(const GasParams& gas, const UpstreamState& up, double s) {
  if (!(s > 0.0)) {
    throw Error(ErrorKind::NonPositiveSpeed, "potential needs a positive speed");
  }
  const double g = gas.gamma();
  const double k = flux_constant(gas, up);
  return std::pow(s, -gas.alpha()) * (1.0 - k * std::pow(s, -g - 1.0));
}

double profile_sound_speed(const GasParams& gas, const UpstreamState& up, double u) {
  return up.c_minus * std::pow(up.u_minus / u, 0.5 * (gas.gamma() - 1.0));
}

double profile_velocity_slope(const GasParams& gas, const UpstreamState& up, double u) {
  return gas.beta() / potential_slope(gas, up, u);
}

DuctLimit max_duct_length(const GasParams& gas, const UpstreamState& up) {
  require_non_sonic(up);
  const double beta = gas.beta();
  if (beta == 0.0) return {};

  const double g = gas.gamma();
  const double a = gas.alpha();
  const double um = up.u_minus;
  const double cm2 = up.c_minus * up.c_minus;

  if (beta < 0.0) {
    // Friction drives the flow to Mach 1 from either side.
    const double sc = critical_speed(up, gas);
    double delta = 0.0;
    switch (gas.friction_case()) {
      case FrictionCase::Generic:
        delta = (std::pow(sc, 1.0 - a) - std::pow(um, 1.0 - a)) / (1.0 - a) +
                cm2 * (std::pow(um, g - 1.0) * std::pow(sc, -g - a) - std::pow(um, -1.0 - a)) /
                    (g + a);
        break;
      case FrictionCase::AlphaOne:
        delta = cm2 * (std::pow(um, g - 1.0) * std::pow(sc, -g - 1.0) - std::pow(um, -2.0)) /
                    (g + 1.0) +
                std::log(sc / um);
        break;
      case FrictionCase::AlphaNegGamma:
        delta = (std::pow(sc, g + 1.0) - std::pow(um, g + 1.0)) / (g + 1.0) -
                cm2 * std::pow(um, g - 1.0) * std::log(sc / um);
        break;
    }
    return {DuctLimit::Kind::Choking, delta / beta};
  }

  // beta > 0 moves the flow away from Mach 1. The branch potential is
  // unbounded above unless alpha > 1 (supersonic, u -> inf) or
  // alpha < -gamma (subsonic, u -> 0); in both cases its supremum is 0.
  if (gas.friction_case() != FrictionCase::Generic) return {};
  if (up.supersonic() && a > 1.0) {
    return {DuctLimit::Kind::Blowup, -implicit_potential(gas, up, um) / beta};
  }
  if (!up.supersonic() && a < -g) {
    return {DuctLimit::Kind::Vacuum, -implicit_potential(gas, up, um) / beta};
  }
  return {};
}

Regime classify_regime(const GasParams& gas, const UpstreamState& up) {
  require_non_sonic(up);
  if (gas.beta() == 0.0) {
    throw Error(ErrorKind::ZeroBeta, "regime is undefined for beta == 0");
  }
  const bool super = up.supersonic();
  if (gas.beta() > 0.0) {
    return super ? Regime::SupersonicAccelerating : Regime::SubsonicDecelerating;
  }
  return super ? Regime::SupersonicChoking : Regime::SubsonicChoking;
}

namespace {

double solve_on_branch(const GasParams& gas, const UpstreamState& up, const DuctLimit& limit,
                       double x) {
  const double um = up.u_minus;
  const double sc = critical_speed(up, gas);
  const double h_minus = implicit_potential(gas, up, um);
  const double target = h_minus + gas.beta() * x;
  const double h_tol = 1e-10 * std::max(1.0, std::abs(h_minus));
  auto residual = [&](double s) { return implicit_potential(gas, up, s) - target; };

  // The potential is decreasing below s_c and increasing above it, so on
  // either branch the residual is negative at s_c and positive far out.
  const double f_sc = residual(sc);
  if (!(f_sc < 0.0)) {
    throw Error(ErrorKind::DuctTooLong, describe_too_long(x, limit));
  }

  double lo, hi, f_lo, f_hi;
  if (up.supersonic()) {
    lo = sc;
    f_lo = f_sc;
    hi = std::max(2.0 * um, 2.0 * sc);
    f_hi = residual(hi);
    for (int k = 0; f_hi <= 0.0; ++k) {
      if (k == kMaxBracketGrowth || !std::isfinite(hi)) {
        throw Error(ErrorKind::DuctTooLong, describe_too_long(x, limit));
      }
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      f_hi = residual(hi);
    }
  } else {
    hi = sc;
    f_hi = f_sc;
    lo = std::min(0.5 * um, 0.5 * sc);
    f_lo = residual(lo);
    for (int k = 0; f_lo <= 0.0; ++k) {
      if (k == kMaxBracketGrowth || !(lo > 0.0)) {
        throw Error(ErrorKind::DuctTooLong, describe_too_long(x, limit));
      }
      hi = lo;
      f_hi = f_lo;
      lo *= 0.5;
      f_lo = residual(lo);
    }
  }

  const RootResult res = brent_root(residual, lo, hi, f_lo, f_hi, kRootRelTol, kRootMaxIter);
  const double collapse = 1e3 * std::numeric_limits<double>::epsilon() * sc;
  if (std::abs(res.residual) > h_tol &&
      (!res.converged || res.bracket_width < collapse || std::abs(res.root - sc) < collapse)) {
    // The choke makes u(x) ill-conditioned; refuse rather than return noise.
    throw Error(ErrorKind::DuctTooLong, describe_too_long(x, limit));
  }
  return res.root;
}

}  // namespace

double solve_velocity_at(const GasParams& gas, const UpstreamState& up, double x) {
  require_non_sonic(up);
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "position must be non-negative");
  }
  if (x == 0.0 || gas.beta() == 0.0) return up.u_minus;
  const DuctLimit limit = max_duct_length(gas, up);
  if (!limit.admits(x)) {
    throw Error(ErrorKind::DuctTooLong, describe_too_long(x, limit));
  }
  return solve_on_branch(gas, up, limit, x);
}

SteadyProfile solve_profile(const GasParams& gas, const UpstreamState& up, double length,
                            int n_points) {
  require_non_sonic(up);
  if (n_points < 2) {
    throw Error(ErrorKind::InvalidParameter, "profile needs at least two points");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidParameter, "duct length must be positive");
  }
  SteadyProfile p;
  p.gas = gas;
  p.upstream = up;
  p.length = length;
  p.limit = max_duct_length(gas, up);
  if (!p.limit.admits(length)) {
    throw Error(ErrorKind::DuctTooLong, describe_too_long(length, p.limit));
  }
  if (gas.beta() != 0.0) p.regime = classify_regime(gas, up);

  const auto n = static_cast<std::size_t>(n_points);
  p.xs.resize(n);
  p.u_tilde.resize(n);
  p.c_tilde.resize(n);
  p.rho_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.xs[i] = (i + 1 == n) ? length : length * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  p.u_tilde[0] = up.u_minus;
  p.c_tilde[0] = up.c_minus;
  for (std::size_t i = 1; i < n; ++i) {
    const double u = gas.beta() == 0.0 ? up.u_minus : solve_on_branch(gas, up, p.limit, p.xs[i]);
    p.u_tilde[i] = u;
    p.c_tilde[i] = gas.beta() == 0.0 ? up.c_minus : profile_sound_speed(gas, up, u);
  }
  for (std::size_t i = 0; i < n; ++i) {
    p.rho_tilde[i] = density_from_sound_speed(gas, p.c_tilde[i]);
  }
  return p;
}

void write_profile_csv(std::ostream& out, const SteadyProfile& profile) {
  out << "x,u_tilde,c_tilde,rho_tilde,mach\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << format_double(profile.xs[i]) << ',' << format_double(profile.u_tilde[i]) << ','
        << format_double(profile.c_tilde[i]) << ',' << format_double(profile.rho_tilde[i]) << ','
        << format_double(profile.u_tilde[i] / profile.c_tilde[i]) << '\n';
  }
}

}  // namespace fanno
