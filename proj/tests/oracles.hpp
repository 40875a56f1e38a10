#pragma once

// Test-only reference computations. These integrate the steady ODE
//   u' = beta / (u^-alpha - c_-^2 u_-^(gamma-1) u^(-gamma-alpha-1))
// directly with classical RK4 and never touch the closed-form potentials
// or the root finder used by the library.

#include <cmath>
#include <cstddef>
#include <vector>

namespace fanno::oracle {

struct SteadyOde {
  double gamma, alpha, beta, c_minus, u_minus;

  double denominator(double u) const {
    const double k = c_minus * c_minus * std::pow(u_minus, gamma - 1.0);
    return std::pow(u, -alpha) - k * std::pow(u, -gamma - alpha - 1.0);
  }
  double operator()(double u) const { return beta / denominator(u); }
};

/// RK4 with fixed step `length / steps`; returns u at the `n_samples`
/// uniformly spaced positions 0, length/(n-1), ..., length. steps must be a
/// multiple of n_samples - 1.
inline std::vector<double> rk4_profile(const SteadyOde& ode, double length, std::size_t steps,
                                       std::size_t n_samples) {
  const double h = length / static_cast<double>(steps);
  const std::size_t stride = steps / (n_samples - 1);
  std::vector<double> out;
  out.reserve(n_samples);
  double u = ode.u_minus;
  out.push_back(u);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double k1 = ode(u);
    const double k2 = ode(u + 0.5 * h * k1);
    const double k3 = ode(u + 0.5 * h * k2);
    const double k4 = ode(u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (k % stride == 0) out.push_back(u);
  }
  return out;
}

struct Blowup {
  double x = 0.0;
  bool found = false;
};

/// Marches RK4 from x = 0 until |u'| exceeds `slope_limit`. Steps whose
/// stages leave the branch (denominator changes sign), produce non-finite
/// values or change u by more than `max_rel_change` are rejected and halved,
/// so the returned x resolves the singularity far below the base step.
inline Blowup rk4_blowup(const SteadyOde& ode, double x_max, double base_step,
                         double slope_limit = 1e8, double min_step = 1e-15,
                         double max_rel_change = 1e-3) {
  double x = 0.0;
  double u = ode.u_minus;
  double h = base_step;
  const bool positive = ode.denominator(u) > 0.0;
  auto stage_ok = [&](double uu, double k) {
    return std::isfinite(uu) && uu > 0.0 && std::isfinite(k) &&
           (ode.denominator(uu) > 0.0) == positive;
  };
  while (x < x_max) {
    const double k1 = ode(u);
    if (std::abs(k1) > slope_limit) return {x, true};
    const double u2 = u + 0.5 * h * k1;
    const double k2 = stage_ok(u2, 0.0) ? ode(u2) : NAN;
    const double u3 = u + 0.5 * h * k2;
    const double k3 = stage_ok(u3, k2) ? ode(u3) : NAN;
    const double u4 = u + h * k3;
    const double k4 = stage_ok(u4, k3) ? ode(u4) : NAN;
    const double un = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!stage_ok(u2, k2) || !stage_ok(u3, k3) || !stage_ok(u4, k4) || !stage_ok(un, 0.0) ||
        std::abs(un - u) > max_rel_change * u) {
      h *= 0.5;
      if (h < min_step * x_max) return {x, true};
      continue;
    }
    u = un;
    x += h;
  }
  return {x, false};
}

/// Central finite difference of f at x with step h.
template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double second_difference(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace fanno::oracle
