#pragma once

// Dimensionless isentropic gas with p = rho^gamma and friction source
// beta * rho * |u|^alpha * u.

#include <array>

namespace fanno {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;  // row-major

/// Which closed form the steady potential takes.
enum class FrictionCase { Generic, AlphaOne, AlphaNegGamma };

class GasParams {
 public:
  /// Throws InvalidParameter unless gamma > 1 and all values are finite.
  /// alpha is compared exactly against 1 and -gamma.
  static GasParams make(double gamma, double alpha, double beta);

  double gamma() const noexcept { return gamma_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  FrictionCase friction_case() const noexcept { return case_; }

  GasParams with_beta(double beta) const { return make(gamma_, alpha_, beta); }

 private:
  GasParams(double gamma, double alpha, double beta, FrictionCase c)
      : gamma_(gamma), alpha_(alpha), beta_(beta), case_(c) {}

  double gamma_;
  double alpha_;
  double beta_;
  FrictionCase case_;
};

struct FlowState {
  double rho = 1.0;
  double u = 0.0;
};

struct RiemannState {
  double r = 0.0;  // backward invariant, transported with u - c
  double s = 0.0;  // forward invariant, transported with u + c
};

struct Eigenvalues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct Eigenbasis {
  Vec2 r1, r2;  // right, unit norm
  Vec2 l1, l2;  // left, l_i . r_j = delta_ij
};

/// Densities below this are treated as vacuum.
inline constexpr double kMinDensity = 1e-300;

double sound_speed(const GasParams& gas, double rho);
double density_from_sound_speed(const GasParams& gas, double c);
double mach_number(const GasParams& gas, const FlowState& state);

Eigenvalues eigenvalues(const GasParams& gas, const FlowState& state);
Eigenbasis eigenvectors(const GasParams& gas, const FlowState& state);

/// A(V) = [[u, rho], [gamma rho^(gamma-2), u]], the quasilinear coefficient
/// matrix of the (rho, u) system.
Mat2 coefficient_matrix(const GasParams& gas, const FlowState& state);

RiemannState to_riemann(const GasParams& gas, const FlowState& state);
FlowState from_riemann(const GasParams& gas, const RiemannState& rs);

// Invariant-space helpers; no validation, callers check s > r.
inline double velocity_of(double r, double s) { return r + s; }
inline double sound_speed_of(const GasParams& gas, double r, double s) {
  return 0.5 * (gas.gamma() - 1.0) * (s - r);
}

double dot(const Vec2& a, const Vec2& b);
Vec2 apply(const Mat2& m, const Vec2& v);

}  // namespace fanno
