#pragma once

// Inner loops of the characteristic solver. Each kernel has a scalar
// reference and, where the CPU supports it, an AVX2 variant chosen at
// runtime. Variants evaluate the same expression tree in the same order
// (no FMA contraction), so their outputs are bit-identical.

#include <cstddef>
#include <string_view>
#include <vector>

namespace fanno::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct CharBounds {
  double min_gap = 0.0;      // min (s - r), proportional to the sound speed
  double min_lambda1 = 0.0;  // min (u - c)
  double max_lambda2 = 0.0;  // max (u + c)
  bool has_nan = false;      // min/max fields are meaningless when set
};

struct Kernels {
  Isa isa;

  /// out[i] = half_beta * (r[i] + s[i])^(alpha + 1) for i in [0, n).
  void (*source_term)(const double* r, const double* s, std::size_t n, double half_beta,
                      double alpha, double* out);

  /// Left-biased upwind right-hand side of the invariant system for
  /// i in [1, n); index 0 is left untouched. k = (gamma - 1) / 2.
  void (*transport_rhs)(const double* r, const double* s, const double* src, std::size_t n,
                        double k, double inv_dx, double* dr, double* ds);

  /// out[i] = w[i] + dt * rhs[i] for i in [1, n).
  void (*euler_update)(const double* w, const double* rhs, std::size_t n, double dt,
                       double* out);

  /// out[i] = 0.5 * (w[i] + (w_stage[i] + dt * rhs[i])) for i in [1, n).
  void (*heun_average)(const double* w, const double* w_stage, const double* rhs, std::size_t n,
                       double dt, double* out);

  CharBounds (*char_bounds)(const double* r, const double* s, std::size_t n, double k);
};

const Kernels& scalar_kernels();

/// Every variant the running CPU can execute, scalar first.
std::vector<Isa> available_isas();

/// Throws std::invalid_argument if the variant is unavailable here.
const Kernels& kernels_for(Isa isa);

/// Best available variant, unless overridden by select_isa() or the
/// FANNO_SIMD environment variable (scalar | avx2 | auto).
const Kernels& active_kernels();

void select_isa(Isa isa);

}  // namespace fanno::simd
