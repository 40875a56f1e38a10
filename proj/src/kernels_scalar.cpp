#include <cmath>

#include "fanno/kernels.hpp"
#include "kernels_impl.hpp"

namespace fanno::simd::detail {

void source_term_scalar(const double* r, const double* s, std::size_t n, double half_beta,
                        double alpha, double* out) {
  if (alpha == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = half_beta * (r[i] + s[i]);
  } else if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double u = r[i] + s[i];
      out[i] = half_beta * (u * u);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = half_beta * std::pow(r[i] + s[i], alpha + 1.0);
  }
}

void transport_rhs_scalar(const double* r, const double* s, const double* src, std::size_t n,
                          double k, double inv_dx, double* dr, double* ds) {
  for (std::size_t i = 1; i < n; ++i) {
    const double u = r[i] + s[i];
    const double c = k * (s[i] - r[i]);
    const double l1 = u - c;
    const double l2 = u + c;
    dr[i] = src[i] - l1 * ((r[i] - r[i - 1]) * inv_dx);
    ds[i] = src[i] - l2 * ((s[i] - s[i - 1]) * inv_dx);
  }
}

void euler_update_scalar(const double* w, const double* rhs, std::size_t n, double dt,
                         double* out) {
  for (std::size_t i = 1; i < n; ++i) out[i] = w[i] + dt * rhs[i];
}

void heun_average_scalar(const double* w, const double* w_stage, const double* rhs,
                         std::size_t n, double dt, double* out) {
  for (std::size_t i = 1; i < n; ++i) out[i] = 0.5 * (w[i] + (w_stage[i] + dt * rhs[i]));
}

CharBounds char_bounds_scalar(const double* r, const double* s, std::size_t n, double k) {
  CharBounds b;
  b.min_gap = INFINITY;
  b.min_lambda1 = INFINITY;
  b.max_lambda2 = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = s[i] - r[i];
    const double u = r[i] + s[i];
    const double c = k * gap;
    const double l1 = u - c;
    const double l2 = u + c;
    if (std::isnan(l1) || std::isnan(l2)) {
      b.has_nan = true;
      continue;
    }
    b.min_gap = gap < b.min_gap ? gap : b.min_gap;
    b.min_lambda1 = l1 < b.min_lambda1 ? l1 : b.min_lambda1;
    b.max_lambda2 = l2 > b.max_lambda2 ? l2 : b.max_lambda2;
  }
  return b;
}

}  // namespace fanno::simd::detail
