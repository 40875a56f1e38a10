#pragma once

#include <cstddef>

#include "fanno/kernels.hpp"

namespace fanno::simd::detail {

void source_term_scalar(const double* r, const double* s, std::size_t n, double half_beta,
                        double alpha, double* out);
void transport_rhs_scalar(const double* r, const double* s, const double* src, std::size_t n,
                          double k, double inv_dx, double* dr, double* ds);
void euler_update_scalar(const double* w, const double* rhs, std::size_t n, double dt,
                         double* out);
void heun_average_scalar(const double* w, const double* w_stage, const double* rhs,
                         std::size_t n, double dt, double* out);
CharBounds char_bounds_scalar(const double* r, const double* s, std::size_t n, double k);

#if defined(FANNO_HAVE_AVX2)
void source_term_avx2(const double* r, const double* s, std::size_t n, double half_beta,
                      double alpha, double* out);
void transport_rhs_avx2(const double* r, const double* s, const double* src, std::size_t n,
                        double k, double inv_dx, double* dr, double* ds);
void euler_update_avx2(const double* w, const double* rhs, std::size_t n, double dt,
                       double* out);
void heun_average_avx2(const double* w, const double* w_stage, const double* rhs, std::size_t n,
                       double dt, double* out);
CharBounds char_bounds_avx2(const double* r, const double* s, std::size_t n, double k);
#endif

}  // namespace fanno::simd::detail
