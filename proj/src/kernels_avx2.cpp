#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace fanno::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

double hmin(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  double m = lanes[0];
  for (std::size_t j = 1; j < kLanes; ++j) m = lanes[j] < m ? lanes[j] : m;
  return m;
}

double hmax(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  double m = lanes[0];
  for (std::size_t j = 1; j < kLanes; ++j) m = lanes[j] > m ? lanes[j] : m;
  return m;
}

}  // namespace

void source_term_avx2(const double* r, const double* s, std::size_t n, double half_beta,
                      double alpha, double* out) {
  if (alpha != 0.0 && alpha != 1.0) {
    // no vector pow; the scalar loop is the reference
    source_term_scalar(r, s, n, half_beta, alpha, out);
    return;
  }
  const __m256d hb = _mm256_set1_pd(half_beta);
  std::size_t i = 0;
  if (alpha == 0.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d u = _mm256_add_pd(_mm256_loadu_pd(r + i), _mm256_loadu_pd(s + i));
      _mm256_storeu_pd(out + i, _mm256_mul_pd(hb, u));
    }
  } else {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d u = _mm256_add_pd(_mm256_loadu_pd(r + i), _mm256_loadu_pd(s + i));
      _mm256_storeu_pd(out + i, _mm256_mul_pd(hb, _mm256_mul_pd(u, u)));
    }
  }
  source_term_scalar(r + i, s + i, n - i, half_beta, alpha, out + i);
}

void transport_rhs_avx2(const double* r, const double* s, const double* src, std::size_t n,
                        double k, double inv_dx, double* dr, double* ds) {
  if (n < 2) return;
  const __m256d kv = _mm256_set1_pd(k);
  const __m256d idx = _mm256_set1_pd(inv_dx);
  std::size_t i = 1;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ri = _mm256_loadu_pd(r + i);
    const __m256d si = _mm256_loadu_pd(s + i);
    const __m256d rm = _mm256_loadu_pd(r + i - 1);
    const __m256d sm = _mm256_loadu_pd(s + i - 1);
    const __m256d q = _mm256_loadu_pd(src + i);
    const __m256d u = _mm256_add_pd(ri, si);
    const __m256d c = _mm256_mul_pd(kv, _mm256_sub_pd(si, ri));
    const __m256d l1 = _mm256_sub_pd(u, c);
    const __m256d l2 = _mm256_add_pd(u, c);
    const __m256d gr = _mm256_mul_pd(_mm256_sub_pd(ri, rm), idx);
    const __m256d gs = _mm256_mul_pd(_mm256_sub_pd(si, sm), idx);
    _mm256_storeu_pd(dr + i, _mm256_sub_pd(q, _mm256_mul_pd(l1, gr)));
    _mm256_storeu_pd(ds + i, _mm256_sub_pd(q, _mm256_mul_pd(l2, gs)));
  }
  // tail: shift so that the scalar loop starts at index i
  if (i < n) {
    transport_rhs_scalar(r + i - 1, s + i - 1, src + i - 1, n - i + 1, k, inv_dx, dr + i - 1,
                         ds + i - 1);
  }
}

void euler_update_avx2(const double* w, const double* rhs, std::size_t n, double dt,
                       double* out) {
  if (n < 2) return;
  const __m256d dtv = _mm256_set1_pd(dt);
  std::size_t i = 1;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(w + i),
                                    _mm256_mul_pd(dtv, _mm256_loadu_pd(rhs + i)));
    _mm256_storeu_pd(out + i, v);
  }
  if (i < n) euler_update_scalar(w + i - 1, rhs + i - 1, n - i + 1, dt, out + i - 1);
}

void heun_average_avx2(const double* w, const double* w_stage, const double* rhs, std::size_t n,
                       double dt, double* out) {
  if (n < 2) return;
  const __m256d dtv = _mm256_set1_pd(dt);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 1;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d stage = _mm256_add_pd(_mm256_loadu_pd(w_stage + i),
                                        _mm256_mul_pd(dtv, _mm256_loadu_pd(rhs + i)));
    const __m256d v = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(w + i), stage));
    _mm256_storeu_pd(out + i, v);
  }
  if (i < n) {
    heun_average_scalar(w + i - 1, w_stage + i - 1, rhs + i - 1, n - i + 1, dt, out + i - 1);
  }
}

CharBounds char_bounds_avx2(const double* r, const double* s, std::size_t n, double k) {
  const __m256d kv = _mm256_set1_pd(k);
  const __m256d pinf = _mm256_set1_pd(INFINITY);
  const __m256d ninf = _mm256_set1_pd(-INFINITY);
  __m256d gmin = pinf, l1min = pinf, l2max = ninf;
  __m256d nan_any = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ri = _mm256_loadu_pd(r + i);
    const __m256d si = _mm256_loadu_pd(s + i);
    const __m256d gap = _mm256_sub_pd(si, ri);
    const __m256d u = _mm256_add_pd(ri, si);
    const __m256d c = _mm256_mul_pd(kv, gap);
    const __m256d l1 = _mm256_sub_pd(u, c);
    const __m256d l2 = _mm256_add_pd(u, c);
    const __m256d bad =
        _mm256_or_pd(_mm256_cmp_pd(l1, l1, _CMP_UNORD_Q), _mm256_cmp_pd(l2, l2, _CMP_UNORD_Q));
    nan_any = _mm256_or_pd(nan_any, bad);
    gmin = _mm256_min_pd(gmin, _mm256_blendv_pd(gap, pinf, bad));
    l1min = _mm256_min_pd(l1min, _mm256_blendv_pd(l1, pinf, bad));
    l2max = _mm256_max_pd(l2max, _mm256_blendv_pd(l2, ninf, bad));
  }
  CharBounds b = char_bounds_scalar(r + i, s + i, n - i, k);
  const double vg = hmin(gmin), v1 = hmin(l1min), v2 = hmax(l2max);
  b.min_gap = vg < b.min_gap ? vg : b.min_gap;
  b.min_lambda1 = v1 < b.min_lambda1 ? v1 : b.min_lambda1;
  b.max_lambda2 = v2 > b.max_lambda2 ? v2 : b.max_lambda2;
  b.has_nan = b.has_nan || _mm256_movemask_pd(nan_any) != 0;
  return b;
}

}  // namespace fanno::simd::detail
