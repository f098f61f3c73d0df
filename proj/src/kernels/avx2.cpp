#include <immintrin.h>

#include "appemo/kernels.hpp"

namespace appemo::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

// Two independent accumulators hide the add latency; lanes are combined in a
// fixed order so results are reproducible on a given machine.

double sum(std::span<const double> x) {
  const double* p = x.data();
  const std::size_t n = x.size();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(p + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(p + i));
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += p[i];
  return s;
}

double sum_sq_dev(std::span<const double> x, double center) {
  const double* p = x.data();
  const std::size_t n = x.size();
  const __m256d c = _mm256_set1_pd(center);
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(p + i), c);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(p + i + 4), c);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(d0, d0));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(d1, d1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), c);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(d, d));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) {
    const double d = p[i] - center;
    s += d * d;
  }
  return s;
}

double sum_cross_dev(std::span<const double> x, std::span<const double> y,
                     double cx, double cy) {
  const double* px = x.data();
  const double* py = y.data();
  const std::size_t n = x.size() < y.size() ? x.size() : y.size();
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d dx0 = _mm256_sub_pd(_mm256_loadu_pd(px + i), vcx);
    const __m256d dy0 = _mm256_sub_pd(_mm256_loadu_pd(py + i), vcy);
    const __m256d dx1 = _mm256_sub_pd(_mm256_loadu_pd(px + i + 4), vcx);
    const __m256d dy1 = _mm256_sub_pd(_mm256_loadu_pd(py + i + 4), vcy);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(dx0, dy0));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(dx1, dy1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), vcy);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(dx, dy));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += (px[i] - cx) * (py[i] - cy);
  return s;
}

}  // namespace appemo::kernels::avx2
