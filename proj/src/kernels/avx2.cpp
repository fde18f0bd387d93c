// Compiled with -mavx2 -mfma; only reached through the dispatch table after
// a CPU feature check.
#include "sstqp/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace sstqp::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double quad_form(const double* q, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    s += x[i] * dot(q + i * n, x, n);
  }
  return s;
}

double min_value(const double* a, std::size_t n) {
  std::size_t i = 0;
  double m = std::numeric_limits<double>::infinity();
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(a);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
    m = hmin(acc);
  }
  for (; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace sstqp::kernels::avx2
