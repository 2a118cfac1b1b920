#include "olsen/kernels.hpp"

#if defined(OLSEN_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace olsen::kernels::avx2 {

namespace {

// One 4-wide row per table entry; only usable when fanout == 4.
inline void expand_fanout4(const double* parent, std::size_t n_parent, const double* table,
                           std::size_t period, double* child) {
  // period is 1, 2 or 4 in practice; load the rows once.
  __m256d rows[4];
  for (std::size_t r = 0; r < period; ++r) rows[r] = _mm256_loadu_pd(table + 4 * r);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n_parent; ++i) {
    const __m256d p = _mm256_set1_pd(parent[i]);
    _mm256_storeu_pd(child + 4 * i, _mm256_add_pd(p, rows[row]));
    if (++row == period) row = 0;
  }
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

}  // namespace

void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child) {
  if (fanout == 4 && period <= 4) {
    expand_fanout4(parent, n_parent, table, period, child);
    return;
  }
  scalar::expand_cyclic(parent, n_parent, table, period, fanout, child);
}

double max_abs_adjacent_diff(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 < n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 1);
    const __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(b, a));
    best = _mm256_max_pd(best, d);
  }
  double out = hmax(best);
  for (; i + 1 < n; ++i) {
    const double d = std::fabs(x[i + 1] - x[i]);
    if (d > out) out = d;
  }
  return out;
}

double reduce_max(const double* x, std::size_t n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  if (n < 4) return scalar::reduce_max(x, n);
  __m256d best = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, _mm256_loadu_pd(x + i));
  if (i < n) best = _mm256_max_pd(best, _mm256_loadu_pd(x + n - 4));
  return hmax(best);
}

}  // namespace olsen::kernels::avx2

#endif  // OLSEN_HAVE_AVX2
