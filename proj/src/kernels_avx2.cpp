#include "streampack/kernels.hpp"

#include <immintrin.h>

#include <cassert>
#include <limits>

namespace streampack::kernels::avx2 {

namespace {

// Lane order (0+2)+(1+3), matching the scalar reference.
inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (s0+s2, s1+s3)
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  const double a = _mm_cvtsd_f64(m);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(m, m));
  return a > b ? a : b;
}

}  // namespace

void add(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  std::size_t i = 0;
  for (; i + 4 <= acc.size(); i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(&acc[i]), _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&acc[i], r);
  }
  for (; i < acc.size(); ++i) acc[i] += x[i];
}

void sub(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  std::size_t i = 0;
  for (; i + 4 <= acc.size(); i += 4) {
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(&acc[i]), _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&acc[i], r);
  }
  for (; i < acc.size(); ++i) acc[i] -= x[i];
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  assert(y.size() == x.size());
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= y.size(); i += 4) {
    const __m256d prod = _mm256_mul_pd(a, _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&y[i], _mm256_add_pd(_mm256_loadu_pd(&y[i]), prod));
  }
  for (; i < y.size(); ++i) y[i] += alpha * x[i];
}

double max_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double best = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (a.size() >= 4) {
    __m256d m = _mm256_set1_pd(best);
    for (; i + 4 <= a.size(); i += 4)
      m = _mm256_max_pd(m, _mm256_add_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    best = hmax(m);
  }
  for (; i < a.size(); ++i) {
    const double v = a[i] + b[i];
    if (v > best) best = v;
  }
  return best;
}

double max_elem(std::span<const double> a) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (a.size() >= 4) {
    __m256d m = _mm256_set1_pd(best);
    for (; i + 4 <= a.size(); i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(&a[i]));
    best = hmax(m);
  }
  for (; i < a.size(); ++i)
    if (a[i] > best) best = a[i];
  return best;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4)
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  double tail = 0.0;
  for (; i < a.size(); ++i) tail += a[i] * b[i];
  return hsum(s) + tail;
}

double sum(std::span<const double> a) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) s = _mm256_add_pd(s, _mm256_loadu_pd(&a[i]));
  double tail = 0.0;
  for (; i < a.size(); ++i) tail += a[i];
  return hsum(s) + tail;
}

}  // namespace streampack::kernels::avx2
