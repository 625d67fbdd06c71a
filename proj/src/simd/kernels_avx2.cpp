#include "incwb/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace incwb::simd {
namespace {

void affine_eval(const double* x, std::size_t n, std::size_t dim, const double* c, double* out) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d acc = _mm256_set1_pd(c[0]);
    for (std::size_t k = 0; k < dim; ++k)
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(c[k + 1]), _mm256_loadu_pd(x + k * n + i)));
    _mm256_storeu_pd(out + i, acc);
  }
  for (std::size_t i = n4; i < n; ++i) {
    double acc = c[0];
    for (std::size_t k = 0; k < dim; ++k) acc = acc + c[k + 1] * x[k * n + i];
    out[i] = acc;
  }
}

double blocked_sum(const double* x, const double* w, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d lane = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    lane = _mm256_add_pd(lane, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)));
  alignas(32) double l[4];
  _mm256_store_pd(l, lane);
  double s = (l[0] + l[1]) + (l[2] + l[3]);
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * x[i];
  return s;
}

void weighted_column_sums(const double* x, std::size_t n, std::size_t dim, const double* w, double* out) {
  for (std::size_t k = 0; k < dim; ++k) out[k] = blocked_sum(x + k * n, w, n);
}

void horner_eval(const double* coeffs, std::size_t degree, const double* t, std::size_t n, double* out) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d tv = _mm256_loadu_pd(t + i);
    __m256d acc = _mm256_set1_pd(coeffs[degree]);
    for (std::size_t k = degree; k-- > 0;) acc = _mm256_add_pd(_mm256_mul_pd(acc, tv), _mm256_set1_pd(coeffs[k]));
    _mm256_storeu_pd(out + i, acc);
  }
  for (std::size_t i = n4; i < n; ++i) {
    double acc = coeffs[degree];
    for (std::size_t k = degree; k-- > 0;) acc = acc * t[i] + coeffs[k];
    out[i] = acc;
  }
}

void tally_signs(const double* v, std::size_t n, double eps, std::size_t* counts) {
  const __m256d lo = _mm256_set1_pd(-eps), hi = _mm256_set1_pd(eps);
  std::size_t neg = 0, pos = 0;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    neg += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(x, lo, _CMP_LT_OQ))));
    pos += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(x, hi, _CMP_GT_OQ))));
  }
  for (std::size_t i = n4; i < n; ++i) {
    if (v[i] < -eps)
      ++neg;
    else if (v[i] > eps)
      ++pos;
  }
  counts[0] = neg;
  counts[2] = pos;
  counts[1] = n - neg - pos;
}

constexpr KernelTable kTable{affine_eval, weighted_column_sums, horner_eval, tally_signs};

}  // namespace

const KernelTable* detail::avx2_table() { return &kTable; }

}  // namespace incwb::simd

#else

namespace incwb::simd {
const KernelTable* detail::avx2_table() { return nullptr; }
}  // namespace incwb::simd

#endif
