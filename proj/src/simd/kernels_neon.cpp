#include "incwb/simd/kernels.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)
#include <arm_neon.h>

namespace incwb::simd {
namespace {

// Two float64x2 registers stand in for one four-lane block.

void affine_eval(const double* x, std::size_t n, std::size_t dim, const double* c, double* out) {
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    float64x2_t a0 = vdupq_n_f64(c[0]), a1 = a0;
    for (std::size_t k = 0; k < dim; ++k) {
      const float64x2_t ck = vdupq_n_f64(c[k + 1]);
      a0 = vaddq_f64(a0, vmulq_f64(ck, vld1q_f64(x + k * n + i)));
      a1 = vaddq_f64(a1, vmulq_f64(ck, vld1q_f64(x + k * n + i + 2)));
    }
    vst1q_f64(out + i, a0);
    vst1q_f64(out + i + 2, a1);
  }
  for (std::size_t i = n4; i < n; ++i) {
    double acc = c[0];
    for (std::size_t k = 0; k < dim; ++k) acc = acc + c[k + 1] * x[k * n + i];
    out[i] = acc;
  }
}

double blocked_sum(const double* x, const double* w, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  float64x2_t l01 = vdupq_n_f64(0.0), l23 = l01;
  for (std::size_t i = 0; i < n4; i += 4) {
    l01 = vaddq_f64(l01, vmulq_f64(vld1q_f64(w + i), vld1q_f64(x + i)));
    l23 = vaddq_f64(l23, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(x + i + 2)));
  }
  double s = (vgetq_lane_f64(l01, 0) + vgetq_lane_f64(l01, 1)) + (vgetq_lane_f64(l23, 0) + vgetq_lane_f64(l23, 1));
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * x[i];
  return s;
}

void weighted_column_sums(const double* x, std::size_t n, std::size_t dim, const double* w, double* out) {
  for (std::size_t k = 0; k < dim; ++k) out[k] = blocked_sum(x + k * n, w, n);
}

void horner_eval(const double* coeffs, std::size_t degree, const double* t, std::size_t n, double* out) {
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t tv = vld1q_f64(t + i);
    float64x2_t acc = vdupq_n_f64(coeffs[degree]);
    for (std::size_t k = degree; k-- > 0;) acc = vaddq_f64(vmulq_f64(acc, tv), vdupq_n_f64(coeffs[k]));
    vst1q_f64(out + i, acc);
  }
  for (std::size_t i = n2; i < n; ++i) {
    double acc = coeffs[degree];
    for (std::size_t k = degree; k-- > 0;) acc = acc * t[i] + coeffs[k];
    out[i] = acc;
  }
}

void tally_signs(const double* v, std::size_t n, double eps, std::size_t* counts) {
  const float64x2_t lo = vdupq_n_f64(-eps), hi = vdupq_n_f64(eps);
  uint64x2_t neg = vdupq_n_u64(0), pos = neg;
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    const float64x2_t x = vld1q_f64(v + i);
    neg = vsubq_u64(neg, vcltq_f64(x, lo));  // true lanes are all ones, i.e. -1
    pos = vsubq_u64(pos, vcgtq_f64(x, hi));
  }
  std::size_t nn = vgetq_lane_u64(neg, 0) + vgetq_lane_u64(neg, 1);
  std::size_t pp = vgetq_lane_u64(pos, 0) + vgetq_lane_u64(pos, 1);
  for (std::size_t i = n2; i < n; ++i) {
    if (v[i] < -eps)
      ++nn;
    else if (v[i] > eps)
      ++pp;
  }
  counts[0] = nn;
  counts[2] = pp;
  counts[1] = n - nn - pp;
}

constexpr KernelTable kTable{affine_eval, weighted_column_sums, horner_eval, tally_signs};

}  // namespace

const KernelTable* detail::neon_table() { return &kTable; }

}  // namespace incwb::simd

#else

namespace incwb::simd {
const KernelTable* detail::neon_table() { return nullptr; }
}  // namespace incwb::simd

#endif
