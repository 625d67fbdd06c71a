#include "incwb/simd/kernels.hpp"

namespace incwb::simd {
namespace {

void affine_eval(const double* x, std::size_t n, std::size_t dim, const double* c, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = c[0];
    for (std::size_t k = 0; k < dim; ++k) acc = acc + c[k + 1] * x[k * n + i];
    out[i] = acc;
  }
}

// Mirrors the four-lane layout of the vector variants.
double blocked_sum(const double* x, const double* w, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4)
    for (std::size_t l = 0; l < 4; ++l) lane[l] = lane[l] + w[i + l] * x[i + l];
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = n4; i < n; ++i) s = s + w[i] * x[i];
  return s;
}

void weighted_column_sums(const double* x, std::size_t n, std::size_t dim, const double* w, double* out) {
  for (std::size_t k = 0; k < dim; ++k) out[k] = blocked_sum(x + k * n, w, n);
}

void horner_eval(const double* coeffs, std::size_t degree, const double* t, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = coeffs[degree];
    for (std::size_t k = degree; k-- > 0;) acc = acc * t[i] + coeffs[k];
    out[i] = acc;
  }
}

void tally_signs(const double* v, std::size_t n, double eps, std::size_t* counts) {
  counts[0] = counts[1] = counts[2] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] < -eps)
      ++counts[0];
    else if (v[i] > eps)
      ++counts[2];
    else
      ++counts[1];
  }
}

constexpr KernelTable kTable{affine_eval, weighted_column_sums, horner_eval, tally_signs};

}  // namespace

const KernelTable& detail::scalar_table() { return kTable; }

}  // namespace incwb::simd
