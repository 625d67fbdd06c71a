#pragma once

#include <array>
#include <cstddef>
#include <string_view>

// Double-precision kernels for the partition search. Every variant produces
// bit-identical results: per-point accumulation runs in the same order, and
// reductions over points use four interleaved partial sums combined as
// (s0 + s1) + (s2 + s3), followed by the tail in index order.

namespace incwb::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Instruction set used by the dispatching entry points. Honors the
/// INCWB_FORCE_SCALAR environment variable.
Isa active_isa();
/// Variants compiled into this binary and supported by the running CPU.
std::array<bool, 3> available_isas();

struct KernelTable {
  /// out[i] = c[0] + sum_k c[k+1] * x[k*n + i]   (coordinates column-major)
  void (*affine_eval)(const double* x, std::size_t n, std::size_t dim, const double* c, double* out);
  /// out[k] = sum_i w[i] * x[k*n + i]
  void (*weighted_column_sums)(const double* x, std::size_t n, std::size_t dim, const double* w, double* out);
  /// out[i] = coeffs[deg] * t^deg + ... + coeffs[0] at t = t[i], Horner order.
  void (*horner_eval)(const double* coeffs, std::size_t degree, const double* t, std::size_t n, double* out);
  /// counts = {#(v < -eps), #(|v| <= eps), #(v > eps)}
  void (*tally_signs)(const double* v, std::size_t n, double eps, std::size_t* counts);
};

const KernelTable& kernels(Isa isa);
inline const KernelTable& kernels() { return kernels(active_isa()); }

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();
}  // namespace detail

}  // namespace incwb::simd
