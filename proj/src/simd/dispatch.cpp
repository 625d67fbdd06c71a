#include "incwb/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace incwb::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool forced_scalar() {
  const char* v = std::getenv("INCWB_FORCE_SCALAR");
  return v != nullptr && *v != '\0' && *v != '0';
}

Isa detect() {
  if (forced_scalar()) return Isa::Scalar;
  if (detail::avx2_table() != nullptr && cpu_has_avx2()) return Isa::Avx2;
  if (detail::neon_table() != nullptr) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::array<bool, 3> available_isas() {
  return {true, detail::avx2_table() != nullptr && cpu_has_avx2(), detail::neon_table() != nullptr};
}

const KernelTable& kernels(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return detail::scalar_table();
    case Isa::Avx2:
      if (detail::avx2_table() != nullptr && cpu_has_avx2()) return *detail::avx2_table();
      break;
    case Isa::Neon:
      if (detail::neon_table() != nullptr) return *detail::neon_table();
      break;
  }
  throw std::invalid_argument("simd::kernels: instruction set unavailable on this machine");
}

}  // namespace incwb::simd
