#include "incwb/incidence/incidence.hpp"

#include <cmath>
#include <gmpxx.h>
#include <limits>
#include <stdexcept>

namespace incwb {

BoundReport evaluate_bounds(std::uint64_t m, std::uint64_t n, std::size_t k, std::size_t s, long double epsilon,
                            std::uint64_t measured, long double constant) {
  if (m < 1 || n < 1) throw std::invalid_argument("evaluate_bounds: m and n must be at least 1");
  if (k < 1) throw std::invalid_argument("evaluate_bounds: k must be at least 1");
  if (!(epsilon >= 0 && epsilon < 1)) throw std::invalid_argument("evaluate_bounds: epsilon must lie in [0, 1)");
  BoundReport r;
  r.m = m;
  r.n = n;
  r.k = k;
  r.s = s;
  r.epsilon = epsilon;
  r.constant = constant;
  r.measured = measured;
  r.significand_bits = std::numeric_limits<long double>::digits;

  const long double lm = static_cast<long double>(m), ln = static_cast<long double>(n);
  const long double kk = static_cast<long double>(k);
  const long double a = kk / (2 * kk - 1), b = (2 * kk - 2) / (2 * kk - 1);
  r.ps_first_term = std::pow(lm, a) * std::pow(ln, b);
  r.ps_value = r.ps_first_term + lm + ln;
  r.ps_complex_first_term = constant * std::pow(lm, a + epsilon) * std::pow(ln, b);
  r.ps_complex_value = r.ps_complex_first_term + lm + ln;
  r.kst_value = lm * std::pow(ln, 1 - 1 / kk) + ln;
  const long double I = static_cast<long double>(measured);
  r.ratio_ps = I / r.ps_value;
  r.ratio_ps_complex = I / r.ps_complex_value;
  r.ratio_kst = I / r.kst_value;

  mpz_class mk;
  mpz_ui_pow_ui(mk.get_mpz_t(), m, k);
  r.kst_regime = mpz_class(std::to_string(n)) <= mk;
  return r;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["schema"] = "incwb.bounds/1";
  j["m"] = r.m;
  j["n"] = r.n;
  j["k"] = r.k;
  j["s"] = r.s;
  j["epsilon"] = static_cast<double>(r.epsilon);
  j["constant"] = static_cast<double>(r.constant);
  j["measured_incidences"] = r.measured;
  j["ps_first_term"] = static_cast<double>(r.ps_first_term);
  j["ps_value"] = static_cast<double>(r.ps_value);
  j["ps_complex_first_term"] = static_cast<double>(r.ps_complex_first_term);
  j["ps_complex_value"] = static_cast<double>(r.ps_complex_value);
  j["kst_value"] = static_cast<double>(r.kst_value);
  j["ratio_ps"] = static_cast<double>(r.ratio_ps);
  j["ratio_ps_complex"] = static_cast<double>(r.ratio_ps_complex);
  j["ratio_kst"] = static_cast<double>(r.ratio_kst);
  j["kst_regime"] = r.kst_regime;
  j["significand_bits"] = r.significand_bits;
  return j;
}

}  // namespace incwb
