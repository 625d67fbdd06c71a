#include "incwb/simd/kernels.hpp"
#include "incwb/util/rng.hpp"

#include <doctest.h>

#include <cstring>
#include <vector>

using namespace incwb;
using simd::Isa;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  const auto avail = simd::available_isas();
  if (avail[1]) out.push_back(Isa::Avx2);
  if (avail[2]) out.push_back(Isa::Neon);
  return out;
}

}  // namespace

TEST_CASE("scalar kernels on hand-sized inputs") {
  const auto& k = simd::kernels(Isa::Scalar);
  // Two points (1,2) and (3,4), column-major.
  const double x[] = {1, 3, 2, 4};
  const double c[] = {0.5, 1, -1};
  double out[2];
  k.affine_eval(x, 2, 2, c, out);
  CHECK(out[0] == -0.5);
  CHECK(out[1] == -0.5);

  const double w[] = {2, 1};
  double sums[2];
  k.weighted_column_sums(x, 2, 2, w, sums);
  CHECK(sums[0] == 5.0);
  CHECK(sums[1] == 8.0);

  const double coeffs[] = {-2, 0, 1};  // t^2 - 2
  const double t[] = {0, 2, -3};
  double h[3];
  k.horner_eval(coeffs, 2, t, 3, h);
  CHECK(h[0] == -2.0);
  CHECK(h[1] == 2.0);
  CHECK(h[2] == 7.0);

  const double v[] = {-1, 0, 1e-12, 3, -4};
  std::size_t counts[3];
  k.tally_signs(v, 5, 1e-9, counts);
  CHECK(counts[0] == 2);
  CHECK(counts[1] == 2);
  CHECK(counts[2] == 1);
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
  Rng rng(101);
  const auto& ref = simd::kernels(Isa::Scalar);
  for (Isa isa : vector_isas()) {
    CAPTURE(simd::isa_name(isa));
    const auto& vk = simd::kernels(isa);
    for (std::size_t n : {0U, 1U, 3U, 4U, 5U, 17U, 64U, 1023U}) {
      for (std::size_t dim : {1U, 2U, 9U, 14U}) {
        const auto x = random_vector(rng, n * dim, 10.0);
        const auto c = random_vector(rng, dim + 1, 1.0);
        const auto w = random_vector(rng, n, 0.1);
        std::vector<double> a(n), b(n), sa(dim), sb(dim);
        ref.affine_eval(x.data(), n, dim, c.data(), a.data());
        vk.affine_eval(x.data(), n, dim, c.data(), b.data());
        CHECK(bit_equal(a, b));
        ref.weighted_column_sums(x.data(), n, dim, w.data(), sa.data());
        vk.weighted_column_sums(x.data(), n, dim, w.data(), sb.data());
        CHECK(bit_equal(sa, sb));
      }
      for (std::size_t degree : {0U, 1U, 5U, 12U}) {
        const auto coeffs = random_vector(rng, degree + 1, 1.0);
        const auto t = random_vector(rng, n, 2.0);
        std::vector<double> a(n), b(n);
        ref.horner_eval(coeffs.data(), degree, t.data(), n, a.data());
        vk.horner_eval(coeffs.data(), degree, t.data(), n, b.data());
        CHECK(bit_equal(a, b));
      }
      auto v = random_vector(rng, n, 1.0);
      for (std::size_t i = 0; i < n; i += 7) v[i] = 0.0;
      std::size_t ca[3], cb[3];
      ref.tally_signs(v.data(), n, 1e-3, ca);
      vk.tally_signs(v.data(), n, 1e-3, cb);
      CHECK(ca[0] == cb[0]);
      CHECK(ca[1] == cb[1]);
      CHECK(ca[2] == cb[2]);
    }
  }
}

TEST_CASE("dispatch reports a usable instruction set") {
  const Isa isa = simd::active_isa();
  CHECK_NOTHROW(simd::kernels(isa));
  CHECK(simd::available_isas()[0]);
}
