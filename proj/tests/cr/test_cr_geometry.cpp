#include "incwb/cr/cr_geometry.hpp"
#include "incwb/exact/matrix.hpp"
#include "incwb/exact/parse.hpp"
#include "random_exact.hpp"

#include <doctest.h>

using namespace incwb;

namespace {

const std::vector<std::string> kReal4{"x1", "y1", "x2", "y2"};
const std::vector<std::string> kComplex2{"z1", "z2"};
RealPoly real4(const char* s) { return parse_real_polynomial(s, kReal4); }
ComplexPoly cx(const char* s) { return parse_polynomial(s, kComplex2); }

const GaussianRational I = GaussianRational::i();

// Oracle: rank of the 2x4 matrix [a; Ja] from its 2x2 minors.
bool independent_by_minors(const CVector4& a) {
  const CVector4 ja{-a[1], a[0], -a[3], a[2]};
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = p + 1; q < 4; ++q)
      if (!(a[p] * ja[q] - a[q] * ja[p]).is_zero()) return true;
  return false;
}

}  // namespace

TEST_CASE("iota examples and round trip") {
  CHECK(iota(ComplexPoint2{GaussianRational(0), GaussianRational(0)}) == Point4{0, 0, 0, 0});
  CHECK(iota(ComplexPoint2{GaussianRational(1, 2), GaussianRational(3, 4)}) == Point4{1, 2, 3, 4});
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const ComplexPoint2 z{testing::random_gaussian(rng), testing::random_gaussian(rng)};
    CHECK(iota_inv(iota(z)) == z);
  }
  CHECK_THROWS_AS(iota_inv(std::vector<Rational>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("realify examples") {
  RealPair p = realify(ComplexCurve(cx("z1")));
  CHECK(p.u == real4("x1"));
  CHECK(p.v == real4("y1"));
  p = realify(ComplexCurve(cx("z1*z2")));
  CHECK(p.u == real4("x1*x2 - y1*y2"));
  CHECK(p.v == real4("x1*y2 + y1*x2"));
  p = realify(ComplexCurve(cx("z1^2 - z2")));
  CHECK(p.u == real4("x1^2 - y1^2 - x2"));
  CHECK(p.v == real4("2*x1*y1 - y2"));
}

TEST_CASE("realify agrees with complex evaluation") {
  Rng rng(5);
  for (const char* text : {"z1*z2", "z1^2 - z2", "(2+i)*z1^3*z2 - i*z2^2 + 1/3"}) {
    const ComplexPoly f = cx(text);
    const RealPair uv = realify(f);
    for (int k = 0; k < 50; ++k) {
      const ComplexPoint2 z{testing::random_gaussian(rng), testing::random_gaussian(rng)};
      const Point4 x = iota(z);
      const GaussianRational lhs = f.evaluate<GaussianRational>(std::span<const GaussianRational>(z));
      const GaussianRational rhs(uv.u.evaluate<Rational>(std::span<const Rational>(x)),
                                 uv.v.evaluate<Rational>(std::span<const Rational>(x)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Cauchy-Riemann check") {
  const auto ok = check_cauchy_riemann(realify(cx("z1*z2")));
  CHECK(ok.holds);
  REQUIRE(ok.residuals.size() == 4);
  for (const auto& r : ok.residuals) CHECK(r.is_zero());
  CHECK_FALSE(check_cauchy_riemann({real4("x1"), real4("-y1")}).holds);
  CHECK_FALSE(check_cauchy_riemann({real4("x1^2"), RealPoly(4)}).holds);
}

TEST_CASE("holomorphic curves satisfy Cauchy-Riemann in gradient form") {
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const auto f = testing::random_poly<GaussianRational>(rng, 2, 6, 8);
    if (f.is_zero()) continue;
    const RealPair uv = realify(f);
    CHECK(check_cauchy_riemann(uv).holds);
    for (int s = 0; s < 5; ++s) {
      const auto x = testing::random_point<Rational>(rng, 4);
      const auto gu = gradient<Rational, Rational>(uv.u, x);
      const auto gv = gradient<Rational, Rational>(uv.v, x);
      // grad v = J grad u, equivalently grad u = -J grad v.
      const auto jgu = j_apply(gu);
      const auto jgv = j_apply(gv);
      for (std::size_t c = 0; c < 4; ++c) {
        CHECK(gv[c] == jgu[c]);
        CHECK(gu[c] == -jgv[c]);
      }
    }
  }
  // The opposite orientation fails already for f = z1.
  const RealPair z1 = realify(cx("z1"));
  const std::vector<Rational> origin{0, 0, 0, 0};
  const auto jgv = j_apply(gradient<Rational, Rational>(z1.v, origin));
  CHECK(gradient<Rational, Rational>(z1.u, origin) != std::vector<Rational>(jgv.begin(), jgv.end()));
}

TEST_CASE("J map") {
  CHECK(j_apply(Point4{1, 0, 0, 0}) == Point4{0, 1, 0, 0});
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto w = testing::random_point<Rational>(rng, 4);
    const auto jw = j_apply(w);
    const auto jjw = j_apply(jw);
    for (std::size_t c = 0; c < 4; ++c) CHECK(jjw[c] == -w[c]);
    CHECK(dot(w, std::vector<Rational>(jw.begin(), jw.end())) == Rational(0));
    const auto z = testing::random_point<GaussianRational>(rng, 4);
    const auto jjz = j_apply(j_apply(z));
    for (std::size_t c = 0; c < 4; ++c) CHECK(jjz[c] == -z[c]);
  }
  CHECK_THROWS_AS(j_apply(std::vector<Rational>{1, 2}), std::invalid_argument);
}

TEST_CASE("classify_cr_vector examples") {
  const GaussianRational one(1), zero(0);
  const CVector4 a{one, -I, zero, zero};
  CHECK(classify_cr_vector(a) == CrClass::DependentPlusI);
  // lambda = +i means a2 = -i a1 and a4 = -i a3, which is membership in Pi1.
  CHECK(a[1] == -(I * a[0]));
  CHECK(classify_cr_vector({one, zero, zero, zero}) == CrClass::Independent);
  CHECK(classify_cr_vector({one, I, zero, zero}) == CrClass::DependentMinusI);
  CHECK(classify_cr_vector({zero, zero, zero, zero}) == CrClass::Zero);
}

TEST_CASE("classify_cr_vector over {0, +-1, +-i}^4 agrees with the minor oracle") {
  const std::array<GaussianRational, 5> vals{GaussianRational(0), GaussianRational(1), GaussianRational(-1), I, -I};
  std::size_t count = 0;
  for (std::size_t code = 0; code < 625; ++code) {
    CVector4 a;
    std::size_t c = code;
    for (auto& x : a) {
      x = vals[c % 5];
      c /= 5;
    }
    const CrClass cls = classify_cr_vector(a);
    const bool zero = code == 0;
    CHECK((cls == CrClass::Zero) == zero);
    if (zero) continue;
    CHECK((cls == CrClass::Independent) == independent_by_minors(a));
    if (cls == CrClass::DependentPlusI || cls == CrClass::DependentMinusI) {
      const GaussianRational lambda = cls == CrClass::DependentPlusI ? I : -I;
      CHECK(a[1] == -(lambda * a[0]));
      CHECK(a[3] == -(lambda * a[2]));
    }
    ++count;
  }
  CHECK(count == 624);
}

TEST_CASE("real vectors are never in Pi1 or Pi2") {
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    CVector4 a;
    for (auto& x : a) x = GaussianRational(testing::random_rational(rng, 2, 2));
    if (classify_cr_vector(a) == CrClass::Zero) continue;
    CHECK(classify_cr_vector(a) == CrClass::Independent);
  }
}

TEST_CASE("Pi planes") {
  const CRPlane p1 = cr_plane(PiTag::Pi1), p2 = cr_plane(PiTag::Pi2);
  auto rows = [](const CRPlane& p) {
    std::vector<std::vector<GaussianRational>> r;
    for (const auto& b : p.basis) r.emplace_back(b.begin(), b.end());
    return r;
  };
  CHECK(same_span(rows(conjugate(p1)), rows(p2)));
  auto both = rows(p1);
  for (auto& r : rows(p2)) both.push_back(r);
  CHECK(rank(ExactMatrix<GaussianRational>::from_rows(both)) == 4);
  for (const auto& b : p1.basis) CHECK(classify_cr_vector(b) == CrClass::DependentPlusI);
  for (const auto& b : p2.basis) CHECK(classify_cr_vector(b) == CrClass::DependentMinusI);
}

TEST_CASE("tangent_contains_pi") {
  CHECK(tangent_contains_pi(real4("y2 - y1"), Point4{0, 0, 0, 0}) == PiContainment::None);
  CHECK(tangent_contains_pi(real4("x2 + y2"), Point4{5, 1, 0, 0}) == PiContainment::None);
  CHECK(tangent_contains_pi(real4("x1^2 + y2^2"), Point4{0, 0, 0, 0}) == PiContainment::Singular);
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto P = testing::random_poly<Rational>(rng, 4, 3, 5);
    if (P.is_zero()) continue;
    const auto x = testing::random_point<Rational>(rng, 4);
    const auto r = tangent_contains_pi(P, Point4{x[0], x[1], x[2], x[3]});
    CHECK(r != PiContainment::Both);
  }
}
