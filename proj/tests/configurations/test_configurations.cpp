#include "incwb/configurations/configurations.hpp"
#include "incwb/exact/parse.hpp"
#include "incwb/incidence/incidence.hpp"
#include "golden.hpp"

#include <doctest.h>

using namespace incwb;

namespace {

const std::vector<std::string> kZ{"z1", "z2"};
ComplexPoly cx(const char* s) { return parse_polynomial(s, kZ); }
const std::vector<std::string> kReal4{"x1", "y1", "x2", "y2"};

// Incidences of the index lines j2 = s j1 + t (s, t < b) with the index grid a x b.
std::size_t index_line_oracle(long a, long b) {
  std::size_t total = 0;
  for (long s = 0; s < b; ++s)
    for (long t = 0; t < b; ++t)
      for (long j1 = 0; j1 < a; ++j1)
        if (s * j1 + t < b) ++total;
  return total;
}

void check_kst_on_certified(const Configuration& c, std::size_t k, std::size_t s) {
  const auto M = build_matrix(c);
  const auto cert = certify_dof(M, k, s);
  REQUIRE(cert.status == DofStatus::Certified);
  const auto kst = kst_double_count(M, k, s);
  CHECK(kst.holds);
}

}  // namespace

TEST_CASE("gen_grid_lines sizes and incidences") {
  const auto one = gen_grid_lines(1);
  CHECK(one.m() == 2);
  CHECK(one.n() == 1);
  CHECK(build_matrix(one).incidences() == 1);
  CHECK(build_matrix(gen_grid_lines(2)).incidences() == 16);
  for (std::size_t N = 1; N <= 8; ++N) {
    const auto c = gen_grid_lines(N);
    CHECK(c.m() == 2 * N * N * N);
    CHECK(c.n() == N * N * N);
    const auto M = build_matrix(c, {4, false});
    CHECK(M.incidences() == N * N * N * N);
    // Every line meets exactly N grid points.
    for (const auto& pts : M.curve_points()) CHECK(pts.size() == N);
  }
  CHECK_THROWS_AS(gen_grid_lines(0), std::invalid_argument);
}

TEST_CASE("gen_unit_circles is certified and reproducible") {
  const auto c = gen_unit_circles(4, 0);
  CHECK(c.m() == 16);
  CHECK(c.n() == 16);
  CHECK_FALSE(has_duplicates(c));
  const auto M = build_matrix(c);
  const auto cert = certify_dof(M, 3, 2);
  CHECK(cert.status == DofStatus::Certified);
  CHECK(M.incidences() > 0);
  // Two unit circles share at most 2 points.
  for (std::size_t a = 0; a < c.n(); ++a)
    for (std::size_t b = a + 1; b < c.n(); ++b) {
      std::size_t shared = 0;
      for (std::size_t i = 0; i < c.m(); ++i)
        if (M.contains(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(a)) &&
            M.contains(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(b)))
          ++shared;
      CHECK(shared <= 2);
    }
  const std::string json = to_json(c).dump(2) + "\n";
  CHECK(json == to_json(gen_unit_circles(4, 0)).dump(2) + "\n");
  CHECK(json == testing::golden("unit_circles_n4_seed0.json", json));
  CHECK(to_json(gen_unit_circles(4, 1)).dump() != to_json(c).dump());
}

TEST_CASE("complex lines product examples") {
  const Progression zero_one{GaussianRational(0), GaussianRational(1), 2};
  const auto c = complex_lines_product(zero_one, zero_one);
  CHECK(c.m() == 4);
  const auto M = build_matrix(c);
  // z2 = z1 is the image of s = 1, t = 0, curve index 1 * 2 + 0.
  CHECK(c.curves[2] == cx("z2 - z1"));
  CHECK(M.curve_points()[2].size() == 2);

  for (std::size_t N : {2, 4, 8}) {
    const auto g = gen_complex_lines_product(N, N, 0);
    CHECK(g.n() == N * N);
    const auto G = build_matrix(g, {1, true});
    CHECK(G.incidences() == index_line_oracle(static_cast<long>(N), static_cast<long>(N)));
    CHECK(certify_dof(G, 2, 1).status == DofStatus::Certified);
  }
  const auto g8 = gen_complex_lines_product(8, 8, 0);
  const std::string text = to_json(g8).dump(2) + "\n";
  CHECK(text == testing::golden("complex_lines_8x8_seed0.json", text));
  CHECK(build_matrix(g8).incidences() == 177);
  CHECK(index_line_oracle(3, 5) == build_matrix(gen_complex_lines_product(3, 5, 7)).incidences());
}

TEST_CASE("gen_leaf_family examples") {
  const auto lin = gen_leaf_family(cx("z1"), 3, 0);
  CHECK(lin.surface.P == parse_real_polynomial("y2 - y1", kReal4));
  const auto sq = gen_leaf_family(cx("z1^2"), 3, 0);
  CHECK(sq.surface.P == parse_real_polynomial("y2 - 2*x1*y1", kReal4));

  for (const char* g : {"z1", "z1^2", "z1^3 + i*z1"}) {
    const auto fam = gen_leaf_family(cx(g), 6, 4);
    CHECK(fam.config.n() == 6);
    CHECK(fam.config.m() == 60);
    const auto M = build_matrix(fam.config, {2, true});
    // Distinct leaves are disjoint, so every sample lies on exactly one leaf.
    for (const auto& curves : M.point_curves()) CHECK(curves.size() == 1);
    for (std::size_t j = 0; j < fam.config.n(); ++j) {
      const ComplexCurve leaf(fam.config.curves[j]);
      CHECK(containment_check(fam.surface, leaf).verdict == Containment::Contained);
      std::vector<Point4> samples;
      for (std::uint32_t i : M.curve_points()[j]) samples.push_back(iota(ComplexPoint2{fam.config.points[i][0], fam.config.points[i][1]}));
      for (const auto& rec : leaf_tangency_check(fam.surface, leaf, samples)) CHECK(rec.status == TangencyStatus::Pass);
      for (const auto& p : samples) CHECK(bracket_defect(fam.surface, p).raw.is_zero());
    }
  }
  // Repeated z1 draws on one leaf must not shrink the sample set.
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(gen_leaf_family(cx("z1^2"), 10, seed).config.m() == 100);
  CHECK_THROWS_AS(gen_leaf_family(cx("z2"), 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_leaf_family(cx("z1"), 0, 0), std::invalid_argument);
}

TEST_CASE("gen_random reproducibility and null incidences") {
  RandomSpec spec;
  spec.m = 40;
  spec.n = 12;
  spec.degree = 3;
  CHECK(to_json(gen_random(spec)).dump() == to_json(gen_random(spec)).dump());
  CHECK(build_matrix(gen_random(spec)).incidences() == 0);
  spec.field = GroundField::C2;
  CHECK(build_matrix(gen_random(spec)).incidences() == 0);
  spec.n = 0;
  CHECK(build_matrix(gen_random(spec)).incidences() == 0);
}

TEST_CASE("K-S-T inequality on every certified generator output") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    check_kst_on_certified(gen_grid_lines(1 + seed % 5), 2, 1);
    check_kst_on_certified(gen_unit_circles(3 + seed % 3, seed), 3, 2);
    check_kst_on_certified(gen_complex_lines_product(3 + seed % 4, 3 + seed % 3, seed), 2, 1);
  }
}

TEST_CASE("generate dispatches on the generator name") {
  CHECK(to_json(generate({"grid-lines", Json{{"N", 3}}, 0})).dump() == to_json(gen_grid_lines(3)).dump());
  const auto leaf = generate({"leaf", Json{{"g", "z1^2"}, {"count", 5}}, 0});
  CHECK(leaf.n() == 5);
  CHECK(leaf.hypersurface.has_value());
  CHECK_THROWS_AS(generate({"grid-lines", Json::object(), 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({"grid-lines", Json{{"N", 0}}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate({"hexagons", Json::object(), 0}), std::invalid_argument);
}
