#include "incwb/exact/parse.hpp"
#include "incwb/exact/serialize.hpp"
#include "random_exact.hpp"

#include <doctest.h>

using namespace incwb;

TEST_CASE("polynomial JSON schema") {
  const std::vector<std::string> vars{"z1", "z2"};
  const ComplexPoly f = parse_polynomial("z1^2 + i*z2 - 1/2", vars);
  const Json j = to_json(f);
  CHECK(j.dump() ==
        R"J({"field":"Q(i)","vars":2,"terms":[{"exp":[2,0],"coef":{"re":"1/1","im":"0/1"}},)J"
        R"J({"exp":[0,1],"coef":{"re":"0/1","im":"1/1"}},{"exp":[0,0],"coef":{"re":"-1/2","im":"0/1"}}]})J");
  const RealPoly g = parse_real_polynomial("3*z1*z2 - 2", vars);
  CHECK(to_json(g).dump() == R"J({"field":"Q","vars":2,"terms":[{"exp":[1,1],"coef":"3/1"},{"exp":[0,0],"coef":"-2/1"}]})J");
}

TEST_CASE("serialization round trips and is canonical") {
  Rng rng(41);
  for (int k = 0; k < 50; ++k) {
    const auto p = testing::random_poly<GaussianRational>(rng, 3, 5, 7);
    const Json j = to_json(p);
    CHECK(complex_poly_from_json(j) == p);
    CHECK(to_json(complex_poly_from_json(Json::parse(j.dump()))).dump() == j.dump());
  }
}

TEST_CASE("malformed polynomial JSON is rejected") {
  CHECK_THROWS(real_poly_from_json(Json::parse(R"J({"vars":2})J")));
  CHECK_THROWS(real_poly_from_json(Json::parse(R"J({"vars":2,"terms":[{"exp":[1],"coef":"1/1"}]})J")));
  CHECK_THROWS(real_poly_from_json(Json::parse(R"J({"field":"Q(i)","vars":1,"terms":[]})J")));
  CHECK(std::holds_alternative<ComplexPoly>(any_poly_from_json(Json::parse(R"J({"field":"Q(i)","vars":1,"terms":[]})J"))));
}
