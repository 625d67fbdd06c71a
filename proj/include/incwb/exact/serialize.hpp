#pragma once

#include "incwb/exact/multipoly.hpp"

#include <json.hpp>

#include <string_view>
#include <variant>

namespace incwb {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const GaussianRational& z);
/// {"field": "Q"|"Q(i)", "vars": d, "terms": [{"exp": [...], "coef": ...}]}, terms in canonical order.
Json to_json(const RealPoly& p);
Json to_json(const ComplexPoly& p);

Rational rational_from_json(const Json& j);
/// Accepts a rational string as well as {"re": ..., "im": ...}.
GaussianRational gaussian_from_json(const Json& j);
RealPoly real_poly_from_json(const Json& j);
/// Reads either field; real coefficients are widened.
ComplexPoly complex_poly_from_json(const Json& j);

/// Polynomial with whichever field its JSON declares.
using AnyPoly = std::variant<RealPoly, ComplexPoly>;
AnyPoly any_poly_from_json(const Json& j);

}  // namespace incwb
