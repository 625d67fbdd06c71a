#include "incwb/exact/serialize.hpp"

#include <stdexcept>

namespace incwb {

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const GaussianRational& z) {
  Json j;
  j["re"] = z.re.to_string();
  j["im"] = z.im.to_string();
  return j;
}

namespace {

template <ExactField F>
Json poly_to_json(const MultiPoly<F>& p) {
  Json j;
  j["field"] = std::string(FieldTraits<F>::name);
  j["vars"] = p.num_vars();
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exp"] = m;
    t["coef"] = to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

template <ExactField F, class CoefReader>
MultiPoly<F> poly_from_json(const Json& j, CoefReader read) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    throw std::invalid_argument("polynomial JSON needs 'vars' and 'terms'");
  const auto nv = j.at("vars").get<std::size_t>();
  MultiPoly<F> p(nv);
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<Monomial>();
    if (exp.size() != nv) throw std::invalid_argument("polynomial JSON: exponent length differs from 'vars'");
    p.add_term(exp, read(t.at("coef")));
  }
  return p;
}

}  // namespace

Json to_json(const RealPoly& p) { return poly_to_json(p); }
Json to_json(const ComplexPoly& p) { return poly_to_json(p); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational must be a \"num/den\" string");
}

GaussianRational gaussian_from_json(const Json& j) {
  if (j.is_object()) {
    return {j.contains("re") ? rational_from_json(j.at("re")) : Rational(0),
            j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  }
  return GaussianRational(rational_from_json(j));
}

RealPoly real_poly_from_json(const Json& j) {
  if (j.contains("field") && j.at("field") != "Q") throw std::invalid_argument("expected a polynomial over Q");
  return poly_from_json<Rational>(j, [](const Json& c) {
    const GaussianRational z = gaussian_from_json(c);
    if (!z.is_real()) throw std::invalid_argument("non-real coefficient in a polynomial over Q");
    return z.re;
  });
}

ComplexPoly complex_poly_from_json(const Json& j) {
  return poly_from_json<GaussianRational>(j, [](const Json& c) { return gaussian_from_json(c); });
}

AnyPoly any_poly_from_json(const Json& j) {
  const std::string field = j.value("field", std::string("Q"));
  if (field == "Q") return real_poly_from_json(j);
  if (field == "Q(i)") return complex_poly_from_json(j);
  throw std::invalid_argument("unknown polynomial field '" + field + "'");
}

}  // namespace incwb
