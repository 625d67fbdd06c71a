#include "incwb/incidence/configuration.hpp"

#include <set>
#include <stdexcept>

namespace incwb {

std::string_view to_string(GroundField f) { return f == GroundField::R2 ? "R2" : "C2"; }

GroundField ground_field_from_string(std::string_view s) {
  if (s == "R2") return GroundField::R2;
  if (s == "C2") return GroundField::C2;
  throw std::invalid_argument("ground field must be \"R2\" or \"C2\"");
}

void validate(const Configuration& c) {
  const bool real = c.field == GroundField::R2;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& p = c.points[i];
    if (p.size() != 2) throw std::invalid_argument("point " + std::to_string(i) + " does not have 2 coordinates");
    if (real && !(p[0].is_real() && p[1].is_real()))
      throw std::invalid_argument("point " + std::to_string(i) + " is not real in an R2 configuration");
  }
  for (std::size_t j = 0; j < c.curves.size(); ++j) {
    const auto& f = c.curves[j];
    if (f.num_vars() != 2) throw std::invalid_argument("curve " + std::to_string(j) + " is not in 2 variables");
    if (f.is_zero()) throw std::invalid_argument("curve " + std::to_string(j) + " is the zero polynomial");
    if (real && !as_real(f)) throw std::invalid_argument("curve " + std::to_string(j) + " has non-real coefficients");
  }
  if (c.hypersurface && c.hypersurface->num_vars() != 4)
    throw std::invalid_argument("hypersurface must be a polynomial in 4 real variables");
}

namespace {

std::string point_key(const std::vector<GaussianRational>& p) {
  std::string key;
  for (const auto& z : p) key += z.re.to_string() + "," + z.im.to_string() + ";";
  return key;
}

std::string curve_key(const ComplexPoly& f) { return to_json(primitive(f)).dump(); }

}  // namespace

Configuration deduplicate(Configuration c) {
  std::set<std::string> seen;
  std::vector<std::vector<GaussianRational>> points;
  for (auto& p : c.points)
    if (seen.insert(point_key(p)).second) points.push_back(std::move(p));
  seen.clear();
  std::vector<ComplexPoly> curves;
  for (auto& f : c.curves)
    if (seen.insert(curve_key(f)).second) curves.push_back(std::move(f));
  c.points = std::move(points);
  c.curves = std::move(curves);
  return c;
}

bool has_duplicates(const Configuration& c) {
  const Configuration d = deduplicate(c);
  return d.m() != c.m() || d.n() != c.n();
}

Json to_json(const Configuration& c) {
  const bool real = c.field == GroundField::R2;
  Json j;
  j["schema"] = "incwb.configuration/1";
  j["field"] = std::string(to_string(c.field));
  Json meta;
  meta["generator"] = c.metadata.generator;
  meta["params"] = c.metadata.params;
  meta["seed"] = c.metadata.seed;
  j["metadata"] = std::move(meta);
  j["m"] = c.m();
  j["n"] = c.n();
  Json points = Json::array();
  for (const auto& p : c.points) {
    Json row = Json::array();
    for (const auto& z : p) row.push_back(real ? to_json(z.re) : to_json(z));
    points.push_back(std::move(row));
  }
  j["points"] = std::move(points);
  Json curves = Json::array();
  for (const auto& f : c.curves) curves.push_back(real ? to_json(*as_real(f)) : to_json(f));
  j["curves"] = std::move(curves);
  if (c.hypersurface) j["hypersurface"] = to_json(*c.hypersurface);
  return j;
}

Configuration configuration_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
  if (j.value("schema", std::string()) != "incwb.configuration/1")
    throw std::invalid_argument("configuration schema must be \"incwb.configuration/1\"");
  Configuration c;
  c.field = ground_field_from_string(j.at("field").get<std::string>());
  if (j.contains("metadata")) {
    const Json& meta = j.at("metadata");
    c.metadata.generator = meta.value("generator", std::string());
    if (meta.contains("params")) c.metadata.params = meta.at("params");
    c.metadata.seed = meta.value("seed", std::uint64_t{0});
  }
  for (const auto& row : j.at("points")) {
    std::vector<GaussianRational> p;
    for (const auto& z : row) p.push_back(gaussian_from_json(z));
    c.points.push_back(std::move(p));
  }
  for (const auto& f : j.at("curves")) c.curves.push_back(complex_poly_from_json(f));
  if (j.contains("hypersurface")) c.hypersurface = real_poly_from_json(j.at("hypersurface"));
  validate(c);
  if (j.contains("m") && j.at("m").get<std::size_t>() != c.m())
    throw std::invalid_argument("configuration field 'm' disagrees with the point list");
  if (j.contains("n") && j.at("n").get<std::size_t>() != c.n())
    throw std::invalid_argument("configuration field 'n' disagrees with the curve list");
  return c;
}

}  // namespace incwb
