#pragma once

#include "incwb/exact/serialize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace incwb {

enum class GroundField { R2, C2 };
std::string_view to_string(GroundField f);
GroundField ground_field_from_string(std::string_view s);

struct ConfigMetadata {
  std::string generator;
  /// Scale parameters exactly as the generator received them.
  Json params = Json::object();
  std::uint64_t seed = 0;
};

/// Points and curves in K^2. Points always carry two Gaussian-rational
/// coordinates and curves are polynomials in (z1, z2); over R2 every
/// coordinate and coefficient must be real.
struct Configuration {
  GroundField field = GroundField::R2;
  std::vector<std::vector<GaussianRational>> points;
  std::vector<ComplexPoly> curves;
  ConfigMetadata metadata;
  /// Ambient real hypersurface in (x1, y1, x2, y2), when the family has one.
  std::optional<RealPoly> hypersurface;

  [[nodiscard]] std::size_t m() const { return points.size(); }
  [[nodiscard]] std::size_t n() const { return curves.size(); }
};

/// Throws std::invalid_argument on malformed content (wrong arity, zero
/// curve, complex data over R2). Duplicates are allowed here.
void validate(const Configuration& c);

/// Drops repeated points and curves equal up to a nonzero scalar, keeping
/// first occurrences in order.
Configuration deduplicate(Configuration c);
bool has_duplicates(const Configuration& c);

/// Schema "incwb.configuration/1".
Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

}  // namespace incwb
