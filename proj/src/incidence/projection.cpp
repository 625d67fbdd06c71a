#include "incwb/incidence/incidence.hpp"
#include "incwb/util/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace incwb {

std::array<Rational, 2> apply_map(const Rational2x4& map, const std::array<Rational, 4>& x) {
  std::array<Rational, 2> y{Rational(0), Rational(0)};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 4; ++c) y[r] += map[r][c] * x[c];
  return y;
}

std::optional<std::pair<std::size_t, std::size_t>> find_collision(const Rational2x4& map,
                                                                  const std::vector<std::array<Rational, 4>>& points) {
  std::vector<std::array<Rational, 2>> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(apply_map(map, p));
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Sort by image, then by index, so equal images sit together in index order.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (images[a] != images[b]) return images[a] < images[b];
    return a < b;
  });
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && images[order[hi]] == images[order[lo]]) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = a + 1; b < hi; ++b) {
        if (points[order[a]] == points[order[b]]) continue;
        const std::pair<std::size_t, std::size_t> pair{order[a], order[b]};
        if (!best || pair < *best) best = pair;
      }
    lo = hi;
  }
  return best;
}

Projection project_generic(const std::vector<std::array<Rational, 4>>& points, std::uint64_t seed,
                           const ProjectionOptions& options) {
  if (options.budget == 0) throw std::invalid_argument("project_generic: budget must be positive");
  if (options.entry_range < 0) throw std::invalid_argument("project_generic: entry range must be non-negative");
  Projection out;
  for (std::size_t attempt = 0; attempt < options.budget; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    for (auto& row : out.map)
      for (auto& e : row) e = Rational(rng.uniform_int(-options.entry_range, options.entry_range));
    out.attempts = attempt + 1;
    out.collision = find_collision(out.map, points);
    if (!out.collision) {
      out.injective = true;
      break;
    }
  }
  out.points.clear();
  for (const auto& p : points) out.points.push_back(apply_map(out.map, p));
  return out;
}

}  // namespace incwb
