#include "incwb/cr/cr_geometry.hpp"
#include "incwb/incidence/incidence.hpp"
#include "incwb/util/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace incwb {

IncidenceMatrix::IncidenceMatrix(std::size_t m, std::size_t n,
                                 std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs)
    : m_(m), n_(n), pairs_(std::move(pairs)), by_curve_(n), by_point_(m) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (const auto& [i, j] : pairs_) {
    if (i >= m_ || j >= n_) throw std::out_of_range("IncidenceMatrix: pair index out of range");
    by_point_[i].push_back(j);
    by_curve_[j].push_back(i);
  }
}

bool IncidenceMatrix::contains(std::uint32_t point, std::uint32_t curve) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(point, curve));
}

IncidenceMatrix build_matrix(const Configuration& config, const BuildOptions& options) {
  validate(config);
  const std::size_t m = config.m(), n = config.n();
  std::vector<std::vector<std::uint32_t>> rows(m);

  if (config.field == GroundField::R2) {
    std::vector<RealPoly> curves;
    curves.reserve(n);
    for (const auto& f : config.curves) curves.push_back(*as_real(f));
    parallel_for(m, options.threads, [&](std::size_t i) {
      const std::vector<Rational> p{config.points[i][0].re, config.points[i][1].re};
      for (std::size_t j = 0; j < n; ++j)
        if (curves[j].evaluate(p).is_zero()) rows[i].push_back(static_cast<std::uint32_t>(j));
    });
  } else {
    std::vector<RealPair> parts;
    if (options.cross_check_realify)
      for (const auto& f : config.curves) parts.push_back(realify(f));
    parallel_for(m, options.threads, [&](std::size_t i) {
      const auto& p = config.points[i];
      const std::vector<Rational> x = iota(std::span<const GaussianRational>(p));
      for (std::size_t j = 0; j < n; ++j) {
        const bool on = config.curves[j].evaluate(p).is_zero();
        if (options.cross_check_realify) {
          const bool embedded = parts[j].u.evaluate(x).is_zero() && parts[j].v.evaluate(x).is_zero();
          if (embedded != on)
            throw std::logic_error("build_matrix: realified test disagrees at point " + std::to_string(i) +
                                   ", curve " + std::to_string(j));
        }
        if (on) rows[i].push_back(static_cast<std::uint32_t>(j));
      }
    });
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t j : rows[i]) pairs.emplace_back(static_cast<std::uint32_t>(i), j);
  return IncidenceMatrix(m, n, std::move(pairs));
}

std::string matrix_to_csv(const IncidenceMatrix& M) {
  std::string out = "point,curve\n";
  for (const auto& [i, j] : M.pairs()) out += std::to_string(i) + "," + std::to_string(j) + "\n";
  return out;
}

}  // namespace incwb
