#pragma once

#include "incwb/cr/cr_geometry.hpp"
#include "incwb/exact/multipoly.hpp"
#include "incwb/exact/serialize.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace incwb {

using RationalPoint = std::vector<Rational>;

struct PartitionOptions {
  double delta = 0.1;
  int restarts = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Monomials of degree 1..t in d variables: by degree, then lexicographically
/// descending, e.g. x, y, x^2, xy, y^2.
std::vector<Monomial> veronese_monomials(std::size_t d, unsigned t);
std::size_t veronese_dimension(std::size_t d, unsigned t);
RationalPoint veronese_lift(std::span<const Rational> point, unsigned t);

struct SideCounts {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
};

enum class SearchStatus { Ok, BudgetExhausted };

struct BisectionResult {
  SearchStatus status = SearchStatus::Ok;
  /// c0, c1..cD: the hyperplane c0 + sum c_k x_k = 0.
  std::vector<Rational> coeffs;
  std::vector<SideCounts> counts;
  /// max over sets of max(0, max(pos, neg) - ceil(n/2)) / ceil(n/2).
  double imbalance = 0.0;
  /// Restart that produced the winner; -1 for the direct anchor search.
  int restart = -1;
  int restarts_used = 0;
};

/// Simultaneous bisection of up to D point sets in Q^D. Each open side of
/// every set receives at most ceil(n/2)(1 + delta) points; status is
/// BudgetExhausted (with the best hyperplane found) when no restart meets
/// that bound. The search stops early at the first batch that reaches an
/// exact split (at most ceil(n/2) per side).
BisectionResult ham_sandwich_bisect(const std::vector<std::vector<RationalPoint>>& sets,
                                    const PartitionOptions& options);

/// Exact side counts of sets relative to c0 + c.x.
std::vector<SideCounts> side_counts(const std::vector<std::vector<RationalPoint>>& sets,
                                    const std::vector<Rational>& coeffs);
/// Exact sign of c0 + c.x, via a certified floating-point filter.
int hyperplane_sign(const std::vector<Rational>& coeffs, std::span<const Rational> x);

using SignVector = std::vector<std::int8_t>;
std::string sign_key(const SignVector& s);

struct StageReport {
  unsigned degree = 0;
  std::size_t sets = 0;
  double imbalance = 0.0;
  int restart = -1;
  SearchStatus status = SearchStatus::Ok;
};

struct PartitionResult {
  std::size_t dim = 0;
  unsigned r = 0;
  double delta = 0.1;
  SearchStatus status = SearchStatus::Ok;
  std::vector<RealPoly> bisectors;
  std::vector<StageReport> stages;
  RealPoly product;
  std::vector<SignVector> signs;
  /// Interior points per sign class (keys like "+-+"), classes with a zero sign excluded.
  std::map<std::string, std::size_t> occupancy;
  std::size_t on_surface = 0;
  std::size_t interior = 0;

  [[nodiscard]] std::size_t max_class() const;
  [[nodiscard]] int product_degree() const;
};

/// Iterated simultaneous bisection on Veronese lifts. At stage j the
/// 2^(j-1) current classes are bisected by one polynomial of the least
/// degree t with C(d+t, d) - 1 >= 2^(j-1). Stages stop once 2^stages >= r^d
/// or the next degree would push the total past r.
PartitionResult polynomial_partition(const std::vector<RationalPoint>& points, unsigned r,
                                     const PartitionOptions& options);

/// Per-class occupancy guarantee (1 + delta)^stages * m / 2^stages.
double occupancy_bound(std::size_t m, double delta, std::size_t stages);

/// Degrees of the stage schedule for dimension d and parameter r.
std::vector<unsigned> stage_schedule(std::size_t d, unsigned r);

SignVector sign_class(std::span<const Rational> point, const PartitionResult& result);

enum class CrossingKind { Exact, LowerBound };

struct CrossingStats {
  CrossingKind kind = CrossingKind::Exact;
  bool contained = false;
  /// Distinct sign classes (without zeros) visited by the curve.
  std::size_t classes_visited = 0;
  /// Exact: number of distinct points where the curve meets Z(product).
  std::size_t surface_crossings = 0;
  std::vector<std::string> classes;
};

/// Planar curve that is a graph over one coordinate (lines included): exact
/// count via real root isolation of the restricted product.
CrossingStats curve_crossings(const RealPoly& curve, const PartitionResult& result);

struct SamplingOptions {
  std::size_t grid = 64;
  Rational half_width = Rational(2);
};

/// Complex curve z2 = g(z1) (or z1 = g(z2)) embedded in R^4 against a
/// partition of R^4: samples the parametrization on a rational grid and
/// reports a lower bound on the classes visited.
CrossingStats curve_crossings(const ComplexCurve& curve, const PartitionResult& result,
                              const SamplingOptions& sampling = {});

std::string_view to_string(SearchStatus s);
std::string_view to_string(CrossingKind k);

/// Schema "incwb.partition/1"; per-point classes are included when `with_points`.
Json to_json(const PartitionResult& r, bool with_points = true);
Json to_json(const CrossingStats& c);

}  // namespace incwb
