#pragma once

#include "incwb/incidence/configuration.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace incwb {

/// Sparse boolean m x n relation. Pairs are sorted by (point, curve).
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  /// Pairs may arrive in any order; duplicates are merged.
  IncidenceMatrix(std::size_t m, std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

  [[nodiscard]] std::size_t m() const { return m_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t incidences() const { return pairs_.size(); }
  [[nodiscard]] const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }
  [[nodiscard]] bool contains(std::uint32_t point, std::uint32_t curve) const;
  /// Sorted incident points of each curve.
  [[nodiscard]] const std::vector<std::vector<std::uint32_t>>& curve_points() const { return by_curve_; }
  /// Sorted incident curves of each point.
  [[nodiscard]] const std::vector<std::vector<std::uint32_t>>& point_curves() const { return by_point_; }

  friend bool operator==(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.pairs_ == b.pairs_;
  }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::vector<std::vector<std::uint32_t>> by_curve_;
  std::vector<std::vector<std::uint32_t>> by_point_;
};

struct BuildOptions {
  unsigned threads = 1;
  /// Over C2, also test u(iota(p)) = v(iota(p)) = 0 and throw std::logic_error on disagreement.
  bool cross_check_realify = false;
};

IncidenceMatrix build_matrix(const Configuration& config, const BuildOptions& options = {});

/// "point,curve" header plus one row per incidence.
std::string matrix_to_csv(const IncidenceMatrix& M);

enum class DofStatus { Certified, Violated, Indeterminate };
std::string_view to_string(DofStatus s);

/// A k-subset of points on more than s curves (condition 1).
struct SubsetWitness {
  std::vector<std::uint32_t> points;
  std::vector<std::uint32_t> curves;
};

/// Two curves sharing more than s incident points (condition 2).
struct PairWitness {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  std::vector<std::uint32_t> shared_points;
};

struct DofCertificate {
  std::size_t k = 0;
  std::size_t s = 0;
  DofStatus status = DofStatus::Certified;
  std::optional<SubsetWitness> subset_witness;
  std::optional<PairWitness> pair_witness;
  /// Size of the k-subset table (sum over curves of C(d, k)), and the cap it was checked against.
  std::uint64_t table_entries = 0;
  std::uint64_t table_cap = 0;
};

inline constexpr std::uint64_t kDefaultTableCap = 10'000'000;

DofCertificate certify_dof(const IncidenceMatrix& M, std::size_t k, std::size_t s, unsigned threads = 1,
                           std::uint64_t table_cap = kDefaultTableCap);
/// Checks a witness against the matrix alone.
bool verify_witness(const IncidenceMatrix& M, const DofCertificate& cert);
Json to_json(const DofCertificate& c);

struct KstReport {
  std::size_t k = 0;
  std::size_t s = 0;
  /// sum over curves of C(deg_M(curve), k)
  mpz_class lhs;
  /// s * C(m, k)
  mpz_class rhs;
  bool holds = false;
};

KstReport kst_double_count(const IncidenceMatrix& M, std::size_t k, std::size_t s);
Json to_json(const KstReport& r);

struct BoundReport {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  long double epsilon = 0;
  /// Constant multiplying the complex first term (non-explicit; reported as given).
  long double constant = 1;
  std::uint64_t measured = 0;
  long double ps_first_term = 0;
  long double ps_value = 0;
  long double ps_complex_first_term = 0;
  long double ps_complex_value = 0;
  long double kst_value = 0;
  long double ratio_ps = 0;
  long double ratio_ps_complex = 0;
  long double ratio_kst = 0;
  /// n <= m^k, decided exactly.
  bool kst_regime = false;
  int significand_bits = 0;
};

BoundReport evaluate_bounds(std::uint64_t m, std::uint64_t n, std::size_t k, std::size_t s, long double epsilon,
                            std::uint64_t measured, long double constant = 1);
Json to_json(const BoundReport& r);

struct SeriesPoint {
  long double m = 0;
  long double n = 0;
  long double incidences = 0;
};

struct ExponentFit {
  /// log I = a log m + b log n + c; a, b are absent when the design is degenerate.
  std::optional<long double> a;
  std::optional<long double> b;
  long double c = 0;
  bool degenerate = false;
  /// Degenerate case: slope of log I against log m (or log n when m is constant).
  std::optional<long double> combined;
  std::string combined_against;
  /// Root mean square of the log residuals.
  long double residual = 0;
  /// Largest |I_predicted - I| / I over the series.
  long double max_relative_error = 0;

  [[nodiscard]] long double predict(long double m, long double n) const;
};

ExponentFit exponent_fit(const std::vector<SeriesPoint>& series);
Json to_json(const ExponentFit& f);

using Rational2x4 = std::array<std::array<Rational, 4>, 2>;

struct ProjectionOptions {
  std::size_t budget = 100;
  /// Map entries are integers drawn uniformly from [-entry_range, entry_range].
  std::int64_t entry_range = 1 << 16;
};

struct Projection {
  Rational2x4 map;
  std::vector<std::array<Rational, 2>> points;
  bool injective = false;
  std::size_t attempts = 0;
  /// Indices of the last colliding pair when every attempt failed.
  std::optional<std::pair<std::size_t, std::size_t>> collision;
};

std::array<Rational, 2> apply_map(const Rational2x4& map, const std::array<Rational, 4>& x);
/// First colliding pair (i < j, lexicographic) of distinct points with equal images.
std::optional<std::pair<std::size_t, std::size_t>> find_collision(const Rational2x4& map,
                                                                  const std::vector<std::array<Rational, 4>>& points);
/// Seeded integer map R^4 -> R^2, reseeded with derive_seed(seed, attempt)
/// until injective on the points or the budget runs out.
Projection project_generic(const std::vector<std::array<Rational, 4>>& points, std::uint64_t seed,
                           const ProjectionOptions& options = {});

}  // namespace incwb
