#pragma once

#include "incwb/cr/cr_geometry.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace incwb {

/// Real hypersurface Z(P) in R^4 = C^2. Irreducibility is declared by the
/// caller, never checked.
struct Hypersurface {
  RealPoly P;
  int degree_bound = 0;

  Hypersurface() = default;
  explicit Hypersurface(RealPoly poly, int degree_bound = -1);
};

/// Why a point was rejected by one of the pointwise diagnostics.
enum class PointStatus { Ok, NotOnSurface, SingularPoint, ExceptionalPoint, FrameDegenerate, NotOnCurve, CurveSingular };
std::string_view to_string(PointStatus s);

struct DistributionFrame {
  Point4 point;
  Point4 grad;
  Point4 jgrad;
  /// Exact kernel basis of [grad; jgrad].
  std::array<Point4, 2> e_basis;
};

struct FrameOutcome {
  PointStatus status = PointStatus::Ok;
  std::optional<DistributionFrame> frame;
};

/// E_p = T_p Z intersected with J^{-1}(T_p Z), the orthogonal complement of {grad P, J grad P}.
FrameOutcome distribution_frame(const Hypersurface& Z, const Point4& p);

/// Polynomial vector field sum_k X_k d/dx_k on R^n.
struct PolyVectorField {
  std::vector<RealPoly> components;

  PolyVectorField() = default;
  explicit PolyVectorField(std::vector<RealPoly> comps);
  static PolyVectorField constant(std::size_t n, std::size_t axis);

  [[nodiscard]] std::size_t dim() const { return components.size(); }
  [[nodiscard]] std::vector<Rational> at(std::span<const Rational> p) const;
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator*(const Rational& s, const PolyVectorField& a);
};

/// [X, Y]_k = sum_l X_l dY_k/dx_l - Y_l dX_k/dx_l.
PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y);

/// X_i = |g|^2 e_i - <e_i, g> g - <e_i, Jg> Jg with g = grad P; likewise X_j.
std::pair<PolyVectorField, PolyVectorField> tangent_frame_fields(const Hypersurface& Z, std::size_t i, std::size_t j);

struct BracketDefect {
  PointStatus status = PointStatus::Ok;
  std::size_t i = 0;
  std::size_t j = 0;
  /// <[X_i, X_j](p), J grad P(p)>
  Rational raw;
  /// raw / |grad P(p)|^6
  Rational normalized;
};

BracketDefect bracket_defect(const Hypersurface& Z, const Point4& p, std::size_t i, std::size_t j);
/// Uses the pair maximizing the Gram determinant of (X_i(p), X_j(p)), ties
/// broken lexicographically.
BracketDefect bracket_defect(const Hypersurface& Z, const Point4& p);
std::pair<std::size_t, std::size_t> default_frame_pair(const Hypersurface& Z, const Point4& p);

enum class TangencyStatus { Pass, Fail, Skipped };
std::string_view to_string(TangencyStatus s);

struct TangencyRecord {
  Point4 point;
  TangencyStatus status = TangencyStatus::Skipped;
  PointStatus reason = PointStatus::Ok;
};

/// For each sample on both Z and the curve, checks exactly that the real
/// tangent plane ker[grad u; grad v] of the embedded curve equals E_p.
std::vector<TangencyRecord> leaf_tangency_check(const Hypersurface& Z, const ComplexCurve& gamma,
                                                const std::vector<Point4>& samples);

enum class Containment { Contained, NotContained, Unknown };
std::string_view to_string(Containment c);

struct ContainmentResult {
  Containment verdict = Containment::Unknown;
  /// Substituted P when the curve is a graph over one coordinate.
  std::optional<RealPoly> residual;
  /// Numerical evidence for non-graph curves: sampled points and max |P|.
  std::size_t samples = 0;
  double max_abs_residual = 0.0;
};

/// Decides whether P vanishes on iota(gamma). Exact for curves of the form
/// a z2 = h(z1) or a z1 = h(z2) with a a nonzero constant; otherwise Unknown
/// with sampled evidence.
ContainmentResult containment_check(const Hypersurface& Z, const ComplexCurve& gamma, std::uint64_t seed = 0);

/// If f = a z_var - h(other) with constant a != 0, returns h / a.
std::optional<ComplexPoly> graph_form(const ComplexPoly& f, std::size_t var);

struct ExceptionalPointFlags {
  Point4 point;
  bool on_surface = false;
  bool singular = false;
  bool contains_pi1 = false;
  bool contains_pi2 = false;
};
std::vector<ExceptionalPointFlags> exceptional_locus(const Hypersurface& Z, const std::vector<Point4>& points);

}  // namespace incwb
