#pragma once

#include "incwb/exact/multipoly.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace incwb {

/// Complex plane curve f(z1, z2) = 0 with a declared degree bound.
struct ComplexCurve {
  ComplexPoly f;
  int degree_bound = 0;

  ComplexCurve() = default;
  /// Throws std::invalid_argument unless f is a nonzero polynomial in two
  /// variables of total degree at most degree_bound (defaults to deg f).
  explicit ComplexCurve(ComplexPoly poly, int degree_bound = -1);
};

/// Real and imaginary parts of a complex polynomial, in the real variables
/// (x1, y1, x2, y2, ...) with z_k = x_k + i y_k.
struct RealPair {
  RealPoly u;
  RealPoly v;
};

using Point4 = std::array<Rational, 4>;
using ComplexPoint2 = std::array<GaussianRational, 2>;
using CVector4 = std::array<GaussianRational, 4>;

/// (z1, ..., zn) -> (Re z1, Im z1, ..., Re zn, Im zn).
std::vector<Rational> iota(std::span<const GaussianRational> z);
/// Inverse of iota; requires an even number of coordinates.
std::vector<GaussianRational> iota_inv(std::span<const Rational> x);
Point4 iota(const ComplexPoint2& z);
ComplexPoint2 iota_inv(const Point4& x);

/// Substitutes z_k = x_k + i y_k and splits into real and imaginary parts.
RealPair realify(const ComplexPoly& f);
inline RealPair realify(const ComplexCurve& c) { return realify(c.f); }

struct CauchyRiemannCheck {
  bool holds = false;
  /// For each k: du/dx_k - dv/dy_k, then du/dy_k + dv/dx_k.
  std::vector<RealPoly> residuals;
};
CauchyRiemannCheck check_cauchy_riemann(const RealPair& pair);

/// J(x1, y1, x2, y2) = (-y1, x1, -y2, x2).
template <ExactField F>
std::array<F, 4> j_apply(std::span<const F> w) {
  if (w.size() != 4) throw std::invalid_argument("j_apply: vector must have length 4");
  return {-w[1], w[0], -w[3], w[2]};
}
template <ExactField F>
std::array<F, 4> j_apply(const std::array<F, 4>& w) {
  return j_apply<F>(std::span<const F>(w));
}
template <ExactField F>
std::array<F, 4> j_apply(const std::vector<F>& w) {
  return j_apply<F>(std::span<const F>(w));
}

enum class CrClass { Independent, DependentPlusI, DependentMinusI, Zero };
std::string_view to_string(CrClass c);

/// Independent iff a and Ja are linearly independent over C; otherwise the
/// witnessing lambda with a2 = -lambda a1 and a4 = -lambda a3.
CrClass classify_cr_vector(const CVector4& a);

enum class PiTag { Pi1, Pi2 };

struct CRPlane {
  PiTag tag;
  std::array<CVector4, 2> basis;
};
/// Pi1 = {a2 = -i a1, a4 = -i a3} with basis (1,-i,0,0), (0,0,1,-i); Pi2 is its conjugate.
CRPlane cr_plane(PiTag tag);
CRPlane conjugate(const CRPlane& plane);

enum class PiContainment { None, Pi1, Pi2, Both, Singular };
std::string_view to_string(PiContainment c);

/// Whether the tangent hyperplane of Z(P) at p (the kernel of the bilinear
/// pairing with grad P) contains Pi1 and/or Pi2. Singular when grad P(p) = 0.
PiContainment tangent_contains_pi(const RealPoly& P, const Point4& p);

}  // namespace incwb
