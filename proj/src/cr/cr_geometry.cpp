#include "incwb/cr/cr_geometry.hpp"

#include "incwb/exact/matrix.hpp"

#include <stdexcept>

namespace incwb {

ComplexCurve::ComplexCurve(ComplexPoly poly, int bound) : f(std::move(poly)), degree_bound(bound) {
  if (f.num_vars() != 2) throw std::invalid_argument("ComplexCurve: polynomial must be in (z1, z2)");
  if (f.is_zero()) throw std::invalid_argument("ComplexCurve: zero polynomial");
  if (degree_bound < 0) degree_bound = f.total_degree();
  if (f.total_degree() > degree_bound) throw std::invalid_argument("ComplexCurve: degree exceeds bound");
}

std::vector<Rational> iota(std::span<const GaussianRational> z) {
  std::vector<Rational> x;
  x.reserve(2 * z.size());
  for (const auto& c : z) {
    x.push_back(c.re);
    x.push_back(c.im);
  }
  return x;
}

std::vector<GaussianRational> iota_inv(std::span<const Rational> x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("iota_inv: odd number of real coordinates");
  std::vector<GaussianRational> z;
  for (std::size_t k = 0; k < x.size(); k += 2) z.emplace_back(x[k], x[k + 1]);
  return z;
}

Point4 iota(const ComplexPoint2& z) { return {z[0].re, z[0].im, z[1].re, z[1].im}; }
ComplexPoint2 iota_inv(const Point4& x) { return {GaussianRational(x[0], x[1]), GaussianRational(x[2], x[3])}; }

RealPair realify(const ComplexPoly& f) {
  const std::size_t n = f.num_vars();
  std::vector<ComplexPoly> images;
  for (std::size_t k = 0; k < n; ++k) {
    images.push_back(ComplexPoly::variable(2 * n, 2 * k) +
                     ComplexPoly::variable(2 * n, 2 * k + 1) * GaussianRational::i());
  }
  auto [u, v] = split_coefficients(compose(f, images));
  return {std::move(u), std::move(v)};
}

CauchyRiemannCheck check_cauchy_riemann(const RealPair& pair) {
  if (pair.u.num_vars() != pair.v.num_vars() || pair.u.num_vars() % 2 != 0)
    throw std::invalid_argument("check_cauchy_riemann: u and v must share an even variable count");
  CauchyRiemannCheck out{true, {}};
  for (std::size_t k = 0; k < pair.u.num_vars(); k += 2) {
    out.residuals.push_back(partial_derivative(pair.u, k) - partial_derivative(pair.v, k + 1));
    out.residuals.push_back(partial_derivative(pair.u, k + 1) + partial_derivative(pair.v, k));
  }
  for (const auto& r : out.residuals) out.holds = out.holds && r.is_zero();
  return out;
}

std::string_view to_string(CrClass c) {
  switch (c) {
    case CrClass::Independent: return "independent";
    case CrClass::DependentPlusI: return "dependent(+i)";
    case CrClass::DependentMinusI: return "dependent(-i)";
    case CrClass::Zero: return "zero";
  }
  return "?";
}

CrClass classify_cr_vector(const CVector4& a) {
  bool zero = true;
  for (const auto& c : a) zero = zero && c.is_zero();
  if (zero) return CrClass::Zero;
  const auto ja = j_apply(a);
  const ExactMatrix<GaussianRational> m = ExactMatrix<GaussianRational>::from_rows(
      {std::vector<GaussianRational>(a.begin(), a.end()), std::vector<GaussianRational>(ja.begin(), ja.end())});
  if (rank(m) == 2) return CrClass::Independent;
  const GaussianRational i = GaussianRational::i();
  // lambda = +i: a2 = -i a1, a4 = -i a3.
  if (a[1] == -(i * a[0]) && a[3] == -(i * a[2])) return CrClass::DependentPlusI;
  if (a[1] == i * a[0] && a[3] == i * a[2]) return CrClass::DependentMinusI;
  throw std::logic_error("classify_cr_vector: dependent vector without a witnessing lambda");
}

CRPlane cr_plane(PiTag tag) {
  const GaussianRational one(1), zero(0), i = GaussianRational::i();
  CRPlane p{PiTag::Pi1, {CVector4{one, -i, zero, zero}, CVector4{zero, zero, one, -i}}};
  return tag == PiTag::Pi1 ? p : conjugate(p);
}

CRPlane conjugate(const CRPlane& plane) {
  CRPlane out{plane.tag == PiTag::Pi1 ? PiTag::Pi2 : PiTag::Pi1, plane.basis};
  for (auto& v : out.basis)
    for (auto& c : v) c = c.conj();
  return out;
}

std::string_view to_string(PiContainment c) {
  switch (c) {
    case PiContainment::None: return "none";
    case PiContainment::Pi1: return "pi1";
    case PiContainment::Pi2: return "pi2";
    case PiContainment::Both: return "both";
    case PiContainment::Singular: return "singular";
  }
  return "?";
}

PiContainment tangent_contains_pi(const RealPoly& P, const Point4& p) {
  if (P.num_vars() != 4) throw std::invalid_argument("tangent_contains_pi: P must have 4 variables");
  const auto g = gradient<Rational, Rational>(P, std::span<const Rational>(p));
  bool zero = true;
  for (const auto& c : g) zero = zero && c.is_zero();
  if (zero) return PiContainment::Singular;
  auto annihilates = [&](PiTag tag) {
    for (const auto& b : cr_plane(tag).basis) {
      GaussianRational s(0);
      for (std::size_t k = 0; k < 4; ++k) s += b[k] * g[k];
      if (!s.is_zero()) return false;
    }
    return true;
  };
  const bool in1 = annihilates(PiTag::Pi1), in2 = annihilates(PiTag::Pi2);
  if (in1 && in2) return PiContainment::Both;
  if (in1) return PiContainment::Pi1;
  if (in2) return PiContainment::Pi2;
  return PiContainment::None;
}

}  // namespace incwb
