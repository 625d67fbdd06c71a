#include "incwb/foliation/foliation.hpp"

#include "incwb/exact/matrix.hpp"
#include "incwb/util/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace incwb {

namespace {

using Vec4 = Point4;

Rational dot4(const Vec4& a, const Vec4& b) {
  Rational s(0);
  for (std::size_t k = 0; k < 4; ++k) s += a[k] * b[k];
  return s;
}

Vec4 to_vec4(const std::vector<Rational>& v) { return {v.at(0), v.at(1), v.at(2), v.at(3)}; }

bool is_zero_vec(const Vec4& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
}

Vec4 grad_at(const RealPoly& P, const Vec4& p) { return to_vec4(gradient<Rational, Rational>(P, std::span<const Rational>(p))); }

Rational gram(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b);
}

}  // namespace

Hypersurface::Hypersurface(RealPoly poly, int bound) : P(std::move(poly)), degree_bound(bound) {
  if (P.num_vars() != 4) throw std::invalid_argument("Hypersurface: P must be in (x1, y1, x2, y2)");
  if (P.is_zero()) throw std::invalid_argument("Hypersurface: zero polynomial");
  if (degree_bound < 0) degree_bound = P.total_degree();
  if (P.total_degree() > degree_bound) throw std::invalid_argument("Hypersurface: degree exceeds bound");
}

std::string_view to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::NotOnSurface: return "not_on_surface";
    case PointStatus::SingularPoint: return "singular_point";
    case PointStatus::ExceptionalPoint: return "exceptional_point";
    case PointStatus::FrameDegenerate: return "frame_degenerate";
    case PointStatus::NotOnCurve: return "not_on_curve";
    case PointStatus::CurveSingular: return "curve_singular";
  }
  return "?";
}

FrameOutcome distribution_frame(const Hypersurface& Z, const Point4& p) {
  if (!Z.P.evaluate<Rational>(std::span<const Rational>(p)).is_zero()) return {PointStatus::NotOnSurface, {}};
  const Vec4 g = grad_at(Z.P, p);
  if (is_zero_vec(g)) return {PointStatus::SingularPoint, {}};
  if (tangent_contains_pi(Z.P, p) != PiContainment::None) return {PointStatus::ExceptionalPoint, {}};
  const Vec4 jg = j_apply(g);
  const auto kernel = kernel_basis(ExactMatrix<Rational>::from_rows(
      {std::vector<Rational>(g.begin(), g.end()), std::vector<Rational>(jg.begin(), jg.end())}));
  if (kernel.size() != 2) throw std::logic_error("distribution_frame: kernel of [g; Jg] is not two-dimensional");
  return {PointStatus::Ok, DistributionFrame{p, g, jg, {to_vec4(kernel[0]), to_vec4(kernel[1])}}};
}

PolyVectorField::PolyVectorField(std::vector<RealPoly> comps) : components(std::move(comps)) {
  for (const auto& c : components)
    if (c.num_vars() != components.size())
      throw std::invalid_argument("PolyVectorField: component count must equal the variable count");
}

PolyVectorField PolyVectorField::constant(std::size_t n, std::size_t axis) {
  std::vector<RealPoly> c(n, RealPoly(n));
  c.at(axis) = RealPoly::constant(n, Rational(1));
  return PolyVectorField(std::move(c));
}

std::vector<Rational> PolyVectorField::at(std::span<const Rational> p) const {
  std::vector<Rational> out;
  for (const auto& c : components) out.push_back(c.evaluate<Rational>(p));
  return out;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("PolyVectorField: dimension mismatch");
  PolyVectorField r = a;
  for (std::size_t k = 0; k < a.dim(); ++k) r.components[k] += b.components[k];
  return r;
}

PolyVectorField operator*(const Rational& s, const PolyVectorField& a) {
  PolyVectorField r = a;
  for (auto& c : r.components) c *= s;
  return r;
}

PolyVectorField lie_bracket(const PolyVectorField& X, const PolyVectorField& Y) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("lie_bracket: dimension mismatch");
  const std::size_t n = X.dim();
  std::vector<RealPoly> out(n, RealPoly(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (!X.components[l].is_zero()) out[k] += X.components[l] * partial_derivative(Y.components[k], l);
      if (!Y.components[l].is_zero()) out[k] -= Y.components[l] * partial_derivative(X.components[k], l);
    }
  }
  return PolyVectorField(std::move(out));
}

std::pair<PolyVectorField, PolyVectorField> tangent_frame_fields(const Hypersurface& Z, std::size_t i, std::size_t j) {
  if (i == j || i >= 4 || j >= 4) throw std::invalid_argument("tangent_frame_fields: need distinct indices in 0..3");
  const auto g = gradient_polys(Z.P);
  const std::vector<RealPoly> jg{-g[1], g[0], -g[3], g[2]};
  RealPoly norm2(4);
  for (const auto& c : g) norm2 += c * c;
  auto field = [&](std::size_t e) {
    std::vector<RealPoly> comps(4, RealPoly(4));
    for (std::size_t k = 0; k < 4; ++k) {
      if (k == e) comps[k] += norm2;
      comps[k] -= g[e] * g[k];
      comps[k] -= jg[e] * jg[k];
    }
    return PolyVectorField(std::move(comps));
  };
  return {field(i), field(j)};
}

std::pair<std::size_t, std::size_t> default_frame_pair(const Hypersurface& Z, const Point4& p) {
  std::pair<std::size_t, std::size_t> best{0, 1};
  Rational best_gram(-1);
  std::array<std::vector<Rational>, 4> x;
  for (std::size_t k = 0; k < 4; ++k) x[k] = tangent_frame_fields(Z, k, (k + 1) % 4).first.at(p);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Rational gd = gram(x[i], x[j]);
      if (gd > best_gram) {
        best_gram = gd;
        best = {i, j};
      }
    }
  }
  return best;
}

BracketDefect bracket_defect(const Hypersurface& Z, const Point4& p, std::size_t i, std::size_t j) {
  BracketDefect out;
  out.i = i;
  out.j = j;
  const FrameOutcome frame = distribution_frame(Z, p);
  if (frame.status != PointStatus::Ok) {
    out.status = frame.status;
    return out;
  }
  const auto [Xi, Xj] = tangent_frame_fields(Z, i, j);
  if (gram(Xi.at(p), Xj.at(p)).is_zero()) {
    out.status = PointStatus::FrameDegenerate;
    return out;
  }
  const auto b = lie_bracket(Xi, Xj).at(p);
  out.raw = dot4(to_vec4(b), frame.frame->jgrad);
  out.normalized = out.raw / pow(dot4(frame.frame->grad, frame.frame->grad), 3);
  return out;
}

BracketDefect bracket_defect(const Hypersurface& Z, const Point4& p) {
  const auto [i, j] = default_frame_pair(Z, p);
  return bracket_defect(Z, p, i, j);
}

std::string_view to_string(TangencyStatus s) {
  switch (s) {
    case TangencyStatus::Pass: return "pass";
    case TangencyStatus::Fail: return "fail";
    case TangencyStatus::Skipped: return "skipped";
  }
  return "?";
}

std::vector<TangencyRecord> leaf_tangency_check(const Hypersurface& Z, const ComplexCurve& gamma,
                                                const std::vector<Point4>& samples) {
  const RealPair uv = realify(gamma);
  std::vector<TangencyRecord> out;
  for (const auto& p : samples) {
    TangencyRecord rec{p, TangencyStatus::Skipped, PointStatus::Ok};
    const std::span<const Rational> ps(p);
    if (!uv.u.evaluate<Rational>(ps).is_zero() || !uv.v.evaluate<Rational>(ps).is_zero()) {
      rec.reason = PointStatus::NotOnCurve;
    } else {
      const auto gu = gradient<Rational, Rational>(uv.u, ps);
      const auto gv = gradient<Rational, Rational>(uv.v, ps);
      const auto curve_rows = ExactMatrix<Rational>::from_rows({gu, gv});
      if (rank(curve_rows) != 2) {
        rec.reason = PointStatus::CurveSingular;
      } else {
        const FrameOutcome frame = distribution_frame(Z, p);
        rec.reason = frame.status;
        if (frame.status == PointStatus::Ok) {
          const auto tangent = kernel_basis(curve_rows);
          const auto& e = frame.frame->e_basis;
          const bool equal = same_span<Rational>(tangent, {std::vector<Rational>(e[0].begin(), e[0].end()),
                                                           std::vector<Rational>(e[1].begin(), e[1].end())});
          rec.status = equal ? TangencyStatus::Pass : TangencyStatus::Fail;
        }
      }
    }
    out.push_back(rec);
  }
  return out;
}

std::string_view to_string(Containment c) {
  switch (c) {
    case Containment::Contained: return "contained";
    case Containment::NotContained: return "not_contained";
    case Containment::Unknown: return "unknown";
  }
  return "?";
}

std::optional<ComplexPoly> graph_form(const ComplexPoly& f, std::size_t var) {
  if (f.num_vars() != 2 || var > 1 || f.degree_in(var) != 1) return std::nullopt;
  const auto coeffs = f.coefficients_in(var);
  if (!coeffs[1].is_constant()) return std::nullopt;
  const GaussianRational a = coeffs[1].constant_term();
  return -(coeffs[0] * a.inverse());
}

namespace {

// Roots of a univariate complex polynomial (ascending coefficients) by
// Durand-Kerner iteration. Only used for numerical evidence.
std::vector<std::complex<double>> durand_kerner(std::vector<std::complex<double>> c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  const std::size_t n = c.empty() ? 0 : c.size() - 1;
  if (n == 0) return {};
  for (auto& x : c) x /= c.back();
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(seed, static_cast<double>(k));
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = c[n];
    for (std::size_t k = n; k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double move = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> denom = 1.0;
      for (std::size_t l = 0; l < n; ++l)
        if (l != k) denom *= z[k] - z[l];
      const std::complex<double> step = eval(z[k]) / denom;
      z[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14) break;
  }
  return z;
}

std::complex<double> to_cd(const GaussianRational& z) { return {z.re.to_double(), z.im.to_double()}; }

}  // namespace

ContainmentResult containment_check(const Hypersurface& Z, const ComplexCurve& gamma, std::uint64_t seed) {
  ContainmentResult out;
  for (std::size_t var : {std::size_t{1}, std::size_t{0}}) {
    const auto g = graph_form(gamma.f, var);
    if (!g) continue;
    // Real and imaginary parts of the solved coordinate, as functions of the free one.
    const RealPair parts = realify(*g);
    const std::size_t free = 1 - var;
    std::vector<RealPoly> images(4, RealPoly(4));
    images[2 * free] = RealPoly::variable(4, 2 * free);
    images[2 * free + 1] = RealPoly::variable(4, 2 * free + 1);
    images[2 * var] = parts.u;
    images[2 * var + 1] = parts.v;
    out.residual = compose(Z.P, images);
    out.verdict = out.residual->is_zero() ? Containment::Contained : Containment::NotContained;
    return out;
  }
  // No graph structure: sample z1, solve for z2 numerically, report max |P|.
  Rng rng(derive_seed(seed, "containment"));
  const auto coeffs = gamma.f.coefficients_in(1);
  for (int s = 0; s < 32; ++s) {
    const GaussianRational z1(Rational(rng.uniform_int(-1000, 1000), 997), Rational(rng.uniform_int(-1000, 1000), 997));
    std::vector<std::complex<double>> c;
    for (const auto& ck : coeffs) {
      const std::vector<GaussianRational> pt{z1, GaussianRational(0)};
      c.push_back(to_cd(ck.evaluate<GaussianRational>(pt)));
    }
    for (const auto& z2 : durand_kerner(c)) {
      std::array<double, 4> x{z1.re.to_double(), z1.im.to_double(), z2.real(), z2.imag()};
      double acc = 0.0;
      for (const auto& [m, coef] : Z.P.terms()) {
        double t = coef.to_double();
        for (std::size_t k = 0; k < 4; ++k) t *= std::pow(x[k], static_cast<double>(m[k]));
        acc += t;
      }
      out.max_abs_residual = std::max(out.max_abs_residual, std::abs(acc));
      ++out.samples;
    }
  }
  out.verdict = Containment::Unknown;
  return out;
}

std::vector<ExceptionalPointFlags> exceptional_locus(const Hypersurface& Z, const std::vector<Point4>& points) {
  std::vector<ExceptionalPointFlags> out;
  for (const auto& p : points) {
    ExceptionalPointFlags f{p};
    f.on_surface = Z.P.evaluate<Rational>(std::span<const Rational>(p)).is_zero();
    const PiContainment c = tangent_contains_pi(Z.P, p);
    f.singular = c == PiContainment::Singular;
    f.contains_pi1 = c == PiContainment::Pi1 || c == PiContainment::Both;
    f.contains_pi2 = c == PiContainment::Pi2 || c == PiContainment::Both;
    out.push_back(f);
  }
  return out;
}

}  // namespace incwb
