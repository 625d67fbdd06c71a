#include "incwb/exact/real_roots.hpp"
#include "incwb/partition/partition.hpp"
#include "incwb/util/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace incwb {

namespace {

// Exact sign of p at x; doubles decide when the error bound allows.
int poly_sign(const RealPoly& p, std::span<const Rational> x) {
  std::vector<double> xd;
  for (const auto& v : x) xd.push_back(v.to_double());
  double s = 0.0, mag = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = c.to_double();
    for (std::size_t k = 0; k < xd.size(); ++k)
      for (std::uint32_t e = 0; e < m[k]; ++e) t *= xd[k];
    s += t;
    mag += std::abs(t);
  }
  const double slack = 1e-12 * static_cast<double>(p.total_degree() + 2);
  if (std::isfinite(s) && std::isfinite(mag) && mag > 1e-280 && std::abs(s) > mag * slack) return s > 0 ? 1 : -1;
  return p.evaluate<Rational>(x).sign();
}

RealPoly hyperplane_to_poly(const std::vector<Rational>& coeffs, std::size_t d, unsigned t) {
  RealPoly p = RealPoly::constant(d, coeffs[0]);
  const auto monos = veronese_monomials(d, t);
  for (std::size_t k = 0; k < monos.size(); ++k) p.add_term(monos[k], coeffs[k + 1]);
  return p;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (r > (UINT64_MAX / std::max<std::uint64_t>(b, 1))) return UINT64_MAX;
    r *= b;
  }
  return r;
}

}  // namespace

std::string sign_key(const SignVector& s) {
  std::string k;
  for (auto v : s) k.push_back(v > 0 ? '+' : (v < 0 ? '-' : '0'));
  return k;
}

std::size_t PartitionResult::max_class() const {
  std::size_t m = 0;
  for (const auto& [k, n] : occupancy) m = std::max(m, n);
  return m;
}

int PartitionResult::product_degree() const { return product.total_degree(); }

double occupancy_bound(std::size_t m, double delta, std::size_t stages) {
  return std::pow(1.0 + delta, static_cast<double>(stages)) * static_cast<double>(m) /
         std::ldexp(1.0, static_cast<int>(stages));
}

std::vector<unsigned> stage_schedule(std::size_t d, unsigned r) {
  std::vector<unsigned> out;
  const std::uint64_t target = ipow(r, d);
  unsigned total = 0;
  for (std::size_t j = 1; j < 63; ++j) {
    const std::uint64_t need = std::uint64_t{1} << (j - 1);
    unsigned t = 1;
    while (veronese_dimension(d, t) < need) ++t;
    if (total + t > r) break;
    out.push_back(t);
    total += t;
    if ((std::uint64_t{1} << j) >= target) break;
  }
  return out;
}

SignVector sign_class(std::span<const Rational> point, const PartitionResult& result) {
  SignVector s;
  for (const auto& b : result.bisectors) s.push_back(static_cast<std::int8_t>(poly_sign(b, point)));
  return s;
}

PartitionResult polynomial_partition(const std::vector<RationalPoint>& points, unsigned r,
                                     const PartitionOptions& options) {
  if (r < 2) throw std::invalid_argument("polynomial_partition: r must be at least 2");
  PartitionResult out;
  out.dim = points.empty() ? 0 : points.front().size();
  for (const auto& p : points)
    if (p.size() != out.dim || p.empty()) throw std::invalid_argument("polynomial_partition: inconsistent dimension");
  out.r = r;
  out.delta = options.delta;
  out.product = RealPoly::constant(out.dim, Rational(1));
  out.signs.assign(points.size(), {});
  if (points.empty()) return out;

  const auto schedule = stage_schedule(out.dim, r);
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const unsigned t = schedule[j];
    std::map<SignVector, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& s = out.signs[i];
      if (std::find(s.begin(), s.end(), std::int8_t{0}) == s.end()) classes[s].push_back(i);
    }
    std::vector<std::vector<RationalPoint>> sets;
    for (const auto& [key, members] : classes) {
      if (members.size() < 2) continue;
      std::vector<RationalPoint> lifted;
      for (auto i : members) lifted.push_back(veronese_lift(points[i], t));
      sets.push_back(std::move(lifted));
    }
    if (sets.empty()) break;
    PartitionOptions stage_opt = options;
    stage_opt.seed = derive_seed(options.seed, "stage-" + std::to_string(j));
    const BisectionResult bis = ham_sandwich_bisect(sets, stage_opt);
    out.stages.push_back({t, sets.size(), bis.imbalance, bis.restart, bis.status});
    if (bis.status != SearchStatus::Ok) {
      out.status = SearchStatus::BudgetExhausted;
      break;
    }
    const RealPoly bisector = primitive(hyperplane_to_poly(bis.coeffs, out.dim, t));
    out.bisectors.push_back(bisector);
    out.product *= bisector;
    for (std::size_t i = 0; i < points.size(); ++i)
      out.signs[i].push_back(static_cast<std::int8_t>(poly_sign(bisector, points[i])));
  }

  for (const auto& s : out.signs) {
    if (std::find(s.begin(), s.end(), std::int8_t{0}) != s.end()) {
      ++out.on_surface;
    } else {
      ++out.interior;
      ++out.occupancy[sign_key(s)];
    }
  }
  return out;
}

namespace {

std::vector<RealPoly> restrict_bisectors(const PartitionResult& result, const std::vector<RealPoly>& images) {
  std::vector<RealPoly> out;
  for (const auto& b : result.bisectors) out.push_back(compose(b, images));
  return out;
}

}  // namespace

CrossingStats curve_crossings(const RealPoly& curve, const PartitionResult& result) {
  if (curve.num_vars() != 2 || result.dim != 2)
    throw std::invalid_argument("curve_crossings: planar curves need a planar partition");
  // Parametrize as a graph over one coordinate: t -> (t, h(t)) or (h(t), t).
  std::optional<std::vector<RealPoly>> images;
  for (std::size_t solved : {std::size_t{1}, std::size_t{0}}) {
    if (curve.degree_in(solved) != 1) continue;
    const auto coeffs = curve.coefficients_in(solved);
    if (!coeffs[1].is_constant()) continue;
    const RealPoly h = -(coeffs[0] * coeffs[1].constant_term().inverse());
    const std::size_t free = 1 - solved;
    std::vector<RealPoly> to_line(2, RealPoly(1));
    to_line[free] = RealPoly::variable(1, 0);
    to_line[solved] = RealPoly::constant(1, Rational(0));
    std::vector<RealPoly> img(2, RealPoly(1));
    img[free] = RealPoly::variable(1, 0);
    img[solved] = compose(h, to_line);
    images = std::move(img);
    break;
  }
  if (!images) throw std::invalid_argument("curve_crossings: planar curve must be a graph over one coordinate");

  CrossingStats st;
  st.kind = CrossingKind::Exact;
  const auto restricted = restrict_bisectors(result, *images);
  RealPoly prod = RealPoly::constant(1, Rational(1));
  for (const auto& r : restricted) {
    if (r.is_zero()) {
      st.contained = true;
      return st;
    }
    prod *= r;
  }
  std::vector<Rational> samples;
  if (prod.is_constant()) {
    samples.emplace_back(0);
  } else {
    const auto roots = isolate_all_real_roots(to_dense(prod));
    st.surface_crossings = roots.size();
    if (roots.empty()) {
      samples.emplace_back(0);
    } else {
      samples.push_back(roots.front().lo - Rational(1));
      for (std::size_t k = 0; k + 1 < roots.size(); ++k) samples.push_back((roots[k].hi + roots[k + 1].lo) / Rational(2));
      samples.push_back(roots.back().hi + Rational(1));
    }
  }
  std::set<std::string> seen;
  for (const auto& t : samples) {
    SignVector s;
    for (const auto& r : restricted) s.push_back(static_cast<std::int8_t>(evaluate_dense(to_dense(r), t).sign()));
    seen.insert(sign_key(s));
  }
  st.classes.assign(seen.begin(), seen.end());
  st.classes_visited = st.classes.size();
  return st;
}

CrossingStats curve_crossings(const ComplexCurve& curve, const PartitionResult& result, const SamplingOptions& sampling) {
  if (result.dim != 4) throw std::invalid_argument("curve_crossings: complex curves need a partition of R^4");
  if (sampling.grid < 2) throw std::invalid_argument("curve_crossings: grid must have at least 2 points per side");
  std::optional<std::size_t> solved;
  std::optional<ComplexPoly> g;
  for (std::size_t var : {std::size_t{1}, std::size_t{0}}) {
    const auto f = curve.f;
    if (f.degree_in(var) != 1) continue;
    const auto coeffs = f.coefficients_in(var);
    if (!coeffs[1].is_constant()) continue;
    g = -(coeffs[0] * coeffs[1].constant_term().inverse());
    solved = var;
    break;
  }
  if (!g) throw std::invalid_argument("curve_crossings: complex curve must be a graph over one coordinate");
  const std::size_t free = 1 - *solved;
  const RealPair uv = realify(*g);
  std::vector<RealPoly> images(4, RealPoly(4));
  images[2 * free] = RealPoly::variable(4, 2 * free);
  images[2 * free + 1] = RealPoly::variable(4, 2 * free + 1);
  images[2 * *solved] = uv.u;
  images[2 * *solved + 1] = uv.v;

  CrossingStats st;
  st.kind = CrossingKind::LowerBound;
  for (const auto& r : restrict_bisectors(result, images)) {
    if (r.is_zero()) {
      st.contained = true;
      return st;
    }
  }
  std::set<std::string> seen;
  const Rational step = Rational(2) * sampling.half_width / Rational(static_cast<long>(sampling.grid - 1));
  for (std::size_t a = 0; a < sampling.grid; ++a) {
    for (std::size_t b = 0; b < sampling.grid; ++b) {
      const GaussianRational z(-sampling.half_width + step * Rational(static_cast<long>(a)),
                               -sampling.half_width + step * Rational(static_cast<long>(b)));
      const std::vector<GaussianRational> at{z, z};
      const GaussianRational w = g->evaluate<GaussianRational>(at);
      ComplexPoint2 zp;
      zp[free] = z;
      zp[*solved] = w;
      const Point4 x = iota(zp);
      const SignVector s = sign_class(std::span<const Rational>(x), result);
      if (std::find(s.begin(), s.end(), std::int8_t{0}) == s.end()) seen.insert(sign_key(s));
    }
  }
  st.classes.assign(seen.begin(), seen.end());
  st.classes_visited = st.classes.size();
  return st;
}

}  // namespace incwb
