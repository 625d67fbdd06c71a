#include "incwb/configurations/configurations.hpp"

#include "incwb/exact/parse.hpp"
#include "incwb/incidence/incidence.hpp"
#include "incwb/util/rng.hpp"

#include <set>
#include <stdexcept>

namespace incwb {

namespace {

const std::vector<std::string> kZ{"z1", "z2"};

ComplexPoly z(std::size_t k) { return ComplexPoly::variable(2, k); }
ComplexPoly constant(const GaussianRational& c) { return ComplexPoly::constant(2, c); }

std::vector<GaussianRational> real_point(const Rational& x, const Rational& y) {
  return {GaussianRational(x), GaussianRational(y)};
}

Rational draw_rational(Rng& rng, long range, long max_den) {
  return Rational(rng.uniform_int(-range, range), rng.uniform_int(1, max_den));
}

GaussianRational draw_gaussian(Rng& rng, long range, long max_den) {
  return {draw_rational(rng, range, max_den), draw_rational(rng, range, max_den)};
}

bool certified(const Configuration& c, std::size_t k, std::size_t s) {
  const auto M = build_matrix(c);
  return certify_dof(M, k, s).status == DofStatus::Certified;
}

}  // namespace

Configuration gen_grid_lines(std::size_t N) {
  if (N < 1) throw std::invalid_argument("gen_grid_lines: N must be at least 1");
  Configuration c;
  c.field = GroundField::R2;
  c.metadata = {"grid-lines", Json{{"N", N}}, 0};
  const long n = static_cast<long>(N);
  for (long x = 1; x <= n; ++x)
    for (long y = 1; y <= 2 * n * n; ++y) c.points.push_back(real_point(Rational(x), Rational(y)));
  for (long a = 1; a <= n; ++a)
    for (long b = 1; b <= n * n; ++b)
      c.curves.push_back(z(1) - constant(GaussianRational(Rational(a))) * z(0) - constant(GaussianRational(Rational(b))));
  return c;
}

Configuration gen_unit_circles(std::size_t N, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("gen_unit_circles: N must be at least 1");
  const std::size_t count = N * N;
  // Box of 4 N^2 lattice sites: about 3 expected incidences per circle.
  const long side = 2 * static_cast<long>(N);
  for (std::size_t attempt = 0; attempt < kRegenerationBudget; ++attempt) {
    Rng rng(derive_seed(derive_seed(seed, "unit-circles"), static_cast<std::uint64_t>(attempt)));
    auto sample_sites = [&] {
      std::set<std::pair<long, long>> chosen;
      std::vector<std::pair<long, long>> order;
      while (order.size() < count) {
        const std::pair<long, long> site{rng.uniform_int(0, side - 1), rng.uniform_int(0, side - 1)};
        if (chosen.insert(site).second) order.push_back(site);
      }
      return order;
    };
    const auto point_sites = sample_sites();
    const auto centre_sites = sample_sites();

    Configuration c;
    c.field = GroundField::R2;
    c.metadata = {"unit-circles", Json{{"N", N}}, seed};
    for (const auto& [i, j] : point_sites) c.points.push_back(real_point(Rational(i, 5), Rational(j, 5)));
    for (const auto& [i, j] : centre_sites) {
      const ComplexPoly dx = z(0) - constant(GaussianRational(Rational(i, 5)));
      const ComplexPoly dy = z(1) - constant(GaussianRational(Rational(j, 5)));
      c.curves.push_back(dx * dx + dy * dy - constant(GaussianRational(1)));
    }
    if (certified(c, 3, 2)) return c;
  }
  throw std::runtime_error("gen_unit_circles: certification failed for every regenerated seed");
}

Configuration complex_lines_product(const Progression& A, const Progression& B) {
  if (A.size < 1 || B.size < 1) throw std::invalid_argument("complex_lines_product: sizes must be at least 1");
  if (A.step.is_zero() || B.step.is_zero()) throw std::invalid_argument("complex_lines_product: zero step");
  Configuration c;
  c.field = GroundField::C2;
  for (std::size_t j1 = 0; j1 < A.size; ++j1)
    for (std::size_t j2 = 0; j2 < B.size; ++j2)
      c.points.push_back({A.start + A.step * GaussianRational(static_cast<long>(j1)),
                          B.start + B.step * GaussianRational(static_cast<long>(j2))});
  // j2 = s j1 + t  <=>  z2 = B.start + B.step (s (z1 - A.start) / A.step + t).
  const GaussianRational ratio = B.step / A.step;
  for (std::size_t s = 0; s < B.size; ++s)
    for (std::size_t t = 0; t < B.size; ++t) {
      const GaussianRational S(static_cast<long>(s)), T(static_cast<long>(t));
      const GaussianRational slope = ratio * S;
      const GaussianRational offset = B.start + B.step * T - slope * A.start;
      c.curves.push_back(z(1) - constant(slope) * z(0) - constant(offset));
    }
  return c;
}

Configuration gen_complex_lines_product(std::size_t a_size, std::size_t b_size, std::uint64_t seed) {
  for (std::size_t attempt = 0; attempt < kRegenerationBudget; ++attempt) {
    Rng rng(derive_seed(derive_seed(seed, "complex-lines"), static_cast<std::uint64_t>(attempt)));
    auto progression = [&](std::size_t size) {
      Progression p{draw_gaussian(rng, 9, 7), GaussianRational(0), size};
      while (p.step.is_zero()) p.step = draw_gaussian(rng, 9, 7);
      return p;
    };
    const Progression A = progression(a_size);
    const Progression B = progression(b_size);
    Configuration c = complex_lines_product(A, B);
    c.metadata = {"complex-lines", Json{{"a", a_size}, {"b", b_size}}, seed};
    if (!has_duplicates(c) && certified(c, 2, 1)) return c;
  }
  throw std::runtime_error("gen_complex_lines_product: certification failed for every regenerated seed");
}

LeafFamily gen_leaf_family(const ComplexPoly& g, std::size_t count, std::uint64_t seed, std::size_t samples) {
  if (count < 1) throw std::invalid_argument("gen_leaf_family: count must be at least 1");
  if (g.num_vars() != 2 || g.degree_in(1) > 0)
    throw std::invalid_argument("gen_leaf_family: g must be a polynomial in z1 alone");
  const ComplexPoly base = z(1) - g;
  LeafFamily fam;
  fam.surface = Hypersurface(realify(base).v);

  Rng rng(derive_seed(seed, "leaf"));
  std::set<Rational> used;
  while (fam.constants.size() < count) {
    const Rational c = draw_rational(rng, 9, 7);
    if (used.insert(c).second) fam.constants.push_back(c);
  }
  Configuration& cfg = fam.config;
  cfg.field = GroundField::C2;
  cfg.metadata = {"leaf", Json{{"g", g.to_string(kZ)}, {"count", count}, {"samples", samples}}, seed};
  cfg.hypersurface = fam.surface.P;
  for (const Rational& c : fam.constants) {
    const ComplexPoly leaf = base - constant(GaussianRational(c));
    const ContainmentResult contained = containment_check(fam.surface, ComplexCurve(leaf));
    if (contained.verdict != Containment::Contained)
      throw std::logic_error("gen_leaf_family: leaf is not contained in the hypersurface");
    cfg.curves.push_back(leaf);
    // Distinct z1 per leaf; distinct leaves are disjoint, so no sample repeats.
    std::set<std::string> seen;
    while (seen.size() < samples) {
      const GaussianRational z1 = draw_gaussian(rng, 9, 7);
      if (!seen.insert(z1.to_string()).second) continue;
      const std::vector<GaussianRational> at{z1, GaussianRational(0)};
      cfg.points.push_back({z1, g.evaluate(at) + GaussianRational(c)});
    }
  }
  cfg = deduplicate(std::move(cfg));
  return fam;
}

Configuration gen_random(const RandomSpec& spec) {
  if (spec.range < 0 || spec.max_den < 1) throw std::invalid_argument("gen_random: bad coordinate box");
  if (spec.degree < 1) throw std::invalid_argument("gen_random: degree must be at least 1");
  Rng rng(derive_seed(spec.seed, "random"));
  const bool real = spec.field == GroundField::R2;
  auto coord = [&] {
    return real ? GaussianRational(draw_rational(rng, spec.range, spec.max_den))
                : draw_gaussian(rng, spec.range, spec.max_den);
  };
  Configuration c;
  c.field = spec.field;
  c.metadata = {"random",
                Json{{"field", std::string(to_string(spec.field))},
                     {"m", spec.m},
                     {"n", spec.n},
                     {"degree", spec.degree},
                     {"range", spec.range},
                     {"max_den", spec.max_den}},
                spec.seed};
  for (std::size_t i = 0; i < spec.m; ++i) c.points.push_back({coord(), coord()});
  for (std::size_t j = 0; j < spec.n; ++j) {
    ComplexPoly f(2);
    while (f.total_degree() < 1) {
      f = ComplexPoly(2);
      for (unsigned d = 0; d <= spec.degree; ++d)
        for (unsigned e = 0; e <= d; ++e) f.add_term(Monomial{d - e, e}, coord());
    }
    c.curves.push_back(std::move(f));
  }
  return deduplicate(std::move(c));
}

Configuration gen_uniform_points(std::size_t m, std::uint64_t seed, unsigned bits) {
  if (bits < 1 || bits > 62) throw std::invalid_argument("gen_uniform_points: bits must lie in 1..62");
  const auto top = static_cast<std::int64_t>((std::uint64_t{1} << bits) - 1);
  if (bits < 31 && m > (std::uint64_t{1} << (2 * bits - 1)))
    throw std::invalid_argument("gen_uniform_points: too many points for the lattice");
  Rng rng(derive_seed(seed, "uniform"));
  const mpz_class den = mpz_class(1) << bits;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  Configuration c;
  c.field = GroundField::R2;
  c.metadata = {"uniform", Json{{"m", m}, {"bits", bits}}, seed};
  while (c.points.size() < m) {
    const std::pair<std::int64_t, std::int64_t> site{rng.uniform_int(0, top), rng.uniform_int(0, top)};
    if (!seen.insert(site).second) continue;
    c.points.push_back(real_point(Rational(mpz_class(std::to_string(site.first)), den),
                                  Rational(mpz_class(std::to_string(site.second)), den)));
  }
  return c;
}

Configuration gen_box_lines(std::size_t count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "box-lines"));
  Configuration c;
  c.field = GroundField::R2;
  c.metadata = {"box-lines", Json{{"count", count}}, seed};
  std::set<std::string> seen;
  auto coord = [&] { return Rational(rng.uniform_int(0, 1024), 1024); };
  while (c.curves.size() < count) {
    const Rational x0 = coord(), y0 = coord(), x1 = coord(), y1 = coord();
    if (x0 == x1 && y0 == y1) continue;
    // (y1 - y0)(x - x0) - (x1 - x0)(y - y0) = 0
    const ComplexPoly f = constant(GaussianRational(y1 - y0)) * (z(0) - constant(GaussianRational(x0))) -
                          constant(GaussianRational(x1 - x0)) * (z(1) - constant(GaussianRational(y0)));
    const ComplexPoly key = primitive(f);
    if (seen.insert(to_json(key).dump()).second) c.curves.push_back(key);
  }
  return c;
}

Configuration generate(const GeneratorSpec& spec) {
  const Json& p = spec.params;
  auto size = [&](const char* key) {
    if (!p.contains(key)) throw std::invalid_argument(spec.name + ": missing parameter '" + key + "'");
    const auto v = p.at(key).get<long long>();
    if (v < 1) throw std::invalid_argument(spec.name + ": parameter '" + key + "' must be at least 1");
    return static_cast<std::size_t>(v);
  };
  if (spec.name == "grid-lines") return gen_grid_lines(size("N"));
  if (spec.name == "unit-circles") return gen_unit_circles(size("N"), spec.seed);
  if (spec.name == "complex-lines") return gen_complex_lines_product(size("a"), size("b"), spec.seed);
  if (spec.name == "leaf") {
    if (!p.contains("g")) throw std::invalid_argument("leaf: missing parameter 'g'");
    const ComplexPoly g = parse_polynomial(p.at("g").get<std::string>(), kZ);
    const std::size_t samples = p.contains("samples") ? size("samples") : 10;
    return gen_leaf_family(g, size("count"), spec.seed, samples).config;
  }
  if (spec.name == "uniform") return gen_uniform_points(size("m"), spec.seed, p.value("bits", 20U));
  if (spec.name == "box-lines") return gen_box_lines(size("count"), spec.seed);
  if (spec.name == "random") {
    RandomSpec r;
    r.field = ground_field_from_string(p.value("field", std::string("R2")));
    r.m = p.value("m", std::size_t{0});
    r.n = p.value("n", std::size_t{0});
    r.degree = p.value("degree", 2U);
    r.range = p.value("range", 20L);
    r.max_den = p.value("max_den", 4L);
    r.seed = spec.seed;
    return gen_random(r);
  }
  throw std::invalid_argument("unknown generator '" + spec.name + "'");
}

}  // namespace incwb
