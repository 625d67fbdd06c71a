#pragma once

#include "incwb/foliation/foliation.hpp"
#include "incwb/incidence/configuration.hpp"

#include <cstdint>
#include <string>

namespace incwb {

/// A generator name plus its parameters; the same spec always yields the same
/// Configuration. Parameter keys per generator:
///   grid-lines: N
///   unit-circles: N
///   complex-lines: a, b
///   leaf: g, count, samples
///   random: field, m, n, degree, range, max_den
///   uniform: m, bits
///   box-lines: count
struct GeneratorSpec {
  std::string name;
  Json params = Json::object();
  std::uint64_t seed = 0;
};

/// Points {1..N} x {1..2N^2}, lines y = a x + b for a in 1..N, b in 1..N^2.
Configuration gen_grid_lines(std::size_t N);

/// N^2 points and N^2 unit circles centred on distinct points of a seeded
/// sample of the lattice (Z/5)^2; certified k = 3, s = 2.
Configuration gen_unit_circles(std::size_t N, std::uint64_t seed);

/// {start + j step : 0 <= j < size}
struct Progression {
  GaussianRational start;
  GaussianRational step;
  std::size_t size = 0;
};

/// Points A x B; lines are the images of the index lines j2 = s j1 + t for
/// s, t in 0..|B|-1. Certified k = 2, s = 1.
Configuration complex_lines_product(const Progression& A, const Progression& B);
/// Seeded progressions with Gaussian-rational start and nonzero step.
Configuration gen_complex_lines_product(std::size_t a_size, std::size_t b_size, std::uint64_t seed);

struct LeafFamily {
  Hypersurface surface;
  Configuration config;
  /// Leaf constants c, in curve order.
  std::vector<Rational> constants;
};

/// P = Im(z2 - g(z1)) with leaves z2 = g(z1) + c for `count` distinct rational c
/// and `samples` seeded points per leaf.
LeafFamily gen_leaf_family(const ComplexPoly& g, std::size_t count, std::uint64_t seed, std::size_t samples = 10);

struct RandomSpec {
  GroundField field = GroundField::R2;
  std::size_t m = 0;
  std::size_t n = 0;
  unsigned degree = 2;
  /// Numerators in [-range, range], denominators in [1, max_den].
  long range = 20;
  long max_den = 4;
  std::uint64_t seed = 0;
};

/// Uniform rational points in a box and random curves of degree 1..degree; no certification.
Configuration gen_random(const RandomSpec& spec);

/// m distinct points (a / 2^bits, b / 2^bits) drawn uniformly from [0, 1)^2; no curves.
Configuration gen_uniform_points(std::size_t m, std::uint64_t seed, unsigned bits = 20);

/// `count` distinct lines, each through two seeded points of [0, 1]^2 with
/// denominator 2^10; no points.
Configuration gen_box_lines(std::size_t count, std::uint64_t seed);

/// Dispatches on spec.name; throws std::invalid_argument for unknown names or bad parameters.
Configuration generate(const GeneratorSpec& spec);

inline constexpr std::size_t kRegenerationBudget = 50;

}  // namespace incwb
