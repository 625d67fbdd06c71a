#pragma once

#include "incwb/exact/matrix.hpp"
#include "incwb/exact/multipoly.hpp"

#include <span>
#include <vector>

namespace incwb {

/// Rank of the stacked gradient matrix [grad f_1(point); ...; grad f_l(point)].
/// An empty list has rank 0.
template <ExactField F, ExactField E = F>
std::size_t jacobian_rank(std::span<const MultiPoly<F>> polys, std::span<const E> point) {
  if (polys.empty()) return 0;
  std::vector<std::vector<E>> rows;
  for (const auto& p : polys) {
    if (p.num_vars() != polys.front().num_vars())
      throw std::invalid_argument("jacobian_rank: polynomials disagree on variable count");
    rows.push_back(gradient<F, E>(p, point));
  }
  return rank(ExactMatrix<E>::from_rows(rows));
}

/// Sylvester resultant of f and g with respect to variable `var`. The result
/// keeps the same variable count, with `var` absent. It is the zero polynomial
/// iff f and g share a factor of positive degree in `var`.
template <ExactField F>
MultiPoly<F> resultant(const MultiPoly<F>& f, const MultiPoly<F>& g, std::size_t var);

/// Determinant of a square matrix of polynomials (fraction-free elimination
/// with exact polynomial division).
template <ExactField F>
MultiPoly<F> polynomial_determinant(std::vector<std::vector<MultiPoly<F>>> m, std::size_t num_vars);

extern template MultiPoly<Rational> resultant(const MultiPoly<Rational>&, const MultiPoly<Rational>&, std::size_t);
extern template MultiPoly<GaussianRational> resultant(const MultiPoly<GaussianRational>&,
                                                      const MultiPoly<GaussianRational>&, std::size_t);

}  // namespace incwb
