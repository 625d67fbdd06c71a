#include "incwb/exact/algebra.hpp"

#include <stdexcept>

namespace incwb {

template <ExactField F>
MultiPoly<F> polynomial_determinant(std::vector<std::vector<MultiPoly<F>>> m, std::size_t num_vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly<F>::constant(num_vars, F(1));
  bool negate = false;
  MultiPoly<F> prev = MultiPoly<F>::constant(num_vars, F(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return MultiPoly<F>(num_vars);
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly<F> num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = exact_divide(num, prev);
        if (!q) throw std::logic_error("polynomial_determinant: Bareiss division was not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly<F>(num_vars);
    }
    prev = m[k][k];
  }
  MultiPoly<F> det = m[n - 1][n - 1];
  return negate ? -det : det;
}

template <ExactField F>
MultiPoly<F> resultant(const MultiPoly<F>& f, const MultiPoly<F>& g, std::size_t var) {
  if (f.num_vars() != g.num_vars()) throw std::invalid_argument("resultant: variable count mismatch");
  if (var >= f.num_vars()) throw std::out_of_range("resultant: variable index out of range");
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  const int df = f.degree_in(var);
  const int dg = g.degree_in(var);
  if (df == 0 && dg == 0) throw std::invalid_argument("resultant: both polynomials constant in the eliminated variable");
  const std::size_t nv = f.num_vars();
  const auto cf = f.coefficients_in(var);
  const auto cg = g.coefficients_in(var);
  const std::size_t size = static_cast<std::size_t>(df + dg);
  std::vector<std::vector<MultiPoly<F>>> syl(size, std::vector<MultiPoly<F>>(size, MultiPoly<F>(nv)));
  // Rows hold coefficients from the highest power down, shifted per row.
  for (int r = 0; r < dg; ++r)
    for (int k = 0; k <= df; ++k) syl[r][r + k] = cf[df - k];
  for (int r = 0; r < df; ++r)
    for (int k = 0; k <= dg; ++k) syl[dg + r][r + k] = cg[dg - k];
  return polynomial_determinant(std::move(syl), nv);
}

template MultiPoly<Rational> polynomial_determinant(std::vector<std::vector<MultiPoly<Rational>>>, std::size_t);
template MultiPoly<GaussianRational> polynomial_determinant(std::vector<std::vector<MultiPoly<GaussianRational>>>,
                                                            std::size_t);
template MultiPoly<Rational> resultant(const MultiPoly<Rational>&, const MultiPoly<Rational>&, std::size_t);
template MultiPoly<GaussianRational> resultant(const MultiPoly<GaussianRational>&, const MultiPoly<GaussianRational>&,
                                               std::size_t);

}  // namespace incwb
