#include "incwb/partition/partition.hpp"

#include <stdexcept>

namespace incwb {

namespace {

void monomials_of_degree(std::size_t d, std::uint32_t e, Monomial& cur, std::size_t pos, std::vector<Monomial>& out) {
  if (pos + 1 == d) {
    cur[pos] = e;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t k = e + 1; k-- > 0;) {
    cur[pos] = k;
    monomials_of_degree(d, e - k, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<Monomial> veronese_monomials(std::size_t d, unsigned t) {
  if (d == 0) throw std::invalid_argument("veronese_monomials: dimension must be positive");
  if (t == 0) throw std::invalid_argument("veronese_monomials: degree must be at least 1");
  std::vector<Monomial> out;
  Monomial cur(d, 0);
  for (std::uint32_t e = 1; e <= t; ++e) monomials_of_degree(d, e, cur, 0, out);
  return out;
}

std::size_t veronese_dimension(std::size_t d, unsigned t) {
  // C(d + t, d) - 1
  std::size_t c = 1;
  for (std::size_t k = 1; k <= d; ++k) c = c * (t + k) / k;
  return c - 1;
}

RationalPoint veronese_lift(std::span<const Rational> point, unsigned t) {
  const std::size_t d = point.size();
  RationalPoint out;
  for (const auto& m : veronese_monomials(d, t)) {
    Rational v(1);
    for (std::size_t k = 0; k < d; ++k)
      for (std::uint32_t e = 0; e < m[k]; ++e) v *= point[k];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace incwb
