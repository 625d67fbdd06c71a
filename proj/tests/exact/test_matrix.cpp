#include "incwb/exact/matrix.hpp"
#include "random_exact.hpp"

#include <doctest.h>

#include <algorithm>

using namespace incwb;

namespace {

// Oracle: plain Gauss-Jordan rank over the field, without Bareiss updates.
template <class F>
std::size_t oracle_rank(std::vector<std::vector<F>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    auto it = std::find_if(rows.begin() + static_cast<long>(r), rows.end(), [&](auto& row) { return !is_zero(row[c]); });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<long>(r), it);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const F f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("Bareiss rank agrees with elimination oracle") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const std::size_t cols = static_cast<std::size_t>(rng.uniform_int(1, 5));
    std::vector<std::vector<GaussianRational>> m(rows);
    for (auto& row : m) {
      for (std::size_t c = 0; c < cols; ++c)
        row.push_back(rng.uniform_int(0, 2) == 0 ? GaussianRational(0) : testing::random_gaussian(rng, 3, 3));
    }
    if (rows > 2 && trial % 2 == 0) {
      for (std::size_t c = 0; c < cols; ++c) m[2][c] = m[0][c] * GaussianRational(2) - m[1][c];
    }
    const auto mat = ExactMatrix<GaussianRational>::from_rows(m);
    CHECK(rank(mat) == oracle_rank(m));
    CHECK(rank(mat.transpose()) == rank(mat));
  }
}

TEST_CASE("determinant and solve") {
  const ExactMatrix<Rational> a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  CHECK(determinant(a) == Rational(18));
  const std::vector<Rational> b{1, 2, 3};
  const auto x = solve(a, std::span<const Rational>(b));
  REQUIRE(x.has_value());
  for (std::size_t r = 0; r < 3; ++r) CHECK(dot(a.row(r), *x) == b[r]);
  const ExactMatrix<Rational> singular{{1, 2}, {2, 4}};
  CHECK(determinant(singular) == Rational(0));
  CHECK_FALSE(solve(singular, std::span<const Rational>(std::vector<Rational>{1, 1})).has_value());
}

TEST_CASE("kernel basis spans the null space") {
  const ExactMatrix<Rational> m{{0, -1, 0, 1}, {1, 0, 1, 0}};
  const auto k = kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) {
    CHECK(dot(m.row(0), v) == Rational(0));
    CHECK(dot(m.row(1), v) == Rational(0));
  }
  CHECK_FALSE(same_span<Rational>(k, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  CHECK(same_span<Rational>(k, {{-1, 0, 1, 0}, {0, 1, 0, 1}}));
}
