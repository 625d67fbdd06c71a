#include "incwb/exact/matrix.hpp"

#include <utility>

namespace incwb {

template <ExactField F>
ExactMatrix<F>::ExactMatrix(std::initializer_list<std::vector<F>> rows)
    : ExactMatrix(from_rows(std::vector<std::vector<F>>(rows))) {}

template <ExactField F>
ExactMatrix<F> ExactMatrix<F>::from_rows(const std::vector<std::vector<F>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ExactMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <ExactField F>
ExactMatrix<F> ExactMatrix<F>::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

// In-place Bareiss forward elimination. Returns the rank; `sign` tracks row
// swaps so that the determinant of a square matrix is sign * a(n-1, n-1).
template <ExactField F>
std::size_t bareiss(ExactMatrix<F>& a, int& sign) {
  sign = 1;
  F prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t k = c + 1; k < a.cols(); ++k) a(i, k) = (a(r, c) * a(i, k) - a(i, c) * a(r, k)) / prev;
      a(i, c) = F(0);
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

}  // namespace

template <ExactField F>
std::size_t rank(const ExactMatrix<F>& m) {
  ExactMatrix<F> a = m;
  int sign = 1;
  return bareiss(a, sign);
}

template <ExactField F>
F determinant(const ExactMatrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (m.rows() == 0) return F(1);
  ExactMatrix<F> a = m;
  int sign = 1;
  if (bareiss(a, sign) < m.rows()) return F(0);
  F d = a(m.rows() - 1, m.cols() - 1);
  return sign < 0 ? -d : d;
}

template <ExactField F>
ExactMatrix<F> rref(const ExactMatrix<F>& m, std::vector<std::size_t>* pivots) {
  ExactMatrix<F> a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
    const F inv = F(1) / a(r, c);
    for (std::size_t k = c; k < a.cols(); ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const F f = a(i, c);
      for (std::size_t k = c; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    if (pivots != nullptr) pivots->push_back(c);
    ++r;
  }
  return a;
}

template <ExactField F>
std::vector<std::vector<F>> kernel_basis(const ExactMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  const ExactMatrix<F> a = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <ExactField F>
std::optional<std::vector<F>> solve(const ExactMatrix<F>& a, std::span<const F> b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  ExactMatrix<F> aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  std::vector<std::size_t> pivots;
  const ExactMatrix<F> red = rref(aug, &pivots);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  std::vector<F> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = red(r, n);
  return x;
}

template <ExactField F>
bool same_span(const std::vector<std::vector<F>>& a, const std::vector<std::vector<F>>& b) {
  std::vector<std::vector<F>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  if (both.empty()) return true;
  const std::size_t ra = a.empty() ? 0 : rank(ExactMatrix<F>::from_rows(a));
  const std::size_t rb = b.empty() ? 0 : rank(ExactMatrix<F>::from_rows(b));
  return ra == rb && rank(ExactMatrix<F>::from_rows(both)) == ra;
}

#define INCWB_INSTANTIATE_MATRIX(F)                                                     \
  template class ExactMatrix<F>;                                                        \
  template std::size_t rank(const ExactMatrix<F>&);                                     \
  template F determinant(const ExactMatrix<F>&);                                        \
  template ExactMatrix<F> rref(const ExactMatrix<F>&, std::vector<std::size_t>*);       \
  template std::vector<std::vector<F>> kernel_basis(const ExactMatrix<F>&);             \
  template std::optional<std::vector<F>> solve(const ExactMatrix<F>&, std::span<const F>); \
  template bool same_span(const std::vector<std::vector<F>>&, const std::vector<std::vector<F>>&);

INCWB_INSTANTIATE_MATRIX(Rational)
INCWB_INSTANTIATE_MATRIX(GaussianRational)

#undef INCWB_INSTANTIATE_MATRIX

}  // namespace incwb
