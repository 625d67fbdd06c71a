#pragma once

#include "incwb/exact/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace incwb {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  ExactMatrix(std::initializer_list<std::vector<F>> rows);
  static ExactMatrix from_rows(const std::vector<std::vector<F>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  [[nodiscard]] std::vector<F> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }
  [[nodiscard]] ExactMatrix transpose() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

/// Rank by fraction-free (Bareiss) elimination.
template <ExactField F>
std::size_t rank(const ExactMatrix<F>& m);

template <ExactField F>
F determinant(const ExactMatrix<F>& m);

/// Reduced row echelon form; pivot columns are appended to `pivots` if given.
template <ExactField F>
ExactMatrix<F> rref(const ExactMatrix<F>& m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of {x : m x = 0}, one vector per free column, in column order.
template <ExactField F>
std::vector<std::vector<F>> kernel_basis(const ExactMatrix<F>& m);

/// Unique solution of a square nonsingular system, std::nullopt if singular.
template <ExactField F>
std::optional<std::vector<F>> solve(const ExactMatrix<F>& a, std::span<const F> b);

/// True iff span(a) == span(b) for two lists of vectors of equal length.
template <ExactField F>
bool same_span(const std::vector<std::vector<F>>& a, const std::vector<std::vector<F>>& b);

template <ExactField F>
F dot(std::span<const F> a, std::span<const F> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  F acc(0);
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

template <ExactField F>
F dot(const std::vector<F>& a, const std::vector<F>& b) {
  return dot<F>(std::span<const F>(a), std::span<const F>(b));
}

extern template class ExactMatrix<Rational>;
extern template class ExactMatrix<GaussianRational>;

}  // namespace incwb
