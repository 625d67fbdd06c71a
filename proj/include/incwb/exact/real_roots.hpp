#pragma once

#include "incwb/exact/multipoly.hpp"

#include <vector>

namespace incwb {

/// Dense univariate polynomial over Q, coefficient k multiplies x^k.
using DenseUnivariate = std::vector<Rational>;

/// Closed interval [lo, hi] containing exactly one real root; lo == hi means
/// the root is the rational lo itself.
struct RootInterval {
  Rational lo;
  Rational hi;
  [[nodiscard]] bool exact() const { return lo == hi; }
  friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

DenseUnivariate to_dense(const RealPoly& p);
RealPoly from_dense(const DenseUnivariate& c);
Rational evaluate_dense(const DenseUnivariate& c, const Rational& x);
/// Square-free part p / gcd(p, p'), made monic.
DenseUnivariate square_free_part(const DenseUnivariate& p);
/// 1 + max |a_k / a_n|: every real root lies in (-bound, bound).
Rational cauchy_root_bound(const DenseUnivariate& p);

/// Number of distinct real roots in the half-open interval (lo, hi].
std::size_t count_distinct_roots(const DenseUnivariate& p, const Rational& lo, const Rational& hi);

/// Isolates the distinct real roots of a nonzero univariate polynomial lying
/// in the closed query interval [lo, hi], using a Sturm sequence of the
/// square-free part. Intervals are pairwise disjoint, sorted, and refined to
/// width < 2^-precision_bits unless the root was hit exactly.
std::vector<RootInterval> isolate_real_roots(const RealPoly& p, const Rational& lo, const Rational& hi,
                                             unsigned precision_bits = 30);
std::vector<RootInterval> isolate_real_roots(const DenseUnivariate& p, const Rational& lo, const Rational& hi,
                                             unsigned precision_bits = 30);
/// All real roots (query interval from the Cauchy bound).
std::vector<RootInterval> isolate_all_real_roots(const DenseUnivariate& p, unsigned precision_bits = 30);

}  // namespace incwb
