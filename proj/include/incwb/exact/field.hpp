#pragma once

#include "incwb/exact/gaussian.hpp"
#include "incwb/exact/rational.hpp"

#include <concepts>
#include <string_view>

namespace incwb {

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr std::string_view name = "Q";
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational conj(const Rational& x) { return x; }
};

template <>
struct FieldTraits<GaussianRational> {
  static constexpr std::string_view name = "Q(i)";
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
};

/// The two coefficient fields the library computes over.
template <class F>
concept ExactField = std::same_as<F, Rational> || std::same_as<F, GaussianRational>;

template <ExactField F>
bool is_zero(const F& x) {
  return FieldTraits<F>::is_zero(x);
}

inline GaussianRational to_gaussian(const Rational& x) { return GaussianRational(x); }
inline const GaussianRational& to_gaussian(const GaussianRational& x) { return x; }

}  // namespace incwb
