#pragma once

#include "incwb/exact/multipoly.hpp"

#include <span>
#include <string>
#include <string_view>

namespace incwb {

/// Parses expressions such as "z1^3 + i*z1 - 2/3" over Q(i).
/// Supports + - * / ^ (non-negative integer powers), parentheses, implicit
/// multiplication ("2z1"), decimal and integer literals, and the constant i.
/// Division is only allowed by nonzero constants.
ComplexPoly parse_polynomial(std::string_view text, std::span<const std::string> variables);

/// Same grammar, rejecting non-real coefficients.
RealPoly parse_real_polynomial(std::string_view text, std::span<const std::string> variables);

}  // namespace incwb
