#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "goodred/homogeneous_poly.hpp"

namespace goodred {

using VariableNames = std::array<std::string, 4>;
inline const VariableNames kDefaultVariables = {"x", "y", "z", "w"};

/// Grammar: terms joined by '+'/'-'; a term is an optional rational
/// coefficient (n or n/m), optional '*', then variables with optional '^k'.
/// Adjacent variable names without '*' are accepted when they split
/// unambiguously into declared names. Whitespace is ignored.
HomogeneousPoly parsePolynomial(std::string_view text, const VariableNames& vars = kDefaultVariables,
                                std::optional<int> expectedDegree = std::nullopt);

/// Parses "n" or "n/m" (optionally signed) into an exact rational.
mpq_class parseRational(std::string_view text);

}  // namespace goodred
