#pragma once

// Textual grammar shared by the CLI:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | identifier | '(' expr ')'
//
// Identifiers: `nu`, `c`, the scalar generator name, periodic generator names,
// `tau` (operators only) and `t` (polynomials in A only). Rationals are written p/q.

#include <gmpxx.h>

#include <string_view>

#include "gammac/carlitz.hpp"
#include "gammac/skew.hpp"
#include "gammac/tower.hpp"

namespace gammac {

TowerElement parse_element(const TowerHandle& tower, std::string_view text);
SkewOperator parse_operator(const TowerHandle& tower, std::string_view text);
CarlitzPoly parse_carlitz(const TowerHandle& tower, std::string_view text);
/// Product of factors, e.g. `(t^2-2)^1 * (t)^3`; constants go to the unit, factors
/// are made monic and equal factors merged.
FactoredPoly parse_factored(const TowerHandle& tower, std::string_view text);
/// Polynomial with rational coefficients in the single variable `var`.
QPoly parse_rational_poly(std::string_view text, std::string_view var);

}  // namespace gammac
