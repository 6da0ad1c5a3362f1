#pragma once

#include <functional>
#include <optional>

#include "gammac/tower.hpp"

namespace gammac::detail {

/// gcd of a and b in R[x_var], where R = Q[x_1, ..., x_{var-1}] and both inputs
/// have trivial denominators and rational scalars. The result is correct up to a
/// factor in R; `divides` must confirm that a candidate divides both inputs.
/// Empty when the modular computation gives up.
std::optional<TowerElement::Poly> modular_gcd(const TowerElement::Poly& a, const TowerElement::Poly& b, int var,
                                              const std::function<bool(const TowerElement::Poly&)>& divides);

}  // namespace gammac::detail
