#pragma once

// The skew polynomial ring F[tau] over a tower, with tau * f = tau(f) * tau.

#include <optional>
#include <string>
#include <vector>

#include "gammac/exact_matrix.hpp"
#include "gammac/tower.hpp"

namespace gammac {

class SkewOperator {
 public:
  explicit SkewOperator(TowerHandle tower);  // zero operator
  SkewOperator(TowerHandle tower, std::vector<TowerElement> coefficients);
  SkewOperator(TowerHandle tower, TowerElement constant);

  /// tau^k.
  static SkewOperator tau(TowerHandle tower, std::size_t k = 1);

  const TowerHandle& tower() const noexcept { return tower_; }
  /// Empty for the zero operator.
  std::optional<std::size_t> degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<TowerElement>& coefficients() const noexcept { return coeffs_; }
  TowerElement coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : TowerElement(); }
  const TowerElement& leading() const;

  friend SkewOperator operator+(const SkewOperator& a, const SkewOperator& b);
  friend SkewOperator operator-(const SkewOperator& a, const SkewOperator& b);
  friend SkewOperator operator-(const SkewOperator& a);
  friend SkewOperator operator*(const SkewOperator& a, const SkewOperator& b);
  friend SkewOperator operator*(const TowerElement& f, const SkewOperator& a);
  friend bool operator==(const SkewOperator& a, const SkewOperator& b);
  friend bool operator!=(const SkewOperator& a, const SkewOperator& b) { return !(a == b); }

  /// Rendering in the operator grammar, ascending powers of tau.
  std::string to_string(bool compact = false) const;

 private:
  void trim();

  TowerHandle tower_;
  std::vector<TowerElement> coeffs_;
};

SkewOperator skew_mul(const SkewOperator& a, const SkewOperator& b);

struct SkewDivMod {
  SkewOperator quotient;
  SkewOperator remainder;
};

/// a = q * b + r with deg r < deg b.
SkewDivMod right_divmod(const SkewOperator& a, const SkewOperator& b);
/// a = b * q + r with deg r < deg b.
SkewDivMod left_divmod(const SkewOperator& a, const SkewOperator& b);

/// P(x) = sum_i p_i tau^i(x).
TowerElement apply_to_element(const SkewOperator& op, const TowerElement& x);

/// sum_i D(p_i) tau^i, which equals the commutator D o P - P o D.
SkewOperator derive_coefficients(const SkewOperator& op);

/// sum_i tau^steps(p_i) tau^i, so that tau^s * P = shift_coefficients(P, s) * tau^s.
SkewOperator shift_coefficients(const SkewOperator& op, long steps);

struct CasoratianReport {
  TowerMatrix matrix;  // row i = tau^i applied to (x_1, ..., x_s)
  TowerElement determinant;
  bool full_rank = false;
};

CasoratianReport casoratian(const TowerHandle& tower, const std::vector<TowerElement>& xs);

}  // namespace gammac
