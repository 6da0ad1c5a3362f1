#pragma once

// The torsion module modeled as A/(a_hat): C_b acts as multiplication by b, the
// generators are the units, and the Galois symbol of a unit b is the matrix of
// multiplication by b on the power basis 1, t, ..., t^{n-1}.

#include <optional>
#include <vector>

#include "gammac/carlitz.hpp"

namespace gammac {

class TorsionResidue {
 public:
  /// value mod modulus; the modulus must be monic of degree >= 1.
  TorsionResidue(const CarlitzPoly& value, const CarlitzPoly& modulus);

  const CarlitzPoly& value() const noexcept { return value_; }
  const CarlitzPoly& modulus() const noexcept { return modulus_; }
  int dimension() const noexcept { return modulus_.degree(); }

  friend TorsionResidue operator+(const TorsionResidue& a, const TorsionResidue& b);
  friend TorsionResidue operator-(const TorsionResidue& a, const TorsionResidue& b);
  friend TorsionResidue operator*(const TorsionResidue& a, const TorsionResidue& b);
  friend bool operator==(const TorsionResidue& a, const TorsionResidue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }
  friend bool operator!=(const TorsionResidue& a, const TorsionResidue& b) { return !(a == b); }

  bool is_zero() const noexcept { return value_.is_zero(); }

 private:
  CarlitzPoly value_;
  CarlitzPoly modulus_;
};

TorsionResidue normalize(const CarlitzPoly& b, const CarlitzPoly& modulus);

/// C_b acting on x: b * x mod a_hat.
TorsionResidue act(const CarlitzPoly& b, const TorsionResidue& x);

/// b^{-1} mod a_hat when gcd(b, a_hat) = 1.
std::optional<TorsionResidue> inverse(const TorsionResidue& b);

/// gcd(x, a_hat) = 1.
bool is_generator(const TorsionResidue& x);
/// x, t x, ..., t^{n-1} x span A/(a_hat) over k (exact rank).
bool spans_quotient(const TorsionResidue& x);

/// Coordinates of x in the power basis (length n).
std::vector<TowerElement> coordinates(const TorsionResidue& x);

/// Chinese-remainder decomposition A/(prod P_i^{r_i}) = prod A/(P_i^{r_i}).
class CrtSplit {
 public:
  /// Factors must be pairwise coprime.
  explicit CrtSplit(const FactoredPoly& modulus);

  const CarlitzPoly& modulus() const noexcept { return modulus_; }
  const std::vector<CarlitzPoly>& component_moduli() const noexcept { return moduli_; }

  std::vector<TorsionResidue> split(const TorsionResidue& x) const;
  TorsionResidue recombine(const std::vector<TorsionResidue>& parts) const;
  /// e_i with e_i = 1 mod the i-th component and 0 mod the others.
  const std::vector<CarlitzPoly>& idempotents() const noexcept { return idempotents_; }

 private:
  CarlitzPoly modulus_;
  std::vector<CarlitzPoly> moduli_;
  std::vector<CarlitzPoly> idempotents_;
};

/// Matrix of multiplication by a unit b; column j holds the coordinates of b t^j.
TowerMatrix galois_matrix(const TorsionResidue& b);

}  // namespace gammac
