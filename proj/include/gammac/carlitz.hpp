#pragma once

// The Carlitz morphism C : A = k[t] -> k[nu][tau], t -> nu - tau, and the maps
// around it: gamma (t -> nu), the shift t -> t + 1, the derivation
// D = d/dnu + d/dt, orbit reduction of factorizations, and companion systems.

#include <optional>
#include <string>
#include <vector>

#include "gammac/exact_matrix.hpp"
#include "gammac/skew.hpp"
#include "gammac/tower.hpp"

namespace gammac {

/// Element of A = k[t]; every coefficient is tau-fixed (so also nu-free).
class CarlitzPoly {
 public:
  using Poly = UPoly<TowerElement>;

  explicit CarlitzPoly(TowerHandle tower);  // zero
  CarlitzPoly(TowerHandle tower, Poly poly);
  CarlitzPoly(TowerHandle tower, TowerElement constant);

  static CarlitzPoly t(TowerHandle tower);

  const TowerHandle& tower() const noexcept { return tower_; }
  const Poly& poly() const noexcept { return poly_; }
  int degree() const noexcept { return poly_.degree(); }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  bool is_monic() const { return poly_.is_monic(); }
  TowerElement coeff(std::size_t i) const { return poly_.coeff(i); }

  friend CarlitzPoly operator+(const CarlitzPoly& a, const CarlitzPoly& b);
  friend CarlitzPoly operator-(const CarlitzPoly& a, const CarlitzPoly& b);
  friend CarlitzPoly operator*(const CarlitzPoly& a, const CarlitzPoly& b);
  friend CarlitzPoly operator*(const TowerElement& s, const CarlitzPoly& a);
  friend bool operator==(const CarlitzPoly& a, const CarlitzPoly& b) {
    return a.tower_ == b.tower_ && a.poly_ == b.poly_;
  }
  friend bool operator!=(const CarlitzPoly& a, const CarlitzPoly& b) { return !(a == b); }

  std::string to_string(bool compact = false) const;

 private:
  TowerHandle tower_;
  Poly poly_;
};

CarlitzPoly pow(const CarlitzPoly& a, unsigned e);

/// C_a as an operator, (a)_0 + (a)_1 tau + ... + (a)_d tau^d.
SkewOperator expand(const CarlitzPoly& a);
/// t -> nu.
TowerElement gamma_map(const CarlitzPoly& a);
/// t -> t + 1.
CarlitzPoly shift_A(const CarlitzPoly& a, long steps = 1);
/// Coefficientwise D plus d/dt.
CarlitzPoly derive_A(const CarlitzPoly& a);

/// h with shift_A^h(p) = q, if any (p, q monic).
std::optional<long> detect_shift(const CarlitzPoly& p, const CarlitzPoly& q);

struct Factor {
  CarlitzPoly poly;  // monic irreducible
  unsigned exponent = 1;
};

/// unit * prod P_i^{r_i}.
class FactoredPoly {
 public:
  /// Validates: factors monic, pairwise distinct, positive exponents, same tower;
  /// irreducibility is verified when a factor has rational coefficients.
  FactoredPoly(TowerHandle tower, TowerElement unit, std::vector<Factor> factors);

  const TowerHandle& tower() const noexcept { return tower_; }
  const TowerElement& unit() const noexcept { return unit_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  CarlitzPoly product() const;
  std::string to_string() const;

 private:
  TowerHandle tower_;
  TowerElement unit_;
  std::vector<Factor> factors_;
};

/// One representative per tau-orbit, carrying the orbit's maximal exponent; ties go
/// to the factor from which the other maximal ones are reached by nonnegative shifts.
/// The result is monic.
FactoredPoly hat_reduce(const FactoredPoly& f);

struct CompanionSystem {
  TowerMatrix matrix;         // tau(y) = matrix * y for y = (y, tau y, ..., tau^{n-1} y)
  int twist_sign = 1;         // (-1)^n
  TowerElement twist_ratio;   // p_0 / p_n
};

CompanionSystem companion(const CarlitzPoly& a);

struct IdentityReport {
  bool morphism = true;
  bool shift_identity_operator = true;  // tau C_a = C_{tau a} tau
  bool shift_identity_samples = true;
  bool derive_identity_operator = true;  // D C_a - C_a D = C_{D a}
  bool derive_identity_samples = true;
  bool pass() const {
    return morphism && shift_identity_operator && shift_identity_samples && derive_identity_operator &&
           derive_identity_samples;
  }
};

/// Checks the morphism and commutation identities for a, using `claimed` as C_a
/// (pass expand(a) for the genuine check).
IdentityReport identity_report(const CarlitzPoly& a, const SkewOperator& claimed, const CarlitzPoly& b,
                               const std::vector<TowerElement>& samples);
IdentityReport identity_report(const CarlitzPoly& a, const CarlitzPoly& b,
                               const std::vector<TowerElement>& samples);

}  // namespace gammac
