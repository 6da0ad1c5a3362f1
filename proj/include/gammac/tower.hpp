#pragma once

// The difference-differential coefficient tower K = Q(alpha)(c)(u_1..u_m)(nu).
//
// Elements are stored recursively: an element whose highest occurring variable is
// x_v is a reduced fraction num/den of polynomials in x_v whose coefficients only
// involve variables below x_v; den is monic. Elements not involving any variable
// are plain scalars. This form is canonical, so equality is structural.
//
// Variable indices: c = 1, u_i = 1 + i (i = 1..m), nu = m + 2.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gammac/scalar.hpp"
#include "gammac/upoly.hpp"

namespace gammac {

class TowerElement {
 public:
  struct Fraction;
  using Poly = UPoly<TowerElement>;

  TowerElement() = default;
  TowerElement(int v) : scalar_(v) {}  // NOLINT(google-explicit-constructor)
  TowerElement(long v) : scalar_(v) {}  // NOLINT(google-explicit-constructor)
  TowerElement(const mpq_class& v) : scalar_(v) {}  // NOLINT(google-explicit-constructor)
  TowerElement(Scalar s) : scalar_(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  /// The variable x_var itself.
  static TowerElement variable(int var);
  /// num/den as polynomials in x_var, reduced and normalized.
  static TowerElement fraction(int var, Poly num, Poly den);

  /// Highest variable index occurring; 0 for scalars.
  int top_var() const noexcept { return var_; }
  bool is_zero() const noexcept { return var_ == 0 && scalar_.is_zero(); }
  bool is_scalar() const noexcept { return var_ == 0; }
  const Scalar& scalar() const;
  const Poly& numerator() const;
  const Poly& denominator() const;
  bool is_polynomial() const;  // denominator is 1 at every level

  /// True iff x_var occurs anywhere.
  bool depends_on(int var) const;

  TowerElement inverse() const;

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b) { return a * b.inverse(); }
  friend TowerElement operator-(const TowerElement& a);
  friend bool operator==(const TowerElement& a, const TowerElement& b);
  friend bool operator!=(const TowerElement& a, const TowerElement& b) { return !(a == b); }

  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }
  TowerElement& operator/=(const TowerElement& o) { return *this = *this / o; }

  /// (num, den) viewed as polynomials in x_var (var >= top_var()).
  std::pair<Poly, Poly> as_fraction_in(int var) const;

  /// Rebuilds from a fraction in x_var whose gcd is already 1; only normalizes the
  /// denominator. Used by automorphisms that preserve coprimality.
  static TowerElement fraction_coprime(int var, Poly num, Poly den);

 private:
  static TowerElement make(int var, Poly num, Poly den, bool reduce);

  int var_ = 0;
  Scalar scalar_;
  std::shared_ptr<const Fraction> frac_;
};

struct TowerElement::Fraction {
  Poly num;
  Poly den;
};

inline bool is_zero(const TowerElement& x) { return x.is_zero(); }

TowerElement pow(const TowerElement& x, int e);

struct PeriodicGenerator {
  std::string name;
  Scalar tau_multiplier;  // omega: tau(u) = omega * u
  mpq_class derive_rate;  // lambda: D(u) = lambda * c * u
};

struct TowerSpec {
  ScalarFieldPtr scalar;  // null means Q
  std::vector<PeriodicGenerator> generators;
  int root_of_unity_bound = 64;
};

class Tower;
using TowerHandle = std::shared_ptr<const Tower>;

/// Validates the spec (roots of unity, embedding compatibility) and builds the tower.
TowerHandle make_tower(TowerSpec spec);

class Tower {
 public:
  explicit Tower(TowerSpec spec);

  const TowerSpec& spec() const noexcept { return spec_; }
  std::size_t generator_count() const noexcept { return spec_.generators.size(); }

  int var_c() const noexcept { return 1; }
  int var_generator(std::size_t i) const noexcept { return 2 + static_cast<int>(i); }
  int var_nu() const noexcept { return 2 + static_cast<int>(spec_.generators.size()); }

  TowerElement nu() const { return TowerElement::variable(var_nu()); }
  TowerElement c() const { return TowerElement::variable(var_c()); }
  TowerElement generator(std::size_t i) const { return TowerElement::variable(var_generator(i)); }
  TowerElement generator(const std::string& name) const;
  TowerElement alpha() const;
  /// -1 if not a generator name.
  int generator_index(const std::string& name) const;
  const PeriodicGenerator& generator_info(std::size_t i) const { return spec_.generators.at(i); }

  /// Symbol for a variable index ("c", generator name, "nu").
  std::string variable_name(int var) const;

  bool contains(const TowerElement& x) const;

  /// tau^steps: nu -> nu + steps, u -> omega^steps u.
  TowerElement shift(const TowerElement& x, long steps) const;
  /// The derivation D with D(nu) = 1, D(c) = 0, D(u) = lambda c u.
  TowerElement derive(const TowerElement& x) const;

  /// Value under c -> 2 pi i, u -> exp(2 pi i lambda nu), alpha -> its embedding.
  /// Throws PoleError when |den| < 1e-12 (1 + |num|) at some level.
  std::complex<double> eval(const TowerElement& x, std::complex<double> nu) const;

  /// Syntactic tau-constancy: no nu and only generators with omega = 1.
  bool is_tau_fixed(const TowerElement& x) const;
  bool is_nu_free(const TowerElement& x) const { return !x.depends_on(var_nu()); }

  /// Rendering in the textual element grammar.
  std::string format(const TowerElement& x, bool compact = false) const;

 private:
  TowerElement::Poly shift_poly(const TowerElement::Poly& p, int var, long steps) const;
  TowerElement::Poly derive_poly(const TowerElement::Poly& p, int var) const;
  std::complex<double> eval_poly(const TowerElement::Poly& p, int var, std::complex<double> nu,
                                 double* magnitude) const;

  TowerSpec spec_;
  std::vector<std::complex<double>> generator_slopes_;  // 2 pi i lambda
};

/// Joins (coefficient, monomial) terms into a signed sum; an empty monomial marks a
/// constant term. `fmt` renders a coefficient (second argument: compact).
std::string format_sum(const std::vector<std::pair<TowerElement, std::string>>& terms,
                       const std::function<std::string(const TowerElement&, bool)>& fmt, bool compact);

/// The multiplier omega^steps of a generator (steps may be negative).
Scalar power(const Scalar& s, long e);

}  // namespace gammac
