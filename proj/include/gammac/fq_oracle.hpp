#pragma once

// Finite cross-check: the Carlitz module C_t = theta + tau over F_q, with tau the
// q-power Frobenius and theta reduced into a finite field F_{q^m} = F_q[x]/(f).
// q is prime, so F_q = Z/q and coordinates in the power basis are F_q-coordinates.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gammac::fq {

/// Polynomial over Z/p, coefficients low to high, no trailing zeros.
class FqPoly {
 public:
  explicit FqPoly(int p) : p_(p) {}
  FqPoly(int p, std::vector<int> coeffs);
  static FqPoly monomial(int p, int deg, int coeff = 1);
  /// Rational-coefficient syntax in `var`, reduced mod p (denominators must be units).
  static FqPoly parse(std::string_view text, int p, std::string_view var = "t");

  int modulus() const noexcept { return p_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  int coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0; }
  const std::vector<int>& coeffs() const noexcept { return c_; }
  int leading() const { return c_.empty() ? 0 : c_.back(); }
  FqPoly monic() const;

  friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator*(int s, const FqPoly& a);
  friend FqPoly operator/(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator%(const FqPoly& a, const FqPoly& b);
  friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();

  int p_;
  std::vector<int> c_;
};

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b);
/// Monic gcd.
FqPoly gcd(FqPoly a, FqPoly b);
FqPoly powmod(FqPoly base, unsigned long long e, const FqPoly& m);
bool is_irreducible(const FqPoly& f);
/// Monic irreducible factors with multiplicity (trial division).
std::vector<std::pair<FqPoly, int>> factor(const FqPoly& a);
int inverse_mod(int a, int p);
bool is_prime(int n);

using Elem = FqPoly;  // reduced modulo the field modulus, variable x

class FqContext {
 public:
  /// `modulus` monic irreducible over F_q; theta an element of F_q[x]/(modulus).
  FqContext(int q, FqPoly modulus, Elem theta);
  /// F_{q^m} with the first monic irreducible of degree m (lexicographic), theta a
  /// root of `theta_minpoly` (whose degree must divide m).
  static FqContext with_degree(int q, int m, const FqPoly& theta_minpoly);

  int q() const noexcept { return q_; }
  int m() const noexcept { return modulus_.degree(); }
  const FqPoly& modulus() const noexcept { return modulus_; }
  const Elem& theta() const noexcept { return theta_; }
  /// Minimal polynomial of theta over F_q, in t.
  FqPoly theta_minpoly() const;
  unsigned long long size() const;

  Elem zero() const { return FqPoly(q_); }
  Elem one() const { return FqPoly(q_, {1}); }
  Elem element(int c) const { return FqPoly(q_, {c}); }
  Elem reduce(const FqPoly& x) const { return x % modulus_; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % modulus_; }
  Elem pow(const Elem& a, unsigned long long e) const { return powmod(a, e, modulus_); }
  Elem frobenius(const Elem& a) const { return pow(a, static_cast<unsigned long long>(q_)); }
  Elem inverse(const Elem& a) const;  // throws on zero

  /// F_q-coordinates in the power basis 1, x, ..., x^{m-1}.
  std::vector<int> coordinates(const Elem& a) const;
  Elem from_coordinates(const std::vector<int>& c) const { return FqPoly(q_, c); }
  /// The element with base-q digits of `index` as coordinates.
  Elem from_index(unsigned long long index) const;

 private:
  int q_;
  FqPoly modulus_;
  Elem theta_;
};

/// C_a(x) = a(theta + tau)(x).
Elem fq_apply(const FqPoly& a, const Elem& x, const FqContext& ctx);

/// F_q-basis of ker C_a on F_{q^m}.
std::vector<Elem> fq_kernel(const FqPoly& a, const FqContext& ctx);

struct FqStructure {
  int kernel_dim = 0;
  bool cyclic = false;
  unsigned long long generators = 0;
  unsigned long long units = 0;
  std::optional<Elem> witness;  // a generator, if any
};

/// Needs full torsion (kernel of dimension deg a); throws Error otherwise.
FqStructure fq_structure(const FqPoly& a, const FqContext& ctx);

/// Grows m through multiples of the start degree up to `cap` until the kernel of
/// C_a has dimension deg a.
std::optional<FqContext> fq_saturate(const FqPoly& a, const FqContext& start, int cap = 12);

/// det (x_j^{q^i})_{i,j}.
Elem moore_casoratian(const std::vector<Elem>& xs, const FqContext& ctx);
/// Rank of the coordinate vectors over F_q.
int fq_rank(const std::vector<Elem>& xs, const FqContext& ctx);

}  // namespace gammac::fq
