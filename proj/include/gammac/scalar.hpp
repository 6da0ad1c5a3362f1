#pragma once

// The exact constant field Q(alpha) = Q[alpha]/(m).

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <optional>
#include <string>

#include "gammac/upoly.hpp"

namespace gammac {

using QPoly = UPoly<mpq_class>;

/// True iff p (nonzero, rational coefficients) has no factor over Q of degree
/// 1..floor(deg/2). Kronecker's method after clearing denominators.
bool is_irreducible_over_q(const QPoly& p);

/// Nontrivial factor of p over Q, if one exists (monic); used by the checker above.
std::optional<QPoly> find_rational_factor(const QPoly& p);

class ScalarField {
 public:
  /// `modulus` is made monic; it must be irreducible (checked). The numeric
  /// embedding sends alpha to the complex root nearest `embedding_hint`, or to the
  /// first root in (real desc, imag desc) order.
  explicit ScalarField(QPoly modulus, std::string name = "alpha",
                       std::optional<std::complex<double>> embedding_hint = std::nullopt);

  const QPoly& modulus() const noexcept { return modulus_; }
  int degree() const noexcept { return modulus_.degree(); }
  const std::string& name() const noexcept { return name_; }
  std::complex<double> embedding() const noexcept { return embedding_; }

 private:
  QPoly modulus_;
  std::string name_;
  std::complex<double> embedding_;
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

inline mpq_class canonical(mpq_class q) {
  q.canonicalize();
  return q;
}

/// Element of Q(alpha). A null field means the element is a plain rational and can
/// be combined with elements of any field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : rational_(canonical(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(ScalarFieldPtr field, QPoly value);

  static Scalar generator(const ScalarFieldPtr& field);

  const ScalarFieldPtr& field() const noexcept { return field_; }
  /// Representative polynomial in alpha of degree < [Q(alpha):Q].
  QPoly value() const { return is_rational() ? QPoly(rational_) : algebraic_; }

  bool is_zero() const noexcept { return algebraic_.is_zero() && sgn(rational_) == 0; }
  bool is_rational() const noexcept { return algebraic_.is_zero(); }
  mpq_class rational() const;  // throws unless is_rational()

  Scalar inverse() const;
  std::complex<double> embed() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.algebraic_ == b.algebraic_ && a.rational_ == b.rational_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Rendering in terms of the field generator name; `compact` drops spaces.
  std::string to_string(bool compact = false) const;

 private:
  ScalarFieldPtr field_;
  Scalar(ScalarFieldPtr field, mpq_class v) : field_(std::move(field)), rational_(std::move(v)) {}

  // Rational values live in rational_ (algebraic_ empty); otherwise algebraic_ has
  // degree >= 1 and rational_ is 0.
  mpq_class rational_;
  QPoly algebraic_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

std::string format_rational(const mpq_class& q);

}  // namespace gammac
