#pragma once

// Dense univariate polynomials over an exact field.
//
// The coefficient type F must be default-constructible as zero, constructible
// from int, closed under + - * /, and provide a free `is_zero(const F&)` found
// by ordinary or argument-dependent lookup.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "gammac/errors.hpp"

namespace gammac {

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

namespace detail {
template <class F>
bool coeff_zero(const F& x) {
  return is_zero(x);
}
}  // namespace detail

template <class F>
class UPoly {
 public:
  using Scalar = F;

  UPoly() = default;
  explicit UPoly(F c) {
    if (!detail::coeff_zero(c)) c_.push_back(std::move(c));
  }
  explicit UPoly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  static UPoly monomial(F c, std::size_t k) {
    if (detail::coeff_zero(c)) return {};
    std::vector<F> v(k + 1, F(0));
    v[k] = std::move(c);
    UPoly p;
    p.c_ = std::move(v);
    return p;
  }
  static UPoly x() { return monomial(F(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::size_t size() const noexcept { return c_.size(); }

  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const F& lead() const {
    if (c_.empty()) throw InvalidArgument("leading coefficient of zero polynomial");
    return c_.back();
  }
  const std::vector<F>& coeffs() const noexcept { return c_; }

  bool is_monic() const { return !c_.empty() && c_.back() == F(1); }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& x : a.c_) x = F(0) - x;
    return a;
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const F& s, const UPoly& a) {
    if (detail::coeff_zero(s)) return {};
    std::vector<F> r;
    r.reserve(a.c_.size());
    for (const auto& x : a.c_) r.push_back(s * x);
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const F& s) { return s * a; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

template <class F>
bool is_zero(const UPoly<F>& p) {
  return p.is_zero();
}

template <class F>
struct DivMod {
  UPoly<F> quotient;
  UPoly<F> remainder;
};

/// Euclidean division a = q*b + r with deg r < deg b.
template <class F>
DivMod<F> divmod(const UPoly<F>& a, const UPoly<F>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<F> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly<F>(), a};
  const F inv_lead = F(1) / b.lead();
  std::vector<F> q(static_cast<std::size_t>(a.degree() - db + 1), F(0));
  for (int k = a.degree(); k >= db; --k) {
    const F& top = r[static_cast<std::size_t>(k)];
    if (detail::coeff_zero(top)) continue;
    F f = top * inv_lead;
    const auto shift = static_cast<std::size_t>(k - db);
    for (int j = 0; j <= db; ++j) {
      auto idx = shift + static_cast<std::size_t>(j);
      r[idx] = r[idx] - f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    q[shift] = std::move(f);
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly<F>(std::move(q)), UPoly<F>(std::move(r))};
}

template <class F>
UPoly<F> operator%(const UPoly<F>& a, const UPoly<F>& b) {
  return divmod(a, b).remainder;
}

/// Quotient of an exact division; throws if b does not divide a.
template <class F>
UPoly<F> exact_div(const UPoly<F>& a, const UPoly<F>& b) {
  auto qr = divmod(a, b);
  if (!qr.remainder.is_zero()) throw InvalidArgument("inexact polynomial division");
  return std::move(qr.quotient);
}

template <class F>
UPoly<F> make_monic(const UPoly<F>& p) {
  if (p.is_zero() || p.is_monic()) return p;
  return (F(1) / p.lead()) * p;
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    UPoly<F> r = divmod(a, b).remainder;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

template <class F>
struct XGcd {
  UPoly<F> g;  // monic
  UPoly<F> s;
  UPoly<F> t;  // s*a + t*b = g
};

template <class F>
XGcd<F> xgcd(const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r0 = a, r1 = b;
  UPoly<F> s0(F(1)), s1, t0, t1(F(1));
  while (!r1.is_zero()) {
    auto qr = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    UPoly<F> s2 = s0 - qr.quotient * s1;
    UPoly<F> t2 = t0 - qr.quotient * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const F inv = F(1) / r0.lead();
  return {inv * r0, inv * s0, inv * t0};
}

/// Formal derivative d/dx.
template <class F>
UPoly<F> derivative(const UPoly<F>& p) {
  if (p.degree() < 1) return {};
  std::vector<F> r;
  r.reserve(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(F(static_cast<int>(i)) * p.coeffs()[i]);
  return UPoly<F>(std::move(r));
}

/// p(x + h), computed by Horner's rule on (x + h).
template <class F>
UPoly<F> taylor_shift(const UPoly<F>& p, const F& h) {
  if (detail::coeff_zero(h) || p.degree() < 1) return p;
  const UPoly<F> lin(std::vector<F>{h, F(1)});
  UPoly<F> acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * lin + UPoly<F>(p.coeffs()[static_cast<std::size_t>(i)]);
  return acc;
}

/// Horner evaluation with coefficients mapped through `embed` into T.
template <class F, class T, class Embed>
T horner(const UPoly<F>& p, const T& x, Embed&& embed) {
  T acc{};
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + embed(p.coeffs()[static_cast<std::size_t>(i)]);
  return acc;
}

template <class F>
F evaluate(const UPoly<F>& p, const F& x) {
  return horner(p, x, [](const F& c) { return c; });
}

template <class F>
UPoly<F> pow(UPoly<F> base, unsigned e) {
  UPoly<F> r(F(1));
  while (e) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return r;
}

/// Coefficientwise image under a map F -> G.
template <class G, class F, class Map>
UPoly<G> map_coeffs(const UPoly<F>& p, Map&& f) {
  std::vector<G> r;
  r.reserve(p.size());
  for (const auto& c : p.coeffs()) r.push_back(f(c));
  return UPoly<G>(std::move(r));
}

}  // namespace gammac
