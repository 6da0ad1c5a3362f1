#include "gammac/tower.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <type_traits>
#include <sstream>

#include "mgcd.hpp"

namespace gammac {

using Poly = TowerElement::Poly;

namespace {

const Poly& one_poly() {
  static const Poly p{TowerElement(1)};
  return p;
}

// Arithmetic mod the Mersenne prime 2^61 - 1, for gcd certificates.
struct ModP {
  static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  std::uint64_t v = 0;

  ModP() = default;
  ModP(long x) : v(x >= 0 ? static_cast<std::uint64_t>(x) % p : p - (static_cast<std::uint64_t>(-x) % p)) {}  // NOLINT
  static ModP raw(std::uint64_t x) {
    ModP r;
    r.v = x % p;
    return r;
  }
  friend ModP operator+(ModP a, ModP b) { return raw(a.v + b.v); }
  friend ModP operator-(ModP a, ModP b) { return raw(a.v + p - b.v); }
  friend ModP operator-(ModP a) { return raw(p - a.v); }
  friend ModP operator*(ModP a, ModP b) {
    const auto w = static_cast<unsigned __int128>(a.v) * b.v;
    const auto lo = static_cast<std::uint64_t>(w) & p, hi = static_cast<std::uint64_t>(w >> 61);
    return raw(lo + hi);
  }
  ModP inverse() const {
    // extended Euclid on signed 128-bit cofactors
    __int128 r0 = p, r1 = v, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      s0 -= q * s1;
      std::swap(s0, s1);
    }
    if (s0 < 0) s0 += p;
    ModP r;
    r.v = static_cast<std::uint64_t>(s0);
    return r;
  }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
  friend bool operator!=(ModP a, ModP b) { return a.v != b.v; }
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }
};

bool is_zero(ModP x) { return x.v == 0; }

std::optional<ModP> image(const Scalar& s, int) {
  if (!s.is_rational()) return std::nullopt;
  const mpq_class q = s.rational();
  const auto den = mpz_fdiv_ui(q.get_den_mpz_t(), ModP::p);
  if (den == 0) return std::nullopt;
  const auto num = ModP::raw(mpz_fdiv_ui(q.get_num_mpz_t(), ModP::p));
  return den == 1 ? num : num / ModP::raw(den);
}

std::optional<Scalar> image(const Scalar& s, int*) { return s; }

ModP point_value(int var, int point, ModP*) { return ModP(1000003L * var + 7919L * point + 12345L); }

Scalar point_value(int var, int point, Scalar*) {
  static const int primes[] = {37, -53, 71, 89, -103, 127, 149, -163, 181, 199, -211, 233};
  return Scalar(mpq_class(primes[static_cast<std::size_t>(var + 5 * point) % 12], 7 + point));
}

// Image of x under c, u_i -> fixed values (alpha kept in the rational case).
// Empty at a pole.
template <class Img>
std::optional<Img> specialize(const TowerElement& x, int point) {
  if (x.is_scalar()) {
    if constexpr (std::is_same_v<Img, ModP>) return image(x.scalar(), 0);
    else return image(x.scalar(), static_cast<int*>(nullptr));
  }
  const Img at = point_value(x.top_var(), point, static_cast<Img*>(nullptr));
  auto horner_at = [&](const Poly& p) -> std::optional<Img> {
    Img acc(0);
    for (auto i = p.degree(); i >= 0; --i) {
      const auto c = specialize<Img>(p.coeff(static_cast<std::size_t>(i)), point);
      if (!c) return std::nullopt;
      acc = acc * at + *c;
    }
    return acc;
  };
  const auto n = horner_at(x.numerator());
  const auto d = horner_at(x.denominator());
  if (!n || !d || is_zero(*d)) return std::nullopt;
  return *n / *d;
}

template <class Img>
std::optional<UPoly<Img>> specialize(const Poly& p, int point) {
  std::vector<Img> c;
  for (const auto& e : p.coeffs()) {
    auto s = specialize<Img>(e, point);
    if (!s) return std::nullopt;
    c.push_back(std::move(*s));
  }
  UPoly<Img> r(std::move(c));
  if (r.degree() != p.degree()) return std::nullopt;  // leading coefficient vanished
  return r;
}

// Degree of gcd(a, b) on a specialization, which bounds the true degree from above
// when the leading coefficients survive. Empty if no usable image was found.
template <class Img>
std::optional<int> image_gcd_degree(const Poly& a, const Poly& b) {
  for (int point = 0; point < 3; ++point) {
    const auto sa = specialize<Img>(a, point);
    const auto sb = specialize<Img>(b, point);
    if (sa && sb) return gcd(*sa, *sb).degree();
  }
  return std::nullopt;
}

bool has_algebraic_scalars(const TowerElement& x) {
  if (x.is_scalar()) return !x.scalar().is_rational();
  for (const auto& c : x.numerator().coeffs())
    if (has_algebraic_scalars(c)) return true;
  for (const auto& c : x.denominator().coeffs())
    if (has_algebraic_scalars(c)) return true;
  return false;
}

bool has_algebraic_scalars(const Poly& p) {
  for (const auto& c : p.coeffs())
    if (has_algebraic_scalars(c)) return true;
  return false;
}

// Exact arithmetic in the polynomial ring R = Q(alpha)[c, u_1, ..., nu], whose
// elements are the tower elements with trivial denominators at every level.
// Ring operations on them never call a gcd.

TowerElement from_poly(int var, Poly p) { return TowerElement::fraction_coprime(var, std::move(p), one_poly()); }

std::optional<TowerElement> ring_div(const TowerElement& a, const TowerElement& b);

// Exact division in R'[x]; empty if b does not divide a.
std::optional<Poly> ring_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return a.is_zero() ? std::optional<Poly>(Poly()) : std::nullopt;
  std::vector<TowerElement> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  Poly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto c = ring_div(r.lead(), b.lead());
    if (!c) return std::nullopt;
    const auto k = static_cast<std::size_t>(r.degree() - b.degree());
    q[k] = *c;
    r = r - Poly::monomial(*c, k) * b;
  }
  if (!r.is_zero()) return std::nullopt;
  return Poly(std::move(q));
}

std::optional<TowerElement> ring_div(const TowerElement& a, const TowerElement& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_scalar()) return a * TowerElement(b.scalar().inverse());
  if (a.is_zero()) return TowerElement();
  if (a.top_var() < b.top_var()) return std::nullopt;
  const int v = a.top_var();
  const auto q = ring_div(a.as_fraction_in(v).first, b.as_fraction_in(v).first);
  if (!q) return std::nullopt;
  return from_poly(v, *q);
}

// lc(b)^(deg a - deg b + 1) a mod b.
Poly pseudo_remainder(Poly a, const Poly& b) {
  const TowerElement& lb = b.lead();
  int e = a.degree() - b.degree() + 1;
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const auto k = static_cast<std::size_t>(a.degree() - b.degree());
    a = lb * a - Poly::monomial(a.lead(), k) * b;
    --e;
  }
  for (; e > 0; --e) a = lb * a;
  return a;
}

TowerElement ring_pow(const TowerElement& x, int e) {
  TowerElement r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

// A nonzero R-multiple of gcd(a, b) in R'[x], by the subresultant remainder
// sequence (exact divisions keep coefficient growth linear).
Poly ring_gcd(Poly a, Poly b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  TowerElement g(1), h(1);
  while (b.degree() > 0) {
    const int delta = a.degree() - b.degree();
    Poly r = pseudo_remainder(a, b);
    if (r.is_zero()) return b;
    a = std::move(b);
    b = *ring_div(r, Poly(g * ring_pow(h, delta)));
    g = a.lead();
    if (delta > 0) h = *ring_div(ring_pow(g, delta), ring_pow(h, delta - 1));
  }
  return Poly(TowerElement(1));
}

std::pair<TowerElement, TowerElement> to_ring(const TowerElement& e);

Poly tower_gcd(const Poly& a, const Poly& b);
std::pair<Poly, TowerElement> clear_denominators(const Poly& p);

// A common multiple of a and b in R, the lcm whenever the gcd can be lifted.
TowerElement ring_lcm(const TowerElement& a, const TowerElement& b) {
  if (b.is_scalar()) return a;
  if (a.is_scalar()) return b;
  if (ring_div(a, b)) return a;
  if (ring_div(b, a)) return b;
  if (a.top_var() == b.top_var()) {
    const int v = a.top_var();
    const Poly g = clear_denominators(tower_gcd(a.numerator(), b.numerator())).first;
    if (g.degree() > 0)
      if (auto q = ring_div(b, from_poly(v, g))) return a * *q;
  }
  return a * b;
}

// p = P / L with P in R[x] and L in R a common multiple of the coefficient
// denominators.
std::pair<Poly, TowerElement> clear_denominators(const Poly& p) {
  std::vector<std::pair<TowerElement, TowerElement>> parts;
  TowerElement l(1);
  for (const auto& c : p.coeffs()) {
    parts.push_back(to_ring(c));
    l = ring_lcm(l, parts.back().second);
  }
  std::vector<TowerElement> out;
  for (const auto& [num, den] : parts) out.push_back(num * *ring_div(l, den));
  return {Poly(std::move(out)), l};
}

// e = P / Q with P, Q in R.
std::pair<TowerElement, TowerElement> to_ring(const TowerElement& e) {
  if (e.is_scalar()) return {e, TowerElement(1)};
  const int v = e.top_var();
  auto [n, ln] = clear_denominators(e.numerator());
  auto [d, ld] = clear_denominators(e.denominator());
  return {from_poly(v, std::move(n)) * ld, from_poly(v, std::move(d)) * ln};
}

// gcd over the nested fraction field. Euclid there suffers from coefficient
// swell (and recursive gcds at every lower level), so coprimality is certified
// on an image first, one argument dividing the other is tried next, and the
// general case clears denominators and works in R.
Poly tower_gcd(const Poly& a, const Poly& b) {
  const bool algebraic = has_algebraic_scalars(a) || has_algebraic_scalars(b);
  const auto d = algebraic ? image_gcd_degree<Scalar>(a, b) : image_gcd_degree<ModP>(a, b);
  if (d && *d == 0) return one_poly();
  if (d) {
    const Poly& small = a.degree() <= b.degree() ? a : b;
    const Poly& large = a.degree() <= b.degree() ? b : a;
    if (*d == small.degree() && divmod(large, small).remainder.is_zero()) return make_monic(small);
  }
  // Against a small-degree argument Euclid is one long division plus a few short
  // steps; otherwise the subresultant sequence in R avoids nested swell.
  if (std::min(a.degree(), b.degree()) <= 2) return gcd(a, b);
  const Poly ra = clear_denominators(a).first, rb = clear_denominators(b).first;
  if (!algebraic) {
    int level = 1;
    for (const Poly* p : {&ra, &rb})
      for (const auto& c : p->coeffs()) level = std::max(level, c.top_var() + 1);
    const auto g = detail::modular_gcd(ra, rb, level, [&](const Poly& cand) {
      return ring_div(ra, cand).has_value() && ring_div(rb, cand).has_value();
    });
    if (g) return make_monic(*g);
  }
  return make_monic(ring_gcd(ra, rb));
}

}  // namespace

// ---------------------------------------------------------------------------
// TowerElement

TowerElement TowerElement::variable(int var) {
  if (var <= 0) throw InvalidArgument("variable index must be positive");
  return make(var, Poly::x(), one_poly(), false);
}

TowerElement TowerElement::fraction(int var, Poly num, Poly den) {
  return make(var, std::move(num), std::move(den), true);
}

TowerElement TowerElement::fraction_coprime(int var, Poly num, Poly den) {
  return make(var, std::move(num), std::move(den), false);
}

TowerElement TowerElement::make(int var, Poly num, Poly den, bool reduce) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return {};
  if (reduce && den.degree() > 0 && num.degree() > 0) {
    Poly g = tower_gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  if (!den.is_monic()) {
    const TowerElement inv = den.lead().inverse();
    num = inv * num;
    den = inv * den;
  }
  if (den.degree() == 0 && num.degree() == 0) return num.coeff(0);
  TowerElement r;
  r.var_ = var;
  r.frac_ = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
  return r;
}

const Scalar& TowerElement::scalar() const {
  if (var_ != 0) throw InvalidArgument("tower element is not a scalar");
  return scalar_;
}

const Poly& TowerElement::numerator() const {
  if (var_ == 0) throw InvalidArgument("scalar has no fraction structure");
  return frac_->num;
}

const Poly& TowerElement::denominator() const {
  if (var_ == 0) throw InvalidArgument("scalar has no fraction structure");
  return frac_->den;
}

bool TowerElement::is_polynomial() const {
  if (var_ == 0) return true;
  if (frac_->den.degree() != 0) return false;
  for (const auto& c : frac_->num.coeffs())
    if (!c.is_polynomial()) return false;
  return true;
}

bool TowerElement::depends_on(int var) const {
  if (var > var_ || var_ == 0) return false;
  if (var == var_) return true;
  for (const auto& c : frac_->num.coeffs())
    if (c.depends_on(var)) return true;
  for (const auto& c : frac_->den.coeffs())
    if (c.depends_on(var)) return true;
  return false;
}

std::pair<Poly, Poly> TowerElement::as_fraction_in(int var) const {
  if (var < var_) throw InvalidArgument("element involves a higher variable");
  if (var_ < var) return {Poly(*this), one_poly()};
  return {frac_->num, frac_->den};
}

TowerElement TowerElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (var_ == 0) return scalar_.inverse();
  return make(var_, frac_->den, frac_->num, false);
}

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
  if (a.var_ == 0 && b.var_ == 0) return a.scalar_ + b.scalar_;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int v = std::max(a.var_, b.var_);
  auto [n1, d1] = a.as_fraction_in(v);
  auto [n2, d2] = b.as_fraction_in(v);
  if (d1.degree() == 0 && d2.degree() == 0) return TowerElement::make(v, n1 + n2, d1, false);
  if (d2.degree() == 0) return TowerElement::make(v, n1 + n2 * d1, d1, false);
  if (d1.degree() == 0) return TowerElement::make(v, n1 * d2 + n2, d2, false);
  const Poly g = d1 == d2 ? d1 : tower_gcd(d1, d2);
  if (g.degree() == 0) return TowerElement::make(v, n1 * d2 + n2 * d1, d1 * d2, false);
  // With g = gcd(d1, d2): n1/d1 + n2/d2 = (n1 d2/g + n2 d1/g) / (d1 d2/g), and any
  // factor shared by that numerator and denominator divides g.
  const Poly d2g = exact_div(d2, g);
  Poly num = n1 * d2g + n2 * exact_div(d1, g);
  if (num.is_zero()) return {};
  const Poly h = tower_gcd(num, g);
  if (h.degree() == 0) return TowerElement::make(v, std::move(num), d1 * d2g, false);
  return TowerElement::make(v, exact_div(num, h), exact_div(d1, h) * d2g, false);
}

TowerElement operator-(const TowerElement& a) {
  if (a.var_ == 0) return -a.scalar_;
  TowerElement r;
  r.var_ = a.var_;
  r.frac_ = std::make_shared<const TowerElement::Fraction>(TowerElement::Fraction{-a.frac_->num, a.frac_->den});
  return r;
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) { return a + (-b); }

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.var_ == 0 && b.var_ == 0) return a.scalar_ * b.scalar_;
  const int v = std::max(a.var_, b.var_);
  if (a.var_ < v) return TowerElement::make(v, a * b.frac_->num, b.frac_->den, false);
  if (b.var_ < v) return TowerElement::make(v, b * a.frac_->num, a.frac_->den, false);
  const Poly& n1 = a.frac_->num;
  const Poly& d1 = a.frac_->den;
  const Poly& n2 = b.frac_->num;
  const Poly& d2 = b.frac_->den;
  Poly num1 = n1, den2 = d2, num2 = n2, den1 = d1;
  if (d2.degree() > 0) {
    const Poly g1 = tower_gcd(n1, d2);
    if (g1.degree() > 0) {
      num1 = exact_div(n1, g1);
      den2 = exact_div(d2, g1);
    }
  }
  if (d1.degree() > 0) {
    const Poly g2 = tower_gcd(n2, d1);
    if (g2.degree() > 0) {
      num2 = exact_div(n2, g2);
      den1 = exact_div(d1, g2);
    }
  }
  return TowerElement::make(v, num1 * num2, den1 * den2, false);
}

bool operator==(const TowerElement& a, const TowerElement& b) {
  if (a.var_ != b.var_) return false;
  if (a.var_ == 0) return a.scalar_ == b.scalar_;
  if (a.frac_ == b.frac_) return true;
  return a.frac_->num == b.frac_->num && a.frac_->den == b.frac_->den;
}

TowerElement pow(const TowerElement& x, int e) {
  if (e < 0) return pow(x.inverse(), -e);
  TowerElement r(1), base = x;
  auto n = static_cast<unsigned>(e);
  while (n) {
    if (n & 1U) r = r * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return r;
}

Scalar power(const Scalar& s, long e) {
  if (e < 0) return power(s.inverse(), -e);
  Scalar r(1), base = s;
  auto n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1UL) r = r * base;
    n >>= 1UL;
    if (n) base = base * base;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tower

TowerHandle make_tower(TowerSpec spec) { return std::make_shared<const Tower>(std::move(spec)); }

Tower::Tower(TowerSpec spec) : spec_(std::move(spec)) {
  std::set<std::string> names{"nu", "c", "t", "tau"};
  if (spec_.scalar) names.insert(spec_.scalar->name());
  for (const auto& g : spec_.generators) {
    if (g.name.empty() || !names.insert(g.name).second)
      throw InvalidArgument("generator name '" + g.name + "' is empty, reserved or duplicated");
    if (g.tau_multiplier.field() && g.tau_multiplier.field() != spec_.scalar)
      throw InvalidArgument("generator multiplier lies outside the scalar field");
    if (g.tau_multiplier.is_zero()) throw InvalidArgument("generator multiplier is zero");
    bool unit_root = false;
    Scalar acc = g.tau_multiplier;
    for (int n = 1; n <= spec_.root_of_unity_bound; ++n) {
      if (acc == Scalar(1)) {
        unit_root = true;
        break;
      }
      acc = acc * g.tau_multiplier;
    }
    if (!unit_root) throw InvalidArgument("multiplier of generator '" + g.name + "' is not a root of unity");
    const std::complex<double> slope(0.0, 2.0 * std::numbers::pi * g.derive_rate.get_d());
    if (std::abs(g.tau_multiplier.embed() - std::exp(slope)) > 1e-9)
      throw InvalidArgument("generator '" + g.name + "': multiplier does not match exp(2 pi i lambda)");
    generator_slopes_.push_back(slope);
  }
}

TowerElement Tower::generator(const std::string& name) const {
  const int i = generator_index(name);
  if (i < 0) throw InvalidArgument("unknown generator '" + name + "'");
  return generator(static_cast<std::size_t>(i));
}

int Tower::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < spec_.generators.size(); ++i)
    if (spec_.generators[i].name == name) return static_cast<int>(i);
  return -1;
}

TowerElement Tower::alpha() const {
  if (!spec_.scalar) throw InvalidArgument("tower has no algebraic scalar generator");
  return TowerElement(Scalar::generator(spec_.scalar));
}

std::string Tower::variable_name(int var) const {
  if (var == var_c()) return "c";
  if (var == var_nu()) return "nu";
  if (var >= 2 && var < var_nu()) return spec_.generators[static_cast<std::size_t>(var - 2)].name;
  throw InvalidArgument("variable index outside the tower");
}

bool Tower::contains(const TowerElement& x) const {
  if (x.top_var() > var_nu()) return false;
  if (x.is_scalar()) {
    const auto& f = x.scalar().field();
    return !f || f == spec_.scalar;
  }
  for (const auto& c : x.numerator().coeffs())
    if (!contains(c)) return false;
  for (const auto& c : x.denominator().coeffs())
    if (!contains(c)) return false;
  return true;
}

Poly Tower::shift_poly(const Poly& p, int var, long steps) const {
  std::vector<TowerElement> coeffs;
  coeffs.reserve(p.size());
  for (const auto& a : p.coeffs()) coeffs.push_back(shift(a, steps));
  if (var >= 2 && var < var_nu()) {
    const Scalar step_mult = power(spec_.generators[static_cast<std::size_t>(var - 2)].tau_multiplier, steps);
    if (step_mult != Scalar(1)) {
      Scalar m(1);
      for (auto& a : coeffs) {
        a = a * TowerElement(m);
        m = m * step_mult;
      }
    }
  }
  Poly q(std::move(coeffs));
  if (var == var_nu()) q = taylor_shift(q, TowerElement(steps));
  return q;
}

TowerElement Tower::shift(const TowerElement& x, long steps) const {
  if (steps == 0 || x.is_scalar()) return x;
  const int v = x.top_var();
  return TowerElement::fraction_coprime(v, shift_poly(x.numerator(), v, steps),
                                        shift_poly(x.denominator(), v, steps));
}

Poly Tower::derive_poly(const Poly& p, int var) const {
  std::vector<TowerElement> r;
  r.reserve(p.size());
  for (const auto& a : p.coeffs()) r.push_back(derive(a));
  if (var >= 2 && var < var_nu()) {
    const TowerElement rate_c =
        TowerElement(spec_.generators[static_cast<std::size_t>(var - 2)].derive_rate) * c();
    for (std::size_t i = 1; i < r.size(); ++i)
      r[i] = r[i] + TowerElement(static_cast<long>(i)) * rate_c * p.coeffs()[i];
  }
  Poly q(std::move(r));
  if (var == var_nu()) q = q + derivative(p);
  return q;
}

TowerElement Tower::derive(const TowerElement& x) const {
  if (x.is_scalar()) return {};
  const int v = x.top_var();
  const Poly& n = x.numerator();
  const Poly& d = x.denominator();
  const Poly dn = derive_poly(n, v);
  if (d.degree() == 0) return TowerElement::fraction_coprime(v, dn, d);
  const Poly dd = derive_poly(d, v);
  return TowerElement::fraction(v, dn * d - n * dd, d * d);
}

std::complex<double> Tower::eval_poly(const Poly& p, int var, std::complex<double> nu, double* magnitude) const {
  std::complex<double> xv;
  if (var == var_c()) {
    xv = {0.0, 2.0 * std::numbers::pi};
  } else if (var == var_nu()) {
    xv = nu;
  } else {
    xv = std::exp(generator_slopes_[static_cast<std::size_t>(var - 2)] * nu);
  }
  std::complex<double> acc = 0.0;
  double mag = 0.0;
  for (int i = p.degree(); i >= 0; --i) {
    const auto ci = eval(p.coeffs()[static_cast<std::size_t>(i)], nu);
    acc = acc * xv + ci;
    mag = mag * std::abs(xv) + std::abs(ci);
  }
  if (magnitude) *magnitude = mag;
  return acc;
}

std::complex<double> Tower::eval(const TowerElement& x, std::complex<double> nu) const {
  if (x.is_scalar()) return x.scalar().embed();
  const int v = x.top_var();
  const auto num = eval_poly(x.numerator(), v, nu, nullptr);
  if (x.denominator().degree() == 0) return num;
  double den_mag = 0.0;
  const auto den = eval_poly(x.denominator(), v, nu, &den_mag);
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(num))) {
    std::ostringstream os;
    os << "pole of " << format(x, true) << " at nu = " << nu;
    throw PoleError(os.str());
  }
  return num / den;
}

bool Tower::is_tau_fixed(const TowerElement& x) const {
  if (x.depends_on(var_nu())) return false;
  for (std::size_t i = 0; i < spec_.generators.size(); ++i)
    if (spec_.generators[i].tau_multiplier != Scalar(1) && x.depends_on(var_generator(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

bool leading_negative(const TowerElement& x) {
  if (x.is_scalar()) {
    const auto v = x.scalar().value();
    return !v.is_zero() && sgn(v.lead()) < 0;
  }
  return leading_negative(x.numerator().lead());
}

bool is_compound(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-' || s[i] == '/') return true;
  return !s.empty() && s[0] == '-';
}

std::string monomial(const std::string& name, int k) {
  if (k == 0) return "";
  if (k == 1) return name;
  return name + "^" + std::to_string(k);
}

}  // namespace

std::string format_sum(const std::vector<std::pair<TowerElement, std::string>>& terms,
                       const std::function<std::string(const TowerElement&, bool)>& fmt, bool compact) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [coef, mono] : terms) {
    if (coef.is_zero()) continue;
    if (first && mono.empty()) {
      os << fmt(coef, compact);
      first = false;
      continue;
    }
    const bool neg = leading_negative(coef);
    const TowerElement a = neg ? -coef : coef;
    std::string body;
    if (!mono.empty() && a == TowerElement(1)) {
      body = mono;
    } else {
      body = fmt(a, true);
      if (is_compound(body)) body = "(" + body + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (first) {
      os << (neg ? "-" : "") << body;
    } else if (compact) {
      os << (neg ? "-" : "+") << body;
    } else {
      os << (neg ? " - " : " + ") << body;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::string Tower::format(const TowerElement& x, bool compact) const {
  if (x.is_scalar()) return x.scalar().to_string(compact);
  const int v = x.top_var();
  const std::string name = variable_name(v);
  auto poly_str = [&](const Poly& p, bool cmp) {
    std::vector<std::pair<TowerElement, std::string>> terms;
    for (int i = p.degree(); i >= 0; --i) terms.emplace_back(p.coeffs()[static_cast<std::size_t>(i)], monomial(name, i));
    return format_sum(terms, [this](const TowerElement& e, bool c) { return format(e, c); }, cmp);
  };
  if (x.denominator().degree() == 0) return poly_str(x.numerator(), compact);
  std::string n = poly_str(x.numerator(), true);
  std::string d = poly_str(x.denominator(), true);
  if (is_compound(n)) n = "(" + n + ")";
  if (is_compound(d) || d.find('*') != std::string::npos || d.find('^') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace gammac
