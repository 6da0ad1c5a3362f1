#include "gammac/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gammac/roots.hpp"

namespace gammac {

namespace {

constexpr std::size_t kMaxKroneckerCandidates = 2'000'000;

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Newton interpolation through (xs[i], ys[i]).
QPoly interpolate(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  const std::size_t n = xs.size();
  std::vector<mpq_class> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  QPoly result(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    result = result * QPoly(std::vector<mpq_class>{-xs[k], 1}) + QPoly(dd[k]);
  }
  return result;
}

bool has_integer_coefficients(const QPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

}  // namespace

std::optional<QPoly> find_rational_factor(const QPoly& p_in) {
  if (p_in.is_zero()) throw InvalidArgument("factor search on zero polynomial");
  const int n = p_in.degree();
  if (n <= 1) return std::nullopt;
  mpz_class den_lcm = 1;
  for (const auto& c : p_in.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  const QPoly f = mpq_class(den_lcm) * p_in;

  // Sample points ordered by |f(x)|, smallest first; roots give linear factors directly.
  std::vector<std::pair<mpz_class, mpz_class>> samples;
  for (long x = -40; x <= 40; ++x) {
    const mpq_class v = evaluate(f, mpq_class(x));
    if (sgn(v) == 0) return QPoly(std::vector<mpq_class>{mpq_class(-x), 1});
    samples.emplace_back(abs(v.get_num()), mpz_class(x));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  for (int d = 1; d <= n / 2; ++d) {
    const auto npts = static_cast<std::size_t>(d + 1);
    std::vector<mpq_class> xs;
    std::vector<std::vector<mpz_class>> choices;
    std::size_t total = 1;
    for (std::size_t i = 0; i < npts; ++i) {
      xs.emplace_back(samples[i].second);
      auto divs = positive_divisors(samples[i].first);
      std::vector<mpz_class> signed_divs;
      for (const auto& dv : divs) {
        signed_divs.push_back(dv);
        if (i > 0) signed_divs.push_back(-dv);
      }
      total *= signed_divs.size();
      if (total > kMaxKroneckerCandidates) throw Error("irreducibility check exceeded its search bound");
      choices.push_back(std::move(signed_divs));
    }
    std::vector<std::size_t> idx(npts, 0);
    while (true) {
      std::vector<mpq_class> ys;
      for (std::size_t i = 0; i < npts; ++i) ys.emplace_back(choices[i][idx[i]]);
      QPoly g = interpolate(xs, ys);
      if (g.degree() == d && has_integer_coefficients(g) && (f % g).is_zero()) return make_monic(g);
      std::size_t k = 0;
      while (k < npts && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == npts) break;
    }
  }
  return std::nullopt;
}

bool is_irreducible_over_q(const QPoly& p) {
  if (p.degree() < 1) return false;
  return !find_rational_factor(p).has_value();
}

ScalarField::ScalarField(QPoly modulus, std::string name, std::optional<std::complex<double>> hint)
    : modulus_(make_monic(modulus)), name_(std::move(name)) {
  if (modulus_.degree() < 1) throw InvalidArgument("scalar modulus must have degree >= 1");
  if (!is_irreducible_over_q(modulus_)) throw InvalidArgument("scalar modulus is reducible over Q");
  std::vector<Complex> c;
  for (const auto& q : modulus_.coeffs()) c.emplace_back(q.get_d());
  const auto roots = polynomial_roots(c);
  embedding_ = roots.front();
  if (hint) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) {
      if (std::abs(r - *hint) < best) {
        best = std::abs(r - *hint);
        embedding_ = r;
      }
    }
  }
}

Scalar::Scalar(ScalarFieldPtr field, QPoly value) : field_(std::move(field)) {
  if (field_ && value.degree() >= field_->degree()) value = value % field_->modulus();
  if (!field_ && value.degree() > 0) throw InvalidArgument("algebraic scalar without a field");
  if (value.degree() <= 0) {
    rational_ = value.coeff(0);
  } else {
    algebraic_ = std::move(value);
  }
}

Scalar Scalar::generator(const ScalarFieldPtr& field) { return Scalar(field, QPoly::x()); }

mpq_class Scalar::rational() const {
  if (!is_rational()) throw InvalidArgument("scalar is not rational");
  return rational_;
}

namespace {

const ScalarFieldPtr& pick_field(const Scalar& a, const Scalar& b) {
  if (a.field() && b.field() && a.field() != b.field() && a.field()->modulus() != b.field()->modulus())
    throw TowerMismatch();
  return a.field() ? a.field() : b.field();
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(pick_field(a, b), mpq_class(a.rational_ + b.rational_));
  return Scalar(pick_field(a, b), a.value() + b.value());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) return Scalar(pick_field(a, b), mpq_class(a.rational_ - b.rational_));
  return Scalar(pick_field(a, b), a.value() - b.value());
}

Scalar operator-(const Scalar& a) {
  if (a.is_rational()) return Scalar(a.field_, mpq_class(-a.rational_));
  return Scalar(a.field_, -a.algebraic_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  const auto& f = pick_field(a, b);
  if (a.is_rational() && b.is_rational()) return Scalar(f, mpq_class(a.rational_ * b.rational_));
  if (a.is_rational()) return Scalar(f, a.rational_ * b.algebraic_);
  if (b.is_rational()) return Scalar(f, b.rational_ * a.algebraic_);
  return Scalar(f, a.algebraic_ * b.algebraic_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Scalar(field_, mpq_class(1 / rational_));
  auto eg = xgcd(algebraic_, field_->modulus());
  if (eg.g.degree() != 0) throw DivisionByZero("non-invertible algebraic scalar");
  return Scalar(field_, eg.s);
}

std::complex<double> Scalar::embed() const {
  if (is_rational()) return {rational_.get_d(), 0.0};
  return horner(algebraic_, field_->embedding(),
                [](const mpq_class& q) { return std::complex<double>(q.get_d(), 0.0); });
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string(bool compact) const {
  if (is_zero()) return "0";
  if (is_rational()) return format_rational(rational_);
  const std::string plus = compact ? "+" : " + ";
  const std::string minus = compact ? "-" : " - ";
  std::ostringstream os;
  bool first = true;
  for (int i = algebraic_.degree(); i >= 0; --i) {
    mpq_class c = algebraic_.coeff(static_cast<std::size_t>(i));
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? minus : plus);
    }
    first = false;
    std::string mono = i == 0 ? "" : (i == 1 ? field_->name() : field_->name() + "^" + std::to_string(i));
    if (mono.empty()) {
      os << format_rational(c);
    } else if (c == 1) {
      os << mono;
    } else if (c.get_den() == 1) {
      os << format_rational(c) << "*" << mono;
    } else {
      os << "(" << format_rational(c) << ")*" << mono;
    }
  }
  return os.str();
}

}  // namespace gammac
