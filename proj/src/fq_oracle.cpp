#include "gammac/fq_oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gammac/errors.hpp"
#include "gammac/parse.hpp"

namespace gammac::fq {

namespace {

int mod(long v, int p) {
  const long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void check_same(const FqPoly& a, const FqPoly& b) {
  if (a.modulus() != b.modulus()) throw InvalidArgument("polynomials over different prime fields");
}

using Matrix = std::vector<std::vector<int>>;

// Row reduction over Z/p in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a, int p) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const int inv = inverse_mod(a[r][c], p);
    for (auto& v : a[r]) v = mod(static_cast<long>(v) * inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const int f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - static_cast<long>(f) * a[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix nullspace(Matrix a, std::size_t cols, int p) {
  const auto pivots = rref(a, p);
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<int> v(cols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = mod(-a[k][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

unsigned long long ipow(unsigned long long b, int e) {
  unsigned long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int inverse_mod(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw DivisionByZero();
  int t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    const int qt = r / nr;
    t = std::exchange(nt, t - qt * nt);
    r = std::exchange(nr, r - qt * nr);
  }
  return mod(t, p);
}

FqPoly::FqPoly(int p, std::vector<int> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& v : c_) v = mod(v, p_);
  trim();
}

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::monomial(int p, int deg, int coeff) {
  std::vector<int> c(static_cast<std::size_t>(deg) + 1, 0);
  c.back() = coeff;
  return FqPoly(p, std::move(c));
}

FqPoly FqPoly::parse(std::string_view text, int p, std::string_view var) {
  const auto q = parse_rational_poly(text, var);
  std::vector<int> c;
  for (const auto& x : q.coeffs()) {
    const mpz_class num = x.get_num() % p, den = x.get_den() % p;
    if (den == 0) throw InvalidArgument("denominator divisible by " + std::to_string(p));
    c.push_back(mod(num.get_si() * inverse_mod(static_cast<int>(den.get_si()), p), p));
  }
  return FqPoly(p, std::move(c));
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return inverse_mod(leading(), p_) * *this;
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
  check_same(a, b);
  std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return FqPoly(a.p_, std::move(c));
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (a.p_ - 1) * b; }

FqPoly operator*(int s, const FqPoly& a) {
  std::vector<int> c = a.c_;
  for (auto& v : c) v = mod(static_cast<long>(v) * s, a.p_);
  return FqPoly(a.p_, std::move(c));
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return FqPoly(a.p_);
  std::vector<long> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += static_cast<long>(a.c_[i]) * b.c_[j];
  std::vector<int> r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) r[i] = mod(c[i], a.p_);
  return FqPoly(a.p_, std::move(r));
}

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
  check_same(a, b);
  if (b.is_zero()) throw DivisionByZero();
  const int p = a.modulus();
  std::vector<int> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {FqPoly(p), a};
  std::vector<int> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  const int inv = inverse_mod(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    const int f = mod(static_cast<long>(r[static_cast<std::size_t>(i)]) * inv, p);
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(i - db + j)];
      x = mod(x - static_cast<long>(f) * b.coeff(j), p);
    }
  }
  return {FqPoly(p, std::move(q)), FqPoly(p, std::move(r))};
}

FqPoly operator/(const FqPoly& a, const FqPoly& b) { return divmod(a, b).first; }
FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) a = std::exchange(b, a % b);
  return a.monic();
}

FqPoly powmod(FqPoly base, unsigned long long e, const FqPoly& m) {
  FqPoly r = FqPoly(m.modulus(), {1}) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

bool is_irreducible(const FqPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const int p = f.modulus();
  const FqPoly x = FqPoly::monomial(p, 1);
  // x^(p^k) mod f for k = 0..n
  std::vector<FqPoly> frob{x % f};
  for (int k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), static_cast<unsigned long long>(p), f));
  if (frob[static_cast<std::size_t>(n)] != x % f) return false;
  for (int r : prime_divisors(n))
    if (gcd(frob[static_cast<std::size_t>(n / r)] - x, f).degree() > 0) return false;
  return true;
}

std::vector<std::pair<FqPoly, int>> factor(const FqPoly& a_in) {
  if (a_in.is_zero()) throw InvalidArgument("factorization of zero");
  const int p = a_in.modulus();
  FqPoly a = a_in.monic();
  std::vector<std::pair<FqPoly, int>> out;
  for (int d = 1; a.degree() >= 2 * d; ++d) {
    // all monic polynomials of degree d
    const auto count = ipow(static_cast<unsigned long long>(p), d);
    for (unsigned long long idx = 0; idx < count && a.degree() >= 2 * d; ++idx) {
      std::vector<int> c(static_cast<std::size_t>(d) + 1, 1);
      auto v = idx;
      for (int i = 0; i < d; ++i, v /= static_cast<unsigned long long>(p)) c[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<unsigned long long>(p));
      const FqPoly g(p, c);
      int mult = 0;
      for (;;) {
        auto [qt, r] = divmod(a, g);
        if (!r.is_zero()) break;
        a = qt;
        ++mult;
      }
      if (mult) out.emplace_back(g, mult);
    }
  }
  if (a.degree() >= 1) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& f) { return f.first == a; });
    if (it != out.end()) ++it->second;
    else out.emplace_back(a, 1);
  }
  return out;
}

std::string FqPoly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const int v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || v != 1) s += std::to_string(v);
    if (i > 0 && v != 1) s += "*";
    if (i > 0) s += std::string(var);
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

FqContext::FqContext(int q, FqPoly modulus, Elem theta) : q_(q), modulus_(std::move(modulus)), theta_(q) {
  if (!is_prime(q)) throw InvalidArgument("q must be prime");
  if (modulus_.modulus() != q || theta.modulus() != q) throw InvalidArgument("field data over the wrong prime");
  if (modulus_.leading() != 1 || !is_irreducible(modulus_))
    throw InvalidArgument("field modulus must be monic irreducible over F_" + std::to_string(q));
  theta_ = theta % modulus_;
}

FqContext FqContext::with_degree(int q, int m, const FqPoly& h) {
  if (h.degree() < 1 || m % h.degree() != 0) throw InvalidArgument("degree of theta must divide m");
  if (!is_prime(q)) throw InvalidArgument("q must be prime");
  std::optional<FqPoly> f;
  const auto count = ipow(static_cast<unsigned long long>(q), m);
  for (unsigned long long idx = 0; idx < count && !f; ++idx) {
    std::vector<int> c(static_cast<std::size_t>(m) + 1, 1);
    auto v = idx;
    for (int i = 0; i < m; ++i, v /= static_cast<unsigned long long>(q)) c[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<unsigned long long>(q));
    FqPoly g(q, c);
    if (g.coeff(0) != 0 && is_irreducible(g)) f = g;
  }
  FqContext ctx(q, *f, FqPoly(q));
  if (h.degree() == 1) {
    ctx.theta_ = FqPoly(q, {mod(-static_cast<long>(h.coeff(0)) * inverse_mod(h.coeff(1), q), q)});
    return ctx;
  }
  for (unsigned long long idx = 0; idx < ctx.size(); ++idx) {
    const Elem y = ctx.from_index(idx);
    Elem acc = ctx.zero();
    for (int i = h.degree(); i >= 0; --i) acc = ctx.add(ctx.mul(acc, y), ctx.element(h.coeff(i)));
    if (acc.is_zero()) {
      ctx.theta_ = y;
      return ctx;
    }
  }
  throw Error("no root of " + h.to_string() + " in F_" + std::to_string(q) + "^" + std::to_string(m));
}

unsigned long long FqContext::size() const { return ipow(static_cast<unsigned long long>(q_), m()); }

Elem FqContext::inverse(const Elem& a) const {
  if (a.is_zero()) throw DivisionByZero();
  return pow(a, size() - 2);
}

std::vector<int> FqContext::coordinates(const Elem& a) const {
  std::vector<int> c(static_cast<std::size_t>(m()), 0);
  for (int i = 0; i <= a.degree(); ++i) c[static_cast<std::size_t>(i)] = a.coeff(i);
  return c;
}

Elem FqContext::from_index(unsigned long long index) const {
  std::vector<int> c(static_cast<std::size_t>(m()), 0);
  for (auto& v : c) {
    v = static_cast<int>(index % static_cast<unsigned long long>(q_));
    index /= static_cast<unsigned long long>(q_);
  }
  return FqPoly(q_, std::move(c));
}

FqPoly FqContext::theta_minpoly() const {
  std::vector<Elem> orbit{theta_};
  for (Elem y = frobenius(theta_); y != theta_; y = frobenius(y)) orbit.push_back(y);
  // prod (t - theta_i), coefficients in F_{q^m}; they land in F_q
  std::vector<Elem> poly{one()};
  for (const auto& r : orbit) {
    std::vector<Elem> next(poly.size() + 1, zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add(next[i + 1], poly[i]);
      next[i] = sub(next[i], mul(poly[i], r));
    }
    poly = std::move(next);
  }
  std::vector<int> c;
  for (const auto& e : poly) {
    if (e.degree() > 0) throw Error("minimal polynomial coefficient outside F_q");
    c.push_back(e.coeff(0));
  }
  return FqPoly(q_, std::move(c));
}

Elem fq_apply(const FqPoly& a, const Elem& x, const FqContext& ctx) {
  if (a.modulus() != ctx.q()) throw InvalidArgument("polynomial over the wrong field");
  Elem y = ctx.reduce(x), acc = ctx.zero();
  for (int i = 0; i <= a.degree(); ++i) {
    if (i > 0) y = ctx.add(ctx.mul(ctx.theta(), y), ctx.frobenius(y));
    if (a.coeff(i)) acc = ctx.add(acc, a.coeff(i) * y);
  }
  return acc;
}

std::vector<Elem> fq_kernel(const FqPoly& a, const FqContext& ctx) {
  const auto m = static_cast<std::size_t>(ctx.m());
  Matrix mat(m, std::vector<int>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = ctx.coordinates(fq_apply(a, FqPoly::monomial(ctx.q(), static_cast<int>(j)), ctx));
    for (std::size_t i = 0; i < m; ++i) mat[i][j] = col[i];
  }
  std::vector<Elem> out;
  for (auto& v : nullspace(std::move(mat), m, ctx.q())) out.push_back(ctx.from_coordinates(v));
  return out;
}

FqStructure fq_structure(const FqPoly& a, const FqContext& ctx) {
  if (a.is_zero()) throw InvalidArgument("C_0 has no finite torsion");
  const int d = a.degree();
  const auto basis = fq_kernel(a, ctx);
  FqStructure s;
  s.kernel_dim = static_cast<int>(basis.size());
  if (s.kernel_dim < d)
    throw Error("torsion not full: kernel dimension " + std::to_string(s.kernel_dim) + " < " + std::to_string(d) +
                "; enlarge m");
  const auto q = static_cast<unsigned long long>(ctx.q());
  const auto total = ipow(q, d);
  if (total > 50'000'000ULL) throw InvalidArgument("torsion module too large to enumerate");

  std::vector<FqPoly> cofactors;  // a / P for the distinct primes P | a
  for (const auto& [pr, e] : factor(a)) cofactors.push_back(a / pr);

  for (unsigned long long idx = 0; idx < total; ++idx) {
    Elem x = ctx.zero();
    auto v = idx;
    for (const auto& b : basis) {
      x = ctx.add(x, static_cast<int>(v % q) * b);
      v /= q;
    }
    const bool gen = std::all_of(cofactors.begin(), cofactors.end(),
                                 [&](const FqPoly& c) { return !fq_apply(c, x, ctx).is_zero(); });
    if (gen) {
      ++s.generators;
      if (!s.witness) s.witness = x;
    }
  }
  for (unsigned long long idx = 0; idx < total; ++idx) {
    std::vector<int> c(static_cast<std::size_t>(d), 0);
    auto v = idx;
    for (auto& x : c) {
      x = static_cast<int>(v % q);
      v /= q;
    }
    if (gcd(FqPoly(ctx.q(), c), a).degree() == 0) ++s.units;
  }
  s.cyclic = s.generators > 0;
  return s;
}

std::optional<FqContext> fq_saturate(const FqPoly& a, const FqContext& start, int cap) {
  const int k = start.m();
  const auto h = start.theta_minpoly();
  for (int m = k; m <= cap; m += k) {
    const FqContext ctx = m == k ? start : FqContext::with_degree(start.q(), m, h);
    if (static_cast<int>(fq_kernel(a, ctx).size()) == a.degree()) return ctx;
  }
  return std::nullopt;
}

Elem moore_casoratian(const std::vector<Elem>& xs, const FqContext& ctx) {
  const std::size_t s = xs.size();
  std::vector<std::vector<Elem>> m(s, std::vector<Elem>(s, ctx.zero()));
  for (std::size_t j = 0; j < s; ++j) {
    Elem y = ctx.reduce(xs[j]);
    for (std::size_t i = 0; i < s; ++i) {
      m[i][j] = y;
      y = ctx.frobenius(y);
    }
  }
  Elem det = ctx.one();
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t piv = c;
    while (piv < s && m[piv][c].is_zero()) ++piv;
    if (piv == s) return ctx.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = (ctx.q() - 1) * det;
    }
    det = ctx.mul(det, m[c][c]);
    const Elem inv = ctx.inverse(m[c][c]);
    for (std::size_t i = c + 1; i < s; ++i) {
      if (m[i][c].is_zero()) continue;
      const Elem f = ctx.mul(m[i][c], inv);
      for (std::size_t j = c; j < s; ++j) m[i][j] = ctx.sub(m[i][j], ctx.mul(f, m[c][j]));
    }
  }
  return det;
}

int fq_rank(const std::vector<Elem>& xs, const FqContext& ctx) {
  if (xs.empty()) return 0;
  Matrix rows;
  for (const auto& x : xs) rows.push_back(ctx.coordinates(ctx.reduce(x)));
  return static_cast<int>(rref(rows, ctx.q()).size());
}

}  // namespace gammac::fq
