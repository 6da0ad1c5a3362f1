// Brown's dense modular gcd. Images mod word-size primes are computed by
// evaluating the lowest variable and interpolating; primes are combined by CRT
// and rational reconstruction.

#include "mgcd.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>

namespace gammac::detail {

namespace {

using u64 = std::uint64_t;
using Poly = TowerElement::Poly;

struct Zp {
  u64 p;
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
  u64 inv(u64 a) const {
    u64 r = 1, base = a;
    for (u64 e = p - 2; e; e >>= 1) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
    }
    return r;
  }
};

// Dense recursive polynomial over Z_p. The level is implicit: level 0 is the
// constant c, level L > 0 has coefficients k[i] of level L-1 in the top variable.
struct MP {
  u64 c = 0;
  std::vector<MP> k;
};

bool zero(const MP& a, int level) { return level == 0 ? a.c == 0 : a.k.empty(); }

void trim(MP& a, int level) {
  while (!a.k.empty() && zero(a.k.back(), level - 1)) a.k.pop_back();
}

int deg(const MP& a) { return static_cast<int>(a.k.size()) - 1; }

MP constant(u64 v, int level) {
  MP r;
  if (level == 0) {
    r.c = v;
  } else if (v != 0) {
    r.k.push_back(constant(v, level - 1));
  }
  return r;
}

bool is_constant(const MP& a, int level) {
  if (level == 0) return true;
  return a.k.size() <= 1 && (a.k.empty() || is_constant(a.k[0], level - 1));
}

MP add(const Zp& f, const MP& a, const MP& b, int level, bool subtract) {
  if (level == 0) return MP{subtract ? f.sub(a.c, b.c) : f.add(a.c, b.c), {}};
  MP r;
  r.k.resize(std::max(a.k.size(), b.k.size()));
  for (std::size_t i = 0; i < r.k.size(); ++i) {
    const MP z;
    r.k[i] = add(f, i < a.k.size() ? a.k[i] : z, i < b.k.size() ? b.k[i] : z, level - 1, subtract);
  }
  trim(r, level);
  return r;
}

MP mul(const Zp& f, const MP& a, const MP& b, int level) {
  if (level == 0) return MP{f.mul(a.c, b.c), {}};
  if (a.k.empty() || b.k.empty()) return {};
  MP r;
  r.k.resize(a.k.size() + b.k.size() - 1);
  for (std::size_t i = 0; i < a.k.size(); ++i) {
    if (zero(a.k[i], level - 1)) continue;
    for (std::size_t j = 0; j < b.k.size(); ++j)
      r.k[i + j] = add(f, r.k[i + j], mul(f, a.k[i], b.k[j], level - 1), level - 1, false);
  }
  trim(r, level);
  return r;
}

MP scale(const Zp& f, const MP& a, u64 s, int level) {
  if (level == 0) return MP{f.mul(a.c, s), {}};
  MP r;
  for (const auto& x : a.k) r.k.push_back(scale(f, x, s, level - 1));
  trim(r, level);
  return r;
}

// Multiplies every top coefficient by s (level - 1).
MP mul_coeffs(const Zp& f, const MP& a, const MP& s, int level) {
  MP r;
  for (const auto& x : a.k) r.k.push_back(mul(f, x, s, level - 1));
  trim(r, level);
  return r;
}

// Lex leading exponent, top variable first.
std::vector<int> lead_exponents(const MP& a, int level) {
  std::vector<int> e;
  const MP* x = &a;
  for (int l = level; l > 0 && !x->k.empty(); --l) {
    e.push_back(deg(*x));
    x = &x->k.back();
  }
  return e;
}

u64 lead_constant(const MP& a, int level) { return level == 0 ? a.c : lead_constant(a.k.back(), level - 1); }

MP normalize(const Zp& f, const MP& a, int level) {
  if (zero(a, level)) return a;
  return scale(f, a, f.inv(lead_constant(a, level)), level);
}

// Substitutes x_1 = beta; the result has level - 1.
MP eval_bottom(const Zp& f, const MP& a, int level, u64 beta) {
  if (level == 1) {
    u64 acc = 0;
    for (auto i = a.k.size(); i-- > 0;) acc = f.add(f.mul(acc, beta), a.k[i].c);
    return MP{acc, {}};
  }
  MP r;
  for (const auto& x : a.k) r.k.push_back(eval_bottom(f, x, level - 1, beta));
  trim(r, level - 1);
  return r;
}

int deg_bottom(const MP& a, int level) {
  if (level == 1) return deg(a);
  int d = -1;
  for (const auto& x : a.k) d = std::max(d, deg_bottom(x, level - 1));
  return d;
}

std::optional<MP> divide(const Zp& f, const MP& a, const MP& b, int level) {
  if (level == 0) return MP{f.mul(a.c, f.inv(b.c)), {}};
  if (zero(a, level)) return MP{};
  if (deg(a) < deg(b)) return std::nullopt;
  MP q, r = a;
  q.k.resize(a.k.size() - b.k.size() + 1);
  while (!zero(r, level) && deg(r) >= deg(b)) {
    auto c = divide(f, r.k.back(), b.k.back(), level - 1);
    if (!c) return std::nullopt;
    const auto s = static_cast<std::size_t>(deg(r) - deg(b));
    for (std::size_t i = 0; i < b.k.size(); ++i)
      r.k[i + s] = add(f, r.k[i + s], mul(f, *c, b.k[i], level - 1), level - 1, true);
    q.k[s] = std::move(*c);
    trim(r, level);
  }
  if (!zero(r, level)) return std::nullopt;
  trim(q, level);
  return q;
}

std::optional<MP> divide_coeffs(const Zp& f, const MP& a, const MP& s, int level) {
  MP r;
  for (const auto& x : a.k) {
    auto y = divide(f, x, s, level - 1);
    if (!y) return std::nullopt;
    r.k.push_back(std::move(*y));
  }
  trim(r, level);
  return r;
}

MP univariate_gcd(const Zp& f, MP a, MP b) {
  while (!b.k.empty()) {
    const u64 inv = f.inv(b.k.back().c);
    while (!a.k.empty() && deg(a) >= deg(b)) {
      const u64 c = f.mul(a.k.back().c, inv);
      const auto s = static_cast<std::size_t>(deg(a) - deg(b));
      for (std::size_t i = 0; i < b.k.size(); ++i) a.k[i + s].c = f.sub(a.k[i + s].c, f.mul(c, b.k[i].c));
      trim(a, 1);
    }
    std::swap(a, b);
  }
  return normalize(f, a, 1);
}

// g (level - 1, variables x_2..x_L) viewed at level L with x_1-degree 0.
MP lift(const MP& g, int level) {
  MP r;
  if (level == 1) {
    if (g.c != 0) r.k.push_back(g);
    return r;
  }
  for (const auto& x : g.k) r.k.push_back(lift(x, level - 1));
  trim(r, level);
  return r;
}

// h + u * m, with u of level - 1 (no x_1) and m univariate in x_1.
MP combine(const Zp& f, MP h, const MP& u, const std::vector<u64>& m, int level) {
  if (level == 1) {
    if (h.k.size() < m.size()) h.k.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) h.k[i].c = f.add(h.k[i].c, f.mul(u.c, m[i]));
    trim(h, 1);
    return h;
  }
  if (h.k.size() < u.k.size()) h.k.resize(u.k.size());
  for (std::size_t i = 0; i < u.k.size(); ++i) h.k[i] = combine(f, std::move(h.k[i]), u.k[i], m, level - 1);
  trim(h, level);
  return h;
}

std::optional<MP> gcd(const Zp& f, const MP& a, const MP& b, int level);

std::optional<MP> content(const Zp& f, const MP& a, int level) {
  MP g;
  for (const auto& x : a.k) {
    auto h = gcd(f, g, x, level - 1);
    if (!h) return std::nullopt;
    g = std::move(*h);
    if (!zero(g, level - 1) && is_constant(g, level - 1)) return constant(1, level - 1);
  }
  return g;
}

std::optional<MP> gcd(const Zp& f, const MP& a_in, const MP& b_in, int level) {
  if (zero(a_in, level)) return normalize(f, b_in, level);
  if (zero(b_in, level)) return normalize(f, a_in, level);
  if (level == 0) return constant(1, 0);
  if (level == 1) return univariate_gcd(f, a_in, b_in);

  const auto ca = content(f, a_in, level), cb = content(f, b_in, level);
  if (!ca || !cb) return std::nullopt;
  const auto cg = gcd(f, *ca, *cb, level - 1);
  if (!cg) return std::nullopt;
  const auto a = divide_coeffs(f, a_in, *ca, level);
  const auto b = divide_coeffs(f, b_in, *cb, level);
  if (!a || !b) return std::nullopt;
  MP content_only;
  content_only.k.push_back(*cg);
  if (deg(*a) == 0 || deg(*b) == 0) return content_only;

  const auto gamma = gcd(f, a->k.back(), b->k.back(), level - 1);
  if (!gamma) return std::nullopt;
  const int bound = deg_bottom(*gamma, level - 1) + std::min(deg_bottom(*a, level), deg_bottom(*b, level));

  auto finish = [&](const MP& h) -> std::optional<MP> {
    const auto ch = content(f, h, level);
    if (!ch) return std::nullopt;
    const auto pp = divide_coeffs(f, h, *ch, level);
    if (!pp || !divide(f, *a, *pp, level) || !divide(f, *b, *pp, level)) return std::nullopt;
    return mul_coeffs(f, *pp, *cg, level);
  };

  std::optional<MP> h;
  std::vector<u64> m{1};
  int points = 0;
  std::vector<int> dmain;    // lex leading exponent of the images kept so far
  std::vector<int> ceiling;  // exponents known to be unlucky
  bool tried = false;
  for (u64 beta = 1; beta < static_cast<u64>(4 * bound + 64); ++beta) {
    const MP gb = eval_bottom(f, *gamma, level - 1, beta);
    if (zero(gb, level - 2)) continue;
    const MP ab = eval_bottom(f, *a, level, beta), bb = eval_bottom(f, *b, level, beta);
    if (deg(ab) != deg(*a) || deg(bb) != deg(*b)) continue;
    auto g = gcd(f, ab, bb, level - 1);
    if (!g) return std::nullopt;
    if (deg(*g) == 0) return content_only;
    // An image with a larger leading exponent carries an extra factor.
    const auto e = lead_exponents(*g, level - 1);
    if (!dmain.empty() && e > dmain) continue;
    if (!ceiling.empty() && e >= ceiling) continue;
    if (dmain.empty() || e < dmain) {
      h.reset();
      m = {1};
      points = 0;
      tried = false;
      dmain = e;
    }
    const auto q = divide(f, gb, g->k.back(), level - 2);
    if (!q) continue;
    const MP image = mul_coeffs(f, *g, *q, level - 1);
    bool stable = false;
    if (!h) {
      h = lift(image, level);
    } else {
      u64 m_beta = 0;
      for (auto i = m.size(); i-- > 0;) m_beta = f.add(f.mul(m_beta, beta), m[i]);
      const MP diff = add(f, image, eval_bottom(f, *h, level, beta), level - 1, true);
      stable = zero(diff, level - 1);
      if (!stable) h = combine(f, std::move(*h), scale(f, diff, f.inv(m_beta), level - 1), m, level);
    }
    if (stable && !tried) {
      // The interpolant already explains this point: try it before using more.
      if (auto done = finish(*h)) return done;
    }
    tried = stable;
    std::vector<u64> next(m.size() + 1, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], m[i]);
      next[i] = f.sub(next[i], f.mul(beta, m[i]));
    }
    m = std::move(next);
    if (++points <= bound) continue;
    if (auto done = finish(*h)) return done;
    // Every image so far was unlucky; only a smaller exponent can be right.
    ceiling = dmain;
    dmain.clear();
    h.reset();
    m = {1};
    points = 0;
    tried = false;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Conversion between tower polynomials and images.

std::optional<MP> to_mp(const Zp& f, const TowerElement& e, int level) {
  if (level == 0) {
    if (!e.is_scalar()) throw InvalidArgument("modular gcd: variable above the declared level");
    const mpq_class q = e.scalar().rational();
    const u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), f.p);
    if (den == 0) return std::nullopt;
    return MP{f.mul(mpz_fdiv_ui(q.get_num_mpz_t(), f.p), f.inv(den)), {}};
  }
  MP r;
  if (e.top_var() < level) {
    auto x = to_mp(f, e, level - 1);
    if (!x) return std::nullopt;
    r.k.push_back(std::move(*x));
  } else {
    if (e.denominator().degree() != 0) throw InvalidArgument("modular gcd: input has a denominator");
    for (const auto& c : e.numerator().coeffs()) {
      auto x = to_mp(f, c, level - 1);
      if (!x) return std::nullopt;
      r.k.push_back(std::move(*x));
    }
  }
  trim(r, level);
  return r;
}

std::optional<MP> to_mp(const Zp& f, const Poly& p, int level) {
  MP r;
  for (const auto& c : p.coeffs()) {
    auto x = to_mp(f, c, level - 1);
    if (!x) return std::nullopt;
    r.k.push_back(std::move(*x));
  }
  trim(r, level);
  return r;
}

using Exponents = std::vector<int>;  // top variable first

void flatten(const MP& a, int level, Exponents& prefix, std::vector<std::pair<Exponents, u64>>& out) {
  if (level == 0) {
    if (a.c != 0) out.emplace_back(prefix, a.c);
    return;
  }
  for (std::size_t i = 0; i < a.k.size(); ++i) {
    prefix.push_back(static_cast<int>(i));
    flatten(a.k[i], level - 1, prefix, out);
    prefix.pop_back();
  }
}

std::optional<mpq_class> rational_reconstruction(const mpz_class& u, const mpz_class& m) {
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
  mpz_class r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (abs(s1) > bound || s1 == 0) return std::nullopt;
  mpq_class x(r1, s1);
  x.canonicalize();
  if (x.get_den() != abs(s1)) return std::nullopt;
  return x;
}

// Rebuilds the element of level `level` from terms whose exponent vectors start at
// `depth` (top variable of this level first).
TowerElement build(const std::vector<std::pair<Exponents, mpq_class>>& terms, std::size_t begin, std::size_t end,
                   std::size_t depth, int level) {
  if (level == 0) return begin < end ? TowerElement(terms[begin].second) : TowerElement();
  std::vector<TowerElement> coeffs;
  std::size_t i = begin;
  while (i < end) {
    const int e = terms[i].first[depth];
    std::size_t j = i;
    while (j < end && terms[j].first[depth] == e) ++j;
    if (coeffs.size() <= static_cast<std::size_t>(e)) coeffs.resize(static_cast<std::size_t>(e) + 1);
    coeffs[static_cast<std::size_t>(e)] = build(terms, i, j, depth + 1, level - 1);
    i = j;
  }
  return TowerElement::fraction_coprime(level, Poly(std::move(coeffs)), Poly(TowerElement(1)));
}

}  // namespace

std::optional<Poly> modular_gcd(const Poly& a, const Poly& b, int var,
                                const std::function<bool(const Poly&)>& divides) {
  std::vector<std::pair<Exponents, mpz_class>> acc;
  mpz_class modulus = 1;
  int dmain = INT_MAX;
  mpz_class prime = mpz_class(1) << 61;
  for (int attempt = 0; attempt < 24; ++attempt) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    const Zp f{prime.get_ui()};
    const auto A = to_mp(f, a, var), B = to_mp(f, b, var);
    if (!A || !B || deg(*A) != a.degree() || deg(*B) != b.degree()) continue;
    auto g = gcd(f, *A, *B, var);
    if (!g) continue;
    const MP gn = normalize(f, *g, var);
    if (deg(gn) > dmain) continue;
    std::vector<std::pair<Exponents, u64>> terms;
    Exponents prefix;
    flatten(gn, var, prefix, terms);
    bool same = deg(gn) == dmain && terms.size() == acc.size();
    for (std::size_t i = 0; same && i < terms.size(); ++i) same = terms[i].first == acc[i].first;
    if (!same) {
      dmain = deg(gn);
      acc.clear();
      for (const auto& [e, v] : terms) acc.emplace_back(e, mpz_class(static_cast<unsigned long>(v)));
      modulus = prime;
    } else {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), mpz_class(modulus % prime).get_mpz_t(), prime.get_mpz_t());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        mpz_class delta = (mpz_class(static_cast<unsigned long>(terms[i].second)) - acc[i].second) * inv;
        delta %= prime;
        if (delta < 0) delta += prime;
        acc[i].second += modulus * delta;
      }
      modulus *= prime;
    }
    std::vector<std::pair<Exponents, mpq_class>> rational;
    bool ok = true;
    for (const auto& [e, v] : acc) {
      const auto q = rational_reconstruction(v, modulus);
      if (!q) {
        ok = false;
        break;
      }
      rational.emplace_back(e, *q);
    }
    if (!ok) continue;
    const TowerElement top = build(rational, 0, rational.size(), 0, var);
    Poly candidate = top.top_var() == var ? top.numerator() : Poly(top);
    if (divides(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace gammac::detail
