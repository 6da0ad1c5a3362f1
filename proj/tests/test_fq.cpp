#include <random>
#include <set>

#include "doctest.h"
#include "gammac/errors.hpp"
#include "gammac/fq_oracle.hpp"

using namespace gammac;
using namespace gammac::fq;

namespace {

FqPoly P(int q, const char* text) { return FqPoly::parse(text, q); }
Elem X(int q, const char* text) { return FqPoly::parse(text, q, "x"); }

FqContext f4() { return FqContext(2, X(2, "x^2+x+1"), X(2, "x")); }  // theta = g, g^2 + g + 1 = 0
FqContext prime_field(int q) { return FqContext(q, X(q, "x"), X(q, "1")); }  // F_q, theta = 1

FqPoly random_poly(int q, std::mt19937_64& gen, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(0, q - 1);
  std::vector<int> c(static_cast<std::size_t>(deg(gen)) + 1);
  for (auto& v : c) v = coef(gen);
  return FqPoly(q, c);
}

Elem random_elem(const FqContext& ctx, std::mt19937_64& gen) {
  std::uniform_int_distribution<unsigned long long> idx(0, ctx.size() - 1);
  return ctx.from_index(idx(gen));
}

unsigned long long brute_kernel_size(const FqPoly& a, const FqContext& ctx) {
  unsigned long long n = 0;
  for (unsigned long long i = 0; i < ctx.size(); ++i) n += fq_apply(a, ctx.from_index(i), ctx).is_zero();
  return n;
}

unsigned long long upow(unsigned long long b, int e) {
  unsigned long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Number of monic irreducibles of degree n over F_q: (1/n) sum_{d | n} mu(d) q^{n/d}.
long necklace(int q, int n) {
  auto mu = [](int d) {
    int r = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      r = -r;
    }
    return d > 1 ? -r : r;
  };
  long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += mu(d) * static_cast<long>(upow(static_cast<unsigned long long>(q), n / d));
  return s / n;
}

struct Curated {
  int q;
  const char* a;
};

const Curated kCurated[] = {
    {2, "t"},           {2, "t^2"},           {2, "t^3"},           {2, "t^4"},           {2, "t^2+t+1"},
    {2, "t^3+t+1"},     {2, "t*(t^2+t+1)"},   {2, "t^2*(t^2+t+1)"}, {2, "(t^2+t+1)^2"},   {2, "t^3*(t^2+t+1)"},
    {3, "t"},           {3, "t^2"},           {3, "t^3"},           {3, "t+1"},           {3, "t^2+1"},
    {3, "t*(t+1)"},     {3, "t^2*(t+1)"},     {3, "(t+1)^2"},       {3, "t*(t^2+1)"},     {3, "t^2+t+2"},
};

}  // namespace

TEST_CASE("polynomials over F_p") {
  CHECK(P(3, "t^2 + 4*t - 1/2").coeffs() == std::vector<int>{1, 1, 1});
  CHECK(P(2, "t^2+t").to_string() == "t^2 + t");
  CHECK(P(3, "2*t^2+1").to_string() == "2*t^2 + 1");
  CHECK_THROWS_AS(P(3, "t/3"), InvalidArgument);
  CHECK(gcd(P(2, "t^2+1"), P(2, "t^2+t")) == P(2, "t+1"));
  const auto f = factor(P(3, "t^2*(t+1)*(t^2+1)^2"));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::make_pair(P(3, "t"), 2));
  CHECK(f[1] == std::make_pair(P(3, "t+1"), 1));
  CHECK(f[2] == std::make_pair(P(3, "t^2+1"), 2));
  CHECK(!is_irreducible(P(2, "t^2+1")));
  CHECK(is_irreducible(P(2, "t^4+t+1")));
  CHECK(!is_irreducible(P(2, "t^4+t^2+1")));  // (t^2+t+1)^2

  std::mt19937_64 gen(71);
  for (int q : {2, 3, 5}) {
    for (int k = 0; k < 100; ++k) {
      const auto a = random_poly(q, gen, 6), b = random_poly(q, gen, 4);
      if (b.is_zero()) continue;
      const auto [qt, r] = divmod(a, b);
      REQUIRE(qt * b + r == a);
      REQUIRE(r.degree() < b.degree());
      if (!a.is_zero()) {
        FqPoly prod(q, {a.leading()});
        for (const auto& [pr, e] : factor(a)) {
          REQUIRE(is_irreducible(pr));
          for (int i = 0; i < e; ++i) prod = prod * pr;
        }
        REQUIRE(prod == a);
      }
    }
  }
  // irreducible counts against the necklace formula
  for (int q : {2, 3}) {
    for (int n = 1; n <= 5; ++n) {
      long count = 0;
      for (unsigned long long idx = 0; idx < upow(static_cast<unsigned long long>(q), n); ++idx) {
        std::vector<int> c(static_cast<std::size_t>(n) + 1, 1);
        auto v = idx;
        for (int i = 0; i < n; ++i, v /= static_cast<unsigned long long>(q))
          c[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<unsigned long long>(q));
        count += is_irreducible(FqPoly(q, c));
      }
      CHECK_MESSAGE(count == necklace(q, n), "q=", q, " n=", n);
    }
  }
}

TEST_CASE("finite field contexts") {
  CHECK_THROWS_AS(FqContext(4, X(2, "x^2+x+1"), X(2, "x")), InvalidArgument);
  CHECK_THROWS_AS(FqContext(2, X(2, "x^2+1"), X(2, "x")), InvalidArgument);
  const auto c4 = f4();
  CHECK(c4.size() == 4);
  CHECK(c4.theta_minpoly() == P(2, "t^2+t+1"));
  CHECK(prime_field(3).theta_minpoly() == P(3, "t-1"));

  const auto big = FqContext::with_degree(2, 4, P(2, "t^2+t+1"));
  CHECK(big.m() == 4);
  CHECK(big.theta_minpoly() == P(2, "t^2+t+1"));
  CHECK_THROWS_AS(FqContext::with_degree(2, 5, P(2, "t^2+t+1")), InvalidArgument);

  std::mt19937_64 gen(72);
  for (const auto& ctx : {FqContext::with_degree(2, 5, P(2, "t+1")), FqContext::with_degree(3, 4, P(3, "t^2+1")),
                          FqContext::with_degree(5, 3, P(5, "t-2"))}) {
    for (int k = 0; k < 50; ++k) {
      const auto a = random_elem(ctx, gen), b = random_elem(ctx, gen), c = random_elem(ctx, gen);
      REQUIRE(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      REQUIRE(ctx.mul(ctx.add(a, b), c) == ctx.add(ctx.mul(a, c), ctx.mul(b, c)));
      REQUIRE(ctx.mul(a, b) == ctx.mul(b, a));
      if (!a.is_zero()) REQUIRE(ctx.mul(a, ctx.inverse(a)) == ctx.one());
      // Frobenius is additive and fixes F_q
      REQUIRE(ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b)));
      REQUIRE(ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b)));
      const int lam = k % ctx.q();
      REQUIRE(ctx.frobenius(lam * a) == lam * ctx.frobenius(a));
      REQUIRE(ctx.pow(a, ctx.size()) == a);
    }
    std::set<std::vector<int>> image;
    for (unsigned long long i = 0; i < ctx.size(); ++i) image.insert(ctx.coordinates(ctx.frobenius(ctx.from_index(i))));
    CHECK(image.size() == ctx.size());
    CHECK_THROWS_AS(ctx.inverse(ctx.zero()), DivisionByZero);
  }
}

TEST_CASE("Carlitz action examples") {
  const auto c = f4();
  const auto g = X(2, "x");
  CHECK(fq_apply(P(2, "t"), g, c).is_zero());
  CHECK(fq_apply(P(2, "t"), c.one(), c) == c.add(g, c.one()));  // g*1 + 1
  CHECK(fq_apply(P(2, "t"), c.zero(), c).is_zero());
  for (unsigned long long i = 0; i < c.size(); ++i) CHECK(fq_apply(P(2, "1"), c.from_index(i), c) == c.from_index(i));

  const auto ker = fq_kernel(P(2, "t"), c);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == g);
  CHECK(fq_kernel(P(2, "1"), c).empty());

  const auto c16 = FqContext::with_degree(2, 4, c.theta_minpoly());
  const auto a = P(2, "t*(t+1)");
  const auto dim = fq_kernel(a, c16).size();
  CHECK(dim <= 2);
  CHECK(brute_kernel_size(a, c16) == upow(2, static_cast<int>(dim)));
}

TEST_CASE("Carlitz action is linear and multiplicative") {
  std::mt19937_64 gen(73);
  const FqContext ctxs[] = {FqContext::with_degree(2, 6, P(2, "t^2+t+1")), FqContext::with_degree(3, 4, P(3, "t+1")),
                            FqContext::with_degree(5, 2, P(5, "t-3"))};
  for (const auto& ctx : ctxs) {
    for (int k = 0; k < 100; ++k) {
      const auto a = random_poly(ctx.q(), gen, 4), b = random_poly(ctx.q(), gen, 4);
      const auto x = random_elem(ctx, gen), y = random_elem(ctx, gen);
      const int lam = static_cast<int>(gen() % static_cast<unsigned>(ctx.q()));
      REQUIRE(fq_apply(a, ctx.add(x, lam * y), ctx) == ctx.add(fq_apply(a, x, ctx), lam * fq_apply(a, y, ctx)));
      REQUIRE(fq_apply(a * b, x, ctx) == fq_apply(a, fq_apply(b, x, ctx), ctx));
      REQUIRE(fq_apply(a + b, x, ctx) == ctx.add(fq_apply(a, x, ctx), fq_apply(b, x, ctx)));
    }
  }
}

TEST_CASE("kernels: dimension bound, brute force, CRT additivity") {
  std::mt19937_64 gen(74);
  const FqContext ctxs[] = {FqContext::with_degree(2, 6, P(2, "t+1")), FqContext::with_degree(3, 4, P(3, "t^2+1"))};
  for (const auto& ctx : ctxs) {
    for (int k = 0; k < 40; ++k) {
      const auto a = random_poly(ctx.q(), gen, 4);
      if (a.is_zero()) continue;
      const auto ker = fq_kernel(a, ctx);
      REQUIRE(static_cast<int>(ker.size()) <= a.degree());
      for (const auto& x : ker) REQUIRE(fq_apply(a, x, ctx).is_zero());
      REQUIRE(brute_kernel_size(a, ctx) == upow(static_cast<unsigned long long>(ctx.q()), static_cast<int>(ker.size())));
    }
  }
  // coprime pairs with full torsion
  const std::pair<const char*, const char*> pairs[] = {{"t", "t^2+t+1"}, {"t^2", "t^2+t+1"}, {"t^3", "t^2+t+1"}};
  for (const auto& [sa, sb] : pairs) {
    const auto a = P(2, sa), b = P(2, sb);
    const auto ctx = fq_saturate(a * b, prime_field(2));
    REQUIRE(ctx);
    CHECK(fq_kernel(a * b, *ctx).size() == fq_kernel(a, *ctx).size() + fq_kernel(b, *ctx).size());
    CHECK(static_cast<int>(fq_kernel(a, *ctx).size()) == a.degree());
  }
}

TEST_CASE("structure examples") {
  const auto s = fq_structure(P(2, "t"), f4());
  CHECK(s.generators == 1);
  CHECK(s.units == 1);
  CHECK(s.cyclic);

  const auto irr = P(2, "t^2+t+1");
  const auto ctx = fq_saturate(irr, prime_field(2));
  REQUIRE(ctx);
  const auto si = fq_structure(irr, *ctx);
  CHECK(si.units == 3);
  CHECK(si.generators == 3);

  const auto sq = P(2, "t^2");
  const auto s2 = fq_structure(sq, *fq_saturate(sq, prime_field(2)));
  CHECK(s2.units == 2);
  CHECK(s2.generators == 2);

  CHECK_THROWS_AS(fq_structure(P(2, "t^3"), f4()), Error);  // torsion not yet full in F_4
  CHECK_THROWS_AS(fq_structure(FqPoly(2), f4()), InvalidArgument);
  // bad reduction: theta is a root of a, so C_a is inseparable and never saturates
  CHECK(!fq_saturate(P(2, "t^2+t+1"), f4()).has_value());
  CHECK(!fq_saturate(P(2, "t^4+t+1"), prime_field(2)).has_value());
}

TEST_CASE("curated torsion saturates and is cyclic with as many generators as units") {
  for (const auto& c : kCurated) {
    const auto a = P(c.q, c.a);
    const auto ctx = fq_saturate(a, prime_field(c.q));
    REQUIRE_MESSAGE(ctx, c.a);
    CHECK(ctx->m() <= 12);
    const auto s = fq_structure(a, *ctx);
    CHECK_MESSAGE(s.kernel_dim == a.degree(), c.a);
    CHECK_MESSAGE(s.cyclic, c.a);
    CHECK_MESSAGE(s.generators == s.units, c.a);
    // the witness has annihilator exactly (a)
    REQUIRE(s.witness);
    CHECK(fq_apply(a, *s.witness, *ctx).is_zero());
    for (const auto& [pr, e] : factor(a)) CHECK(!fq_apply(a / pr, *s.witness, *ctx).is_zero());
  }
}

TEST_CASE("Moore determinant detects linear independence") {
  const auto c = f4();
  const auto g = X(2, "x");
  CHECK(moore_casoratian({g}, c) == g);
  CHECK(moore_casoratian({g, c.mul(c.one(), g)}, c).is_zero());
  CHECK(!moore_casoratian({c.one(), g}, c).is_zero());
  const auto c9 = FqContext::with_degree(3, 2, P(3, "t^2+1"));
  const auto y = X(3, "x+2");
  CHECK(moore_casoratian({y, 2 * y}, c9).is_zero());

  std::mt19937_64 gen(75);
  const FqContext ctxs[] = {FqContext::with_degree(2, 5, P(2, "t+1")), FqContext::with_degree(3, 3, P(3, "t+1"))};
  int independent = 0, dependent = 0;
  for (const auto& ctx : ctxs) {
    for (int k = 0; k < 100; ++k) {
      const auto s = 1 + static_cast<int>(gen() % 4);
      std::vector<Elem> xs;
      for (int i = 0; i < s; ++i) xs.push_back(random_elem(ctx, gen));
      // force dependence half the time
      if (k % 2 && s > 1) xs.back() = ctx.add(xs[0], static_cast<int>(gen() % static_cast<unsigned>(ctx.q())) * xs[static_cast<std::size_t>(1 % (s - 1))]);
      const bool indep = fq_rank(xs, ctx) == s;
      REQUIRE(!moore_casoratian(xs, ctx).is_zero() == indep);
      (indep ? independent : dependent) += 1;
    }
  }
  CHECK(independent > 40);
  CHECK(dependent > 40);
}
