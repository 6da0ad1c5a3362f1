#include "doctest.h"
#include "gammac/parse.hpp"
#include "gammac/torsion.hpp"
#include "support.hpp"

using namespace gammac;
using namespace gammac::testing;

namespace {

CarlitzPoly poly(const TowerHandle& tw, const char* text) { return parse_carlitz(tw, text); }

TorsionResidue residue(const TowerHandle& tw, const char* value, const char* modulus) {
  return normalize(poly(tw, value), poly(tw, modulus));
}

// Multiplication by t on the power basis, written down from the modulus alone.
TowerMatrix mult_by_t(const CarlitzPoly& m) {
  const auto n = static_cast<Eigen::Index>(m.degree());
  TowerMatrix r = exact_zero<TowerElement>(n, n);
  for (Eigen::Index i = 1; i < n; ++i) r(i, i - 1) = TowerElement(1);
  for (Eigen::Index i = 0; i < n; ++i) r(i, n - 1) = -m.coeff(static_cast<std::size_t>(i));
  return r;
}

// b(M_t) by Horner, an independent route to the Galois matrix.
TowerMatrix poly_of_matrix(const CarlitzPoly& b, const TowerMatrix& mt) {
  const auto n = mt.rows();
  TowerMatrix acc = exact_zero<TowerElement>(n, n);
  for (int i = b.degree(); i >= 0; --i) {
    acc = exact_product(acc, mt);
    for (Eigen::Index j = 0; j < n; ++j) acc(j, j) += b.coeff(static_cast<std::size_t>(i));
  }
  return acc;
}

TorsionResidue random_residue(const TowerHandle& tw, Rng& rng, const CarlitzPoly& m) {
  return normalize(random_carlitz(tw, rng, m.degree() + 1), m);
}

}  // namespace

TEST_CASE("normalize examples") {
  auto tw = tower0();
  CHECK(residue(tw, "t^2", "t^2-2").value() == poly(tw, "2"));
  CHECK(residue(tw, "t+1", "t^3").value() == poly(tw, "t+1"));
  CHECK(residue(tw, "t^3", "t^2-2").value() == poly(tw, "2*t"));
  CHECK_THROWS_AS(residue(tw, "t", "2*t^2-2"), InvalidArgument);
  CHECK_THROWS_AS(residue(tw, "t", "5"), InvalidArgument);
}

TEST_CASE("act examples") {
  auto tw = tower0();
  const auto x = residue(tw, "t", "t^2-2");
  CHECK(act(poly(tw, "1"), x) == x);
  CHECK(act(poly(tw, "t"), x).value() == poly(tw, "2"));
  CHECK(act(poly(tw, "t^2-2"), x).is_zero());
  CHECK(act(poly(tw, "t^2-2"), residue(tw, "3*t+7", "t^2-2")).is_zero());
}

TEST_CASE("inverse examples") {
  auto tw = tower0();
  CHECK(inverse(residue(tw, "t+1", "t^2"))->value() == poly(tw, "1-t"));
  CHECK(!inverse(residue(tw, "t", "t^2")).has_value());
  CHECK(inverse(residue(tw, "1", "t^3-2"))->value() == poly(tw, "1"));
}

TEST_CASE("crt_split examples") {
  auto tw = tower0();
  const CrtSplit split(parse_factored(tw, "(t)^1 * (t^2-2)^1"));
  const auto m = split.modulus();
  CHECK(m == poly(tw, "t^3-2*t"));

  const auto one = split.split(normalize(poly(tw, "1"), m));
  REQUIRE(one.size() == 2);
  CHECK(one[0].value() == poly(tw, "1"));
  CHECK(one[1].value() == poly(tw, "1"));

  const auto tt = split.split(normalize(CarlitzPoly::t(tw), m));
  CHECK(tt[0].is_zero());
  CHECK(tt[1].value() == CarlitzPoly::t(tw));

  const auto e = split.recombine({normalize(poly(tw, "1"), split.component_moduli()[0]),
                                  normalize(poly(tw, "0"), split.component_moduli()[1])});
  CHECK(e.value() == poly(tw, "1 - t^2/2"));
  CHECK(split.idempotents()[0] == poly(tw, "1 - t^2/2"));

  CHECK(CrtSplit(parse_factored(tw, "(t)^1 * (t)^2")).modulus() == poly(tw, "t^3"));
  // reducibility is only checked over Q, so a shared factor can slip through to the split
  CHECK_THROWS_AS(CrtSplit(parse_factored(tw, "(t-c)^1 * (t^2-c^2)^1")), InvalidArgument);
}

TEST_CASE("galois_matrix examples") {
  auto tw = tower0();
  const auto id = galois_matrix(residue(tw, "1", "t^2-2"));
  CHECK(exact_equal(id, exact_identity<TowerElement>(2)));

  const auto gt = galois_matrix(residue(tw, "t", "t^2-2"));
  CHECK(gt(0, 0) == TowerElement(0));
  CHECK(gt(0, 1) == TowerElement(2));
  CHECK(gt(1, 0) == TowerElement(1));
  CHECK(gt(1, 1) == TowerElement(0));

  const auto gt2 = galois_matrix(residue(tw, "t^2", "t^2-2"));
  CHECK(exact_equal(exact_product(gt, gt), gt2));
  auto two = exact_identity<TowerElement>(2);
  two(0, 0) = two(1, 1) = TowerElement(2);
  CHECK(exact_equal(gt2, two));

  CHECK_THROWS_AS(galois_matrix(residue(tw, "t", "t^2")), InvalidArgument);
}

TEST_CASE("is_generator examples") {
  auto tw = tower0();
  CHECK(is_generator(residue(tw, "1", "t^2")));
  CHECK(!is_generator(residue(tw, "t", "t^2")));
  CHECK(is_generator(residue(tw, "t+1", "t^2")));
  CHECK(!spans_quotient(residue(tw, "t", "t^2")));
  CHECK(spans_quotient(residue(tw, "t+1", "t^2")));
}

TEST_CASE("ring axioms and the action on random residues") {
  Rng rng(41);
  auto tw = tower1();
  for (const char* m_text : {"t^2-2", "t^3", "t^2-w"}) {
    const auto m = poly(tw, m_text);
    for (int k = 0; k < 40; ++k) {
      const auto x = random_residue(tw, rng, m), y = random_residue(tw, rng, m), z = random_residue(tw, rng, m);
      REQUIRE((x + y) * z == x * z + y * z);
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x * y == y * x);
      const auto a = random_carlitz(tw, rng), b = random_carlitz(tw, rng);
      REQUIRE(act(a * b, x) == act(a, act(b, x)));
      REQUIRE(act(a + b, x) == act(a, x) + act(b, x));
    }
  }
}

TEST_CASE("annihilator is exactly the ideal of the modulus") {
  Rng rng(42);
  auto tw = tower1();
  const auto m = poly(tw, "t^3-2");
  const auto one = normalize(poly(tw, "1"), m);
  for (int k = 0; k < 50; ++k) {
    auto b = random_carlitz(tw, rng, 3);
    const bool multiple = rng.coin();
    if (multiple) b = b * m;
    // b kills everything iff it kills the residue 1, iff m | b
    bool kills_all = act(b, one).is_zero();
    for (int j = 0; j < 3; ++j) kills_all = kills_all && act(b, random_residue(tw, rng, m)).is_zero();
    REQUIRE(kills_all == normalize(b, m).is_zero());
    if (multiple) REQUIRE(kills_all);
  }
}

TEST_CASE("inverse on random residues") {
  Rng rng(43);
  auto tw = tower1();
  for (const char* m_text : {"t^2-2", "t^3", "t^2-w", "t^3-2*t"}) {
    const auto m = poly(tw, m_text);
    const auto one = normalize(poly(tw, "1"), m);
    for (int k = 0; k < 25; ++k) {
      const auto x = random_residue(tw, rng, m);
      const auto inv = inverse(x);
      REQUIRE(inv.has_value() == is_generator(x));
      if (inv) REQUIRE(x * *inv == one);
    }
  }
}

TEST_CASE("CRT split and recombine are inverse ring maps") {
  Rng rng(44);
  auto tw = tower1();
  for (const char* f_text : {"(t)^1 * (t^2-2)^1", "(t)^2 * (t+1)^1 * (t^2-3)^1", "(t^2-w)^1 * (t-1)^2"}) {
    const CrtSplit split(parse_factored(tw, f_text));
    const auto& m = split.modulus();
    for (int k = 0; k < 34; ++k) {
      const auto x = random_residue(tw, rng, m), y = random_residue(tw, rng, m);
      const auto parts = split.split(x);
      REQUIRE(split.recombine(parts) == x);
      for (std::size_t i = 0; i < parts.size(); ++i)
        REQUIRE(parts[i] == normalize(x.value(), split.component_moduli()[i]));
      const auto px = split.split(x), py = split.split(y), pxy = split.split(x * y);
      for (std::size_t i = 0; i < parts.size(); ++i) REQUIRE(pxy[i] == px[i] * py[i]);
    }
    // idempotents: e_i e_j = delta_ij e_i and sum e_i = 1
    const auto& es = split.idempotents();
    CarlitzPoly sum(tw);
    for (std::size_t i = 0; i < es.size(); ++i) {
      sum = sum + es[i];
      for (std::size_t j = 0; j < es.size(); ++j) {
        const auto prod = normalize(es[i] * es[j], m);
        REQUIRE(prod == (i == j ? normalize(es[i], m) : normalize(CarlitzPoly(tw), m)));
      }
    }
    REQUIRE(normalize(sum, m).value() == poly(tw, "1"));
  }
}

TEST_CASE("Galois symbol is multiplicative on random unit pairs") {
  Rng rng(45);
  auto tw = tower1();
  for (const char* m_text : {"t^2-2", "t^3"}) {
    const auto m = poly(tw, m_text);
    const auto mt = mult_by_t(m);
    int pairs = 0;
    while (pairs < 100) {
      const auto b = random_residue(tw, rng, m), b2 = random_residue(tw, rng, m);
      if (!inverse(b) || !inverse(b2)) continue;
      ++pairs;
      const auto gb = galois_matrix(b), gb2 = galois_matrix(b2);
      REQUIRE(exact_equal(gb, poly_of_matrix(b.value(), mt)));
      REQUIRE(exact_equal(galois_matrix(b * b2), exact_product(gb, gb2)));
      REQUIRE(exact_equal(exact_product(gb, galois_matrix(*inverse(b))), exact_identity<TowerElement>(m.degree())));
    }
  }
}

TEST_CASE("Galois matrix is invertible exactly for units") {
  Rng rng(46);
  auto tw = tower0();
  const auto m = poly(tw, "t^3-2*t");
  const auto mt = mult_by_t(m);
  for (int k = 0; k < 50; ++k) {
    const auto b = random_residue(tw, rng, m);
    const bool invertible = !exact_determinant(poly_of_matrix(b.value(), mt)).is_zero();
    REQUIRE(invertible == inverse(b).has_value());
  }
}

TEST_CASE("generator criterion: gcd test agrees with the spanning test") {
  Rng rng(47);
  auto tw = tower1();
  int units = 0, non_units = 0;
  const std::pair<const char*, const char*> cases[] = {
      {"t^3", "t"}, {"t^3-2*t", "t"}, {"t^3-2*t", "t^2-2"}, {"t^4-4*t^2+4", "t^2-2"}};
  for (const auto& [m_text, factor] : cases) {
    const auto m = poly(tw, m_text);
    for (int k = 0; k < 25; ++k) {
      auto b = random_carlitz(tw, rng, m.degree());
      // bias towards non-units by sharing a factor with the modulus half the time
      if (rng.coin()) b = b * poly(tw, factor);
      const auto x = normalize(b, m);
      const bool gen = is_generator(x);
      REQUIRE(gen == spans_quotient(x));
      (gen ? units : non_units) += 1;
    }
  }
  CHECK(units > 20);
  CHECK(non_units > 20);
}
