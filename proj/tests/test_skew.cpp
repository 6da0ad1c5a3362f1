#include "doctest.h"
#include "gammac/parse.hpp"
#include "gammac/skew.hpp"
#include "support.hpp"

using namespace gammac;
using namespace gammac::testing;

namespace {

SkewOperator op(const TowerHandle& tw, const char* text) { return parse_operator(tw, text); }

bool degree_below(const SkewOperator& r, const SkewOperator& b) {
  return r.is_zero() || *r.degree() < *b.degree();
}

}  // namespace

TEST_CASE("skew_mul examples") {
  auto tw = tower1();
  const auto tau = SkewOperator::tau(tw);
  const auto nu = SkewOperator(tw, tw->nu());
  CHECK(tau * nu == op(tw, "(nu+1)*tau"));
  CHECK(SkewOperator(tw, TowerElement(1)) * op(tw, "nu*w + tau^2") == op(tw, "nu*w + tau^2"));
  CHECK(op(tw, "nu - tau") * op(tw, "nu - tau") == op(tw, "nu^2 - (2*nu+1)*tau + tau^2"));
  CHECK((op(tw, "nu - tau") * op(tw, "nu - tau")).to_string() == "nu^2 - (2*nu+1)*tau + tau^2");
  CHECK(!SkewOperator(tw).degree().has_value());
}

TEST_CASE("skew_mul rejects operators over different towers") {
  auto a = tower1(), b = tower1();
  CHECK_THROWS_AS(SkewOperator::tau(a) * SkewOperator::tau(b), TowerMismatch);
}

TEST_CASE("right_divmod examples") {
  auto tw = tower1();
  const auto ct = op(tw, "nu - tau");
  auto [q, r] = right_divmod(ct * ct, ct);
  CHECK(q == ct);
  CHECK(r.is_zero());

  auto [q2, r2] = right_divmod(SkewOperator::tau(tw), ct);
  CHECK(q2 == SkewOperator(tw, TowerElement(-1)));
  CHECK(r2 == SkewOperator(tw, tw->nu()));

  const auto a = op(tw, "nu*tau^2 + w");
  const auto f = (tw->nu() * tw->nu() + 1) / (tw->nu() - 3);
  auto [q3, r3] = right_divmod(a, SkewOperator(tw, f));
  CHECK(q3 == a * SkewOperator(tw, f.inverse()));
  CHECK(r3.is_zero());

  CHECK_THROWS_AS(right_divmod(a, SkewOperator(tw)), DivisionByZero);
}

TEST_CASE("left_divmod examples") {
  auto tw = tower1();
  const auto ct = op(tw, "nu - tau");
  auto [q, r] = left_divmod(ct * ct, ct);
  CHECK(q == ct);
  CHECK(r.is_zero());

  const auto tau = SkewOperator::tau(tw);
  auto [q2, r2] = left_divmod(tau * tau, tau);
  CHECK(q2 == tau);
  CHECK(r2.is_zero());

  auto [q3, r3] = left_divmod(op(tw, "nu*tau"), tau);
  CHECK(q3 == SkewOperator(tw, tw->nu() - 1));
  CHECK(tau * q3 + r3 == op(tw, "nu*tau"));
  CHECK(r3.is_zero());
}

TEST_CASE("apply_to_element examples") {
  auto tw = tower1();
  const auto nu = tw->nu();
  const auto w = tw->generator("w");
  CHECK(apply_to_element(op(tw, "nu - tau"), TowerElement(1)) == nu - 1);
  CHECK(apply_to_element(op(tw, "tau^2"), nu) == nu + 2);
  CHECK(apply_to_element(op(tw, "nu - tau"), w) == (nu - 1) * w);
}

TEST_CASE("casoratian examples") {
  auto tw = tower2();
  const auto nu = tw->nu();
  auto rep = casoratian(tw, {TowerElement(1), nu});
  CHECK(rep.determinant == TowerElement(1));
  CHECK(rep.full_rank);
  CHECK(rep.matrix(1, 1) == nu + 1);

  CHECK(casoratian(tw, {nu * nu + tw->c()}).full_rank);

  const auto f = (nu + tw->generator("v")) / (nu - 2);
  auto dep = casoratian(tw, {f, tw->generator("w") * f});
  CHECK(dep.determinant.is_zero());
  CHECK(!dep.full_rank);

  // 1 and the 2-periodic v are k-independent: det = tau(v) - v = -2v.
  auto indep = casoratian(tw, {TowerElement(1), tw->generator("v")});
  CHECK(indep.determinant == TowerElement(-2) * tw->generator("v"));

  // rows are successive shifts of the first
  auto rep3 = casoratian(tw, {nu, nu * nu, tw->generator("v") * nu});
  for (Eigen::Index i = 1; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(rep3.matrix(i, j) == tw->shift(rep3.matrix(i - 1, j), 1));
  CHECK(rep3.full_rank);
}

TEST_CASE("associativity and distributivity on random triples") {
  Rng rng(21);
  auto tw = tower2();
  for (int k = 0; k < 200; ++k) {
    const auto a = random_operator(tw, rng), b = random_operator(tw, rng), c = random_operator(tw, rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE(*(a * b).degree() == *a.degree() + *b.degree());
  }
}

TEST_CASE("division round trips on random pairs") {
  Rng rng(22);
  auto tw = tower2();
  for (int k = 0; k < 200; ++k) {
    const auto a = random_operator(tw, rng, 5), b = random_operator(tw, rng, 3);
    const auto [qr, rr] = right_divmod(a, b);
    REQUIRE(qr * b + rr == a);
    REQUIRE(degree_below(rr, b));
    const auto [ql, rl] = left_divmod(a, b);
    REQUIRE(b * ql + rl == a);
    REQUIRE(degree_below(rl, b));
  }
}

TEST_CASE("evaluation is a ring action") {
  Rng rng(23);
  auto tw = tower2();
  for (int k = 0; k < 100; ++k) {
    const auto a = random_operator(tw, rng, 3), b = random_operator(tw, rng, 3);
    const auto x = random_element(*tw, rng), y = random_element(*tw, rng);
    const auto kc = random_constant(*tw, rng);
    REQUIRE(apply_to_element(a * b, x) == apply_to_element(a, apply_to_element(b, x)));
    REQUIRE(apply_to_element(a, x + y) == apply_to_element(a, x) + apply_to_element(a, y));
    REQUIRE(apply_to_element(a, kc * x) == kc * apply_to_element(a, x));
  }
}

TEST_CASE("derive_coefficients is the commutator with D") {
  Rng rng(24);
  auto tw = tower2();
  for (int k = 0; k < 50; ++k) {
    const auto a = random_operator(tw, rng, 3);
    const auto x = random_element(*tw, rng);
    const auto lhs = tw->derive(apply_to_element(a, x)) - apply_to_element(a, tw->derive(x));
    REQUIRE(lhs == apply_to_element(derive_coefficients(a), x));
  }
}

TEST_CASE("shift_coefficients moves tau past an operator") {
  Rng rng(25);
  auto tw = tower2();
  for (int k = 0; k < 50; ++k) {
    const auto a = random_operator(tw, rng, 3);
    const auto s = static_cast<std::size_t>(rng.uniform(0, 3));
    REQUIRE(SkewOperator::tau(tw, s) * a == shift_coefficients(a, static_cast<long>(s)) * SkewOperator::tau(tw, s));
  }
}

TEST_CASE("casoratian detects k-dependence built syntactically") {
  Rng rng(26);
  auto tw = tower2();
  for (int k = 0; k < 30; ++k) {
    const auto f = random_element(*tw, rng), g = random_element(*tw, rng);
    const auto k1 = random_constant(*tw, rng), k2 = random_constant(*tw, rng);
    REQUIRE(casoratian(tw, {f, g, k1 * f + k2 * g}).determinant.is_zero());
  }
}
