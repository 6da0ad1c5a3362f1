#include "doctest.h"
#include "gammac/parse.hpp"
#include "support.hpp"

using namespace gammac;
using namespace gammac::testing;

namespace {

std::size_t error_offset(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no ParseError");
  return 0;
}

TowerHandle algebraic_tower() {
  TowerSpec s;
  s.scalar = std::make_shared<const ScalarField>(parse_rational_poly("x^2-2", "x"), "r");
  s.generators.push_back({"w", Scalar(1), mpq_class(1)});
  return make_tower(std::move(s));
}

}  // namespace

TEST_CASE("parse examples") {
  auto tw = tower1();
  const auto op = parse_operator(tw, "nu - tau");
  CHECK(op.degree() == std::size_t{1});
  CHECK(op.coefficient(0) == tw->nu());
  CHECK(op.coefficient(1) == TowerElement(-1));

  const auto p = parse_carlitz(tw, "(3/2)*t^2 - w*t + 1");
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2) == TowerElement(mpq_class(3, 2)));
  CHECK(p.coeff(1) == -tw->generator("w"));

  CHECK(parse_element(tw, "-(-2)^3") == TowerElement(8));
  CHECK(parse_element(tw, "nu^-1") == TowerElement(1) / tw->nu());
  CHECK(parse_element(tw, " 1 /  2 ") == TowerElement(mpq_class(1, 2)));
  CHECK(parse_operator(tw, "tau^2").coefficient(2) == TowerElement(1));
  CHECK(parse_operator(tw, "nu^2 - (2*nu+1)*tau + tau^2") == expand(parse_carlitz(tw, "t^2")));

  const auto f = parse_factored(tw, "3*(t^2-2)^1 * (2*t)^3 * (t)^1");
  CHECK(f.unit() == TowerElement(24));
  REQUIRE(f.factors().size() == 2);
  CHECK(f.product() == parse_carlitz(tw, "24*(t^2-2)*t^4"));

  CHECK(parse_rational_poly("x^3 - x/2 + 1", "x") == QPoly(std::vector<mpq_class>{1, mpq_class(-1, 2), 0, 1}));
}

TEST_CASE("syntax errors carry offsets") {
  auto tw = tower1();
  CHECK(error_offset([&] { parse_carlitz(tw, "t +"); }) == 3);
  CHECK(error_offset([&] { parse_element(tw, "nu * * 2"); }) == 5);
  CHECK(error_offset([&] { parse_element(tw, "(nu + 1"); }) == 7);
  CHECK(error_offset([&] { parse_element(tw, "nu + 1)"); }) == 6);
  CHECK(error_offset([&] { parse_element(tw, "nu # 1"); }) == 3);
  CHECK(error_offset([&] { parse_element(tw, "2 + zeta"); }) == 4);
  CHECK(error_offset([&] { parse_element(tw, "nu^x"); }) == 3);
  // semantic errors point at the offending operand
  CHECK(error_offset([&] { parse_element(tw, "1/(nu-nu)"); }) == 5);
  CHECK(error_offset([&] { parse_carlitz(tw, "t + nu"); }) == 4);
  CHECK(error_offset([&] { parse_carlitz(tw, "1/t"); }) == 2);
  CHECK(error_offset([&] { parse_operator(tw, "nu/tau"); }) == 3);
  CHECK(error_offset([&] { parse_operator(tw, "t"); }) == 0);
  CHECK(error_offset([&] { parse_element(tw, ""); }) == 0);
  CHECK_THROWS_AS(parse_factored(tw, "(t)^0"), ParseError);
  CHECK_THROWS_AS(parse_factored(tw, "(t^2-1)^1"), Error);
}

TEST_CASE("operator print/parse round trip") {
  Rng rng(51);
  for (const auto& tw : {tower0(), tower2(), algebraic_tower()}) {
    for (int k = 0; k < 70; ++k) {
      const auto op = random_operator(tw, rng);
      for (bool compact : {false, true}) {
        const auto text = op.to_string(compact);
        const auto back = parse_operator(tw, text);
        REQUIRE_MESSAGE(back == op, text);
        REQUIRE(back.to_string(compact) == text);
      }
    }
  }
}

TEST_CASE("polynomial and factorization print/parse round trip") {
  Rng rng(52);
  for (const auto& tw : {tower1(), algebraic_tower()}) {
    for (int k = 0; k < 100; ++k) {
      const auto p = random_carlitz(tw, rng);
      const auto text = p.to_string();
      REQUIRE_MESSAGE(parse_carlitz(tw, text) == p, text);
    }
  }
  auto tw = tower0();
  for (const char* text : {"(t^2-2)^1 * (t)^3", "(t)^2 * (t+1)^1", "(t^3-2)^2"}) {
    const auto f = parse_factored(tw, text);
    const auto g = parse_factored(tw, f.to_string());
    CHECK(g.product() == f.product());
    CHECK(g.to_string() == f.to_string());
  }
}

TEST_CASE("algebraic scalars parse by name") {
  auto tw = algebraic_tower();
  const auto r = parse_element(tw, "r");
  CHECK(r * r == TowerElement(2));
  CHECK(parse_element(tw, "1/(r+1)") == parse_element(tw, "r-1"));
  CHECK(tw->format(parse_element(tw, tw->format(r / (tw->nu() + r)))) == tw->format(r / (tw->nu() + r)));
}
