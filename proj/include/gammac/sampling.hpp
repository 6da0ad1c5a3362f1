#pragma once

// Seeded random towers, elements and operators shared by the tests and the
// acceptance suite.

#include <random>

#include "gammac/carlitz.hpp"
#include "gammac/skew.hpp"
#include "gammac/tower.hpp"

namespace gammac::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

 private:
  std::mt19937_64 gen_;
};

/// Q(c)(nu).
inline TowerHandle tower0() { return make_tower({}); }

/// Adds w = exp(2 pi i nu) (omega = 1, lambda = 1).
inline TowerHandle tower1() {
  TowerSpec s;
  s.generators.push_back({"w", Scalar(1), mpq_class(1)});
  return make_tower(std::move(s));
}

/// Adds w and the 2-periodic v = exp(pi i nu) (omega = -1, lambda = 1/2).
inline TowerHandle tower2() {
  TowerSpec s;
  s.generators.push_back({"w", Scalar(1), mpq_class(1)});
  s.generators.push_back({"v", Scalar(-1), mpq_class(1, 2)});
  return make_tower(std::move(s));
}

inline TowerElement random_rational(Rng& rng, int span = 5) {
  int num = rng.uniform(-span, span);
  return TowerElement(mpq_class(num, rng.uniform(1, 3)));
}

/// Random small tau-constant: rational + rational * (c or a 1-periodic generator).
inline TowerElement random_constant(const Tower& tw, Rng& rng) {
  TowerElement x = random_rational(rng);
  const int pick = rng.uniform(0, static_cast<int>(tw.generator_count()) + 1);
  if (pick == 0) return x;
  TowerElement sym = tw.c();
  if (pick >= 2) {
    const auto g = static_cast<std::size_t>(pick - 2);
    if (tw.generator_info(g).tau_multiplier == Scalar(1)) sym = tw.generator(g);
  }
  return x + random_rational(rng) * sym;
}

/// Random element of the whole tower (may involve nu and non-fixed generators).
inline TowerElement random_element(const Tower& tw, Rng& rng) {
  TowerElement num;
  const int deg = rng.uniform(0, 2);
  for (int i = 0; i <= deg; ++i) num += random_constant(tw, rng) * pow(tw.nu(), i);
  for (std::size_t g = 0; g < tw.generator_count(); ++g)
    if (tw.generator_info(g).tau_multiplier != Scalar(1) && rng.coin(0.4))
      num += random_rational(rng) * tw.generator(g);
  if (rng.coin(0.4)) {
    TowerElement den = tw.nu() + random_rational(rng);
    if (rng.coin(0.3)) den = den * tw.c() + TowerElement(1);
    return num / den;
  }
  return num;
}

inline CarlitzPoly random_carlitz(const TowerHandle& tw, Rng& rng, int max_deg = 4) {
  std::vector<TowerElement> c;
  const int deg = rng.uniform(0, max_deg);
  for (int i = 0; i <= deg; ++i) c.push_back(random_constant(*tw, rng));
  if (c.back().is_zero()) c.back() = TowerElement(1);
  return CarlitzPoly(tw, CarlitzPoly::Poly(std::move(c)));
}

inline SkewOperator random_operator(const TowerHandle& tw, Rng& rng, int max_deg = 4) {
  std::vector<TowerElement> c;
  const int deg = rng.uniform(0, max_deg);
  for (int i = 0; i <= deg; ++i) c.push_back(rng.coin(0.7) ? random_element(*tw, rng) : random_constant(*tw, rng));
  if (c.back().is_zero()) c.back() = TowerElement(1);
  return SkewOperator(tw, std::move(c));
}

}  // namespace gammac::testing
