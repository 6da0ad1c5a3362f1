#include "gammac/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "gammac/analytic.hpp"
#include "gammac/carlitz.hpp"
#include "gammac/errors.hpp"
#include "gammac/fq_oracle.hpp"
#include "gammac/parse.hpp"
#include "gammac/sampling.hpp"
#include "gammac/torsion.hpp"

namespace gammac {

namespace {

using namespace gammac::testing;

// Counts checks; keeps the first failure for the report.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  bool pass() const { return failures_ == 0 && checks_ > 0; }
  std::string summary(const std::string& extra = {}) const {
    std::ostringstream os;
    os << checks_ << " checks, " << failures_ << " failures";
    if (!extra.empty()) os << "; " << extra;
    if (!first_.empty()) os << "; first failure: " << first_;
    return os.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

CarlitzPoly poly(const TowerHandle& tw, const std::string& text) { return parse_carlitz(tw, text); }
SkewOperator op_of(const TowerHandle& tw, const std::string& p) { return expand(poly(tw, p)); }

bool degree_below(const SkewOperator& r, const SkewOperator& b) {
  return r.is_zero() || *r.degree() < *b.degree();
}

std::pair<bool, std::string> exact_algebra() {
  Tally t;
  Rng rng(1001);
  auto tw = tower2();
  for (int k = 0; k < 200; ++k) {
    const auto x = random_element(*tw, rng), y = random_element(*tw, rng), z = random_element(*tw, rng);
    bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
              x + y == y + x && x * y == y * x && x - x == TowerElement();
    if (!x.is_zero()) ok = ok && x * x.inverse() == TowerElement(1);
    t.check(ok, "field axioms at " + tw->format(x));
  }
  for (int k = 0; k < 200; ++k) {
    const auto a = random_operator(tw, rng), b = random_operator(tw, rng), c = random_operator(tw, rng);
    t.check((a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c,
            "skew associativity/distributivity");
  }
  for (int k = 0; k < 200; ++k) {
    const auto a = random_operator(tw, rng, 5), b = random_operator(tw, rng, 3);
    const auto [qr, rr] = right_divmod(a, b);
    const auto [ql, rl] = left_divmod(a, b);
    t.check(qr * b + rr == a && degree_below(rr, b) && b * ql + rl == a && degree_below(rl, b), "division");
  }
  for (int k = 0; k < 200; ++k) {
    const auto a = random_carlitz(tw, rng), b = random_carlitz(tw, rng);
    t.check(expand(a * b) == expand(a) * expand(b), "morphism");
  }
  int signed_heads = 0;
  for (int k = 0; k < 200; ++k) {
    const auto a = random_carlitz(tw, rng);
    const auto e = expand(a);
    t.check(e.coefficient(0) == gamma_map(a), "(a)_0 = gamma(a)");
    t.check(*e.degree() == static_cast<std::size_t>(a.degree()) && e.leading() == a.poly().lead(),
            "(a)_d = a_d for d = " + std::to_string(a.degree()));
    // C_t = nu - tau puts (-1)^d a_d on tau^d
    const TowerElement sign(a.degree() % 2 == 0 ? 1 : -1);
    signed_heads += e.leading() == sign * a.poly().lead();
  }
  return {t.pass(), t.summary("(a)_d = (-1)^d a_d held in " + std::to_string(signed_heads) + "/200 cases")};
}

std::pair<bool, std::string> commutation() {
  Tally t;
  Rng rng(1002);
  for (const auto& tw : {tower0(), tower1(), tower2()}) {
    const auto tau = SkewOperator::tau(tw);
    for (int k = 0; k < 100; ++k) {
      const auto a = random_carlitz(tw, rng, 4);
      const auto ca = expand(a);
      t.check(tau * ca == expand(shift_A(a)) * tau, "tau C_a");
      // D o C_a - C_a o D as operators is the coefficient-wise derivative
      t.check(derive_coefficients(ca) == expand(derive_A(a)), "D C_a - C_a D");
    }
  }
  return {t.pass(), t.summary("towers with 0, 1, 2 periodic generators")};
}

std::pair<bool, std::string> hat_properties() {
  Tally t;
  auto tw = tower0();
  t.check(hat_reduce(parse_factored(tw, "(t)^1 * (t+1)^1")).to_string() == "(t)^1", "t(t+1) -> t");
  t.check(hat_reduce(parse_factored(tw, "(t)^2 * (t+1)^1")).to_string() == "(t)^2", "t^2(t+1) -> t^2");
  Rng rng(1003);
  const char* bases[] = {"t", "t^2-2", "t^2+t+1", "t^3-3"};
  for (int k = 0; k < 100; ++k) {
    std::vector<Factor> fs;
    for (int j = 0; j < 4; ++j) {
      const auto cand = shift_A(poly(tw, bases[rng.uniform(0, 3)]), rng.uniform(-3, 3));
      bool dup = false;
      for (const auto& f : fs) dup = dup || f.poly == cand;
      if (!dup) fs.push_back({cand, static_cast<unsigned>(rng.uniform(1, 3))});
    }
    const auto hat = hat_reduce(FactoredPoly(tw, TowerElement(1), fs));
    bool coprime = true;
    for (std::size_t i = 0; i < hat.factors().size(); ++i)
      for (std::size_t j = 0; j < hat.factors().size(); ++j)
        if (i != j) coprime = coprime && !detect_shift(hat.factors()[i].poly, hat.factors()[j].poly).has_value();
    t.check(coprime, "shift-coprime output " + hat.to_string());
    t.check(hat_reduce(hat).to_string() == hat.to_string(), "idempotence " + hat.to_string());
  }
  return {t.pass(), t.summary()};
}

TorsionResidue random_residue(const TowerHandle& tw, Rng& rng, const CarlitzPoly& m) {
  return normalize(random_carlitz(tw, rng, m.degree() + 1), m);
}

std::pair<bool, std::string> torsion_galois() {
  Tally t;
  Rng rng(1004);
  auto tw = tower1();
  const char* splits[] = {"(t)^1 * (t^2-2)^1", "(t)^2 * (t+1)^1 * (t^2-3)^1", "(t^2-w)^1 * (t-1)^2", "(t)^3 * (t-2)^1"};
  for (int k = 0; k < 100; ++k) {
    const CrtSplit split(parse_factored(tw, splits[k % 4]));
    const auto x = random_residue(tw, rng, split.modulus());
    t.check(split.recombine(split.split(x)) == x, "CRT round trip");
  }
  for (const char* m_text : {"t^2-2", "t^3"}) {
    const auto m = poly(tw, m_text);
    int pairs = 0;
    while (pairs < 100) {
      const auto b = random_residue(tw, rng, m), b2 = random_residue(tw, rng, m);
      if (!inverse(b) || !inverse(b2)) continue;
      ++pairs;
      t.check(exact_equal(galois_matrix(b * b2), exact_product(galois_matrix(b), galois_matrix(b2))),
              std::string("Phi multiplicative mod ") + m_text);
    }
  }
  const std::pair<const char*, const char*> cases[] = {
      {"t^3", "t"}, {"t^3-2*t", "t"}, {"t^3-2*t", "t^2-2"}, {"t^4-4*t^2+4", "t^2-2"}};
  int units = 0;
  for (int k = 0; k < 100; ++k) {
    const auto& [m_text, factor] = cases[k % 4];
    const auto m = poly(tw, m_text);
    auto b = random_carlitz(tw, rng, m.degree());
    if (rng.coin()) b = b * poly(tw, factor);
    const auto x = normalize(b, m);
    const bool gen = is_generator(x);
    units += gen;
    t.check(gen == spans_quotient(x) && gen == inverse(x).has_value(), "generator vs unit");
  }
  return {t.pass(), t.summary(std::to_string(units) + "/100 residues were units")};
}

std::pair<bool, std::string> gamma_numerics() {
  Tally t;
  std::mt19937_64 gen(1005);
  std::uniform_real_distribution<double> re(-20.0, 19.0), im(-10.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Complex z;
    do z = {re(gen), im(gen)};
    while (std::abs(z.imag()) < 0.05 && std::abs(z.real() - std::round(z.real())) < 0.05);
    const auto g1 = gamma_fn(z + 1.0);
    const double e = std::abs(g1 - z * gamma_fn(z)) / std::abs(g1);
    worst = std::max(worst, e);
    t.check(e <= 1e-12, "functional equation");
  }
  t.check(std::abs(gamma_fn(1.0) - 1.0) <= 1e-14, "Gamma(1)");
  const auto h = gamma_fn(0.5);
  t.check(std::abs(h * h - std::numbers::pi) <= 1e-12 * std::numbers::pi, "Gamma(1/2)^2");
  double euler = 0.0;
  for (double nu : {0.3, 0.5, 1.7}) {
    const double d = std::abs(euler_product_partial(nu, 1000000) - gamma_fn(nu));
    euler = std::max(euler, d);
    t.check(d <= 1e-3, "Euler product at " + num(nu));
  }
  return {t.pass(), t.summary("worst functional-equation error " + num(worst) + ", Euler product gap " + num(euler))};
}

std::pair<bool, std::string> solution_residuals() {
  Tally t;
  auto tw = tower1();
  double worst = 0.0, control = 1e300;
  const std::pair<const char*, const char*> cases[] = {
      {"t", "(t)^1"}, {"t^2", "(t)^2"}, {"t^2-2", "(t^2-2)^1"}, {"t^3-2", "(t^3-2)^1"}, {"t^2-w", "(t^2-w)^1"}};
  for (const auto& [p, factored] : cases) {
    const auto l = op_of(tw, p);
    const auto basis = solution_basis(parse_factored(tw, factored));
    // the mismatched operator is that of p + 1
    const auto wrong = op_of(tw, std::string(p) + "+1");
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const auto rep = residual_scan(l, basis[r]);
      worst = std::max(worst, rep.max_residual);
      t.check(rep.max_residual <= 1e-8 && rep.points.size() == 20, std::string(p) + " r=" + std::to_string(r));
      const double bad = residual_scan(wrong, basis[r]).max_residual;
      control = std::min(control, bad);
      t.check(bad >= 1e-2, std::string("control ") + p + " r=" + std::to_string(r));
    }
  }
  return {t.pass(), t.summary("max residual " + num(worst) + ", min control residual " + num(control))};
}

std::pair<bool, std::string> derivative_torsion() {
  Tally t;
  auto tw = tower1();
  double worst = 0.0, control = 1e300;
  for (const char* p : {"t", "t^2-2"}) {
    const auto d = RootDescriptor::from_poly(poly(tw, p));
    const auto l = op_of(tw, p);
    const auto l2 = op_of(tw, std::string("(") + p + ")^2");
    for (int r = 0; r < d.size(); ++r) {
      const auto dy = derive_solution(build_solution(d, r), 1);
      const double good = residual_scan(l2, dy).max_residual;
      const double bad = residual_scan(l, dy).max_residual;
      worst = std::max(worst, good);
      control = std::min(control, bad);
      t.check(good <= 1e-5, std::string(p) + "^2 on D(y)");
      t.check(bad >= 1e-2, std::string(p) + " on D(y)");
    }
  }
  return {t.pass(), t.summary("max residual " + num(worst) + ", min control residual " + num(control))};
}

std::pair<bool, std::string> casoratian_criterion() {
  Tally t;
  auto tw = tower1();
  double min_det = 1e300, worst_twist = 0.0;
  for (const char* text : {"(t)^1", "(t)^2", "(t^2-2)^1", "(t^3-2)^1", "(t^2-w)^1", "(t^2-2)^2"}) {
    const auto f = parse_factored(tw, text);
    const auto basis = solution_basis(f);
    const auto l = expand(f.product());
    for (const auto& nu : SampleSpec{}.nodes()) {
      const auto c = casoratian_numeric(basis, nu, &l);
      min_det = std::min(min_det, std::abs(c.det));
      worst_twist = std::max(worst_twist, *c.twist_residual);
      t.check(std::abs(c.det) >= 1e-6, std::string("det for ") + text);
      t.check(*c.twist_residual <= 1e-6, std::string("twist for ") + text);
    }
  }
  return {t.pass(), t.summary("min |det| " + num(min_det) + ", max twist residual " + num(worst_twist))};
}

std::pair<bool, std::string> finite_oracle() {
  using namespace gammac::fq;
  Tally t;
  const std::pair<int, const char*> curated[] = {
      {2, "t"},       {2, "t^2"},       {2, "t^3"},       {2, "t^4"},         {2, "t^2+t+1"},
      {2, "t^3+t+1"}, {2, "t*(t^2+t+1)"}, {2, "t^2*(t^2+t+1)"}, {2, "(t^2+t+1)^2"}, {2, "t^3*(t^2+t+1)"},
      {3, "t"},       {3, "t^2"},       {3, "t^3"},       {3, "t+1"},         {3, "t^2+1"},
      {3, "t*(t+1)"}, {3, "t^2*(t+1)"}, {3, "(t+1)^2"},   {3, "t*(t^2+1)"},   {3, "t^2+t+2"},
  };
  int max_m = 0;
  for (const auto& [q, text] : curated) {
    const auto a = FqPoly::parse(text, q);
    const FqContext base(q, FqPoly::parse("x", q, "x"), FqPoly::parse("1", q, "x"));
    const auto ctx = fq_saturate(a, base, 12);
    t.check(ctx.has_value(), std::string("saturation for ") + text);
    if (!ctx) continue;
    max_m = std::max(max_m, ctx->m());
    const auto s = fq_structure(a, *ctx);
    t.check(s.kernel_dim == a.degree() && s.cyclic && s.generators == s.units,
            "structure for " + std::to_string(q) + ":" + text);
  }
  std::mt19937_64 gen(1009);
  const FqContext ctxs[] = {FqContext::with_degree(2, 5, FqPoly::parse("t+1", 2)),
                            FqContext::with_degree(3, 3, FqPoly::parse("t+1", 3))};
  int dependent = 0;
  for (int k = 0; k < 200; ++k) {
    const auto& ctx = ctxs[k % 2];
    const int s = 1 + static_cast<int>(gen() % 4);
    std::vector<Elem> xs;
    for (int i = 0; i < s; ++i) xs.push_back(ctx.from_index(gen() % ctx.size()));
    if (k % 4 >= 2 && s > 1)
      xs.back() = ctx.add(xs[0], static_cast<int>(gen() % static_cast<unsigned>(ctx.q())) * xs[static_cast<std::size_t>(1 % (s - 1))]);
    const bool indep = fq_rank(xs, ctx) == s;
    dependent += !indep;
    t.check(!moore_casoratian(xs, ctx).is_zero() == indep, "Moore vs rank");
  }
  return {t.pass(), t.summary("largest m " + std::to_string(max_m) + ", " + std::to_string(dependent) +
                              "/200 dependent tuples")};
}

std::pair<bool, std::string> embedding_coherence() {
  Tally t;
  Rng rng(1010);
  auto tw = tower2();
  int poles = 0;
  double shift_err = 0.0, derive_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto x = random_element(*tw, rng);
    const std::complex<double> nu0(rng.real(-3.0, 3.0), 0.5);
    try {
      const auto lhs = tw->eval(tw->shift(x, 1), nu0);
      const auto rhs = tw->eval(x, nu0 + 1.0);
      const double es = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
      const double h = 1e-5;
      const auto fd = (tw->eval(x, nu0 + h) - tw->eval(x, nu0 - h)) / (2.0 * h);
      const auto d = tw->eval(tw->derive(x), nu0);
      const double ed = std::abs(fd - d) / (1.0 + std::abs(d));
      shift_err = std::max(shift_err, es);
      derive_err = std::max(derive_err, ed);
      t.check(es <= 1e-10, "shift at " + tw->format(x));
      t.check(ed <= 1e-6, "derive at " + tw->format(x));
    } catch (const PoleError&) {
      ++poles;
    }
  }
  t.check(poles <= 10, "too many samples hit poles");
  return {t.pass(), t.summary("max shift error " + num(shift_err) + ", max derive error " + num(derive_err) + ", " +
                              std::to_string(poles) + " pole samples skipped")};
}

struct Criterion {
  const char* title;
  std::function<std::pair<bool, std::string>()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"exact algebra suite", exact_algebra},
      {"commutation identities", commutation},
      {"hat reduction", hat_properties},
      {"torsion and Galois symbol", torsion_galois},
      {"gamma numerics", gamma_numerics},
      {"solution residuals", solution_residuals},
      {"derivative torsion", derivative_torsion},
      {"Casoratian determinant and twist", casoratian_criterion},
      {"finite-field oracle", finite_oracle},
      {"embedding coherence", embedding_coherence},
  };
  return all;
}

}  // namespace

int acceptance_criterion_count() { return static_cast<int>(criteria().size()); }

CriterionResult run_acceptance_criterion(int id) {
  if (id < 1 || id > acceptance_criterion_count()) throw InvalidArgument("no acceptance criterion " + std::to_string(id));
  const auto& c = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::tie(r.pass, r.detail) = c.run();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= acceptance_criterion_count(); ++i) out.push_back(run_acceptance_criterion(i));
  return out;
}

}  // namespace gammac
