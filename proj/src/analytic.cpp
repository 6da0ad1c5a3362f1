#include "gammac/analytic.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "gammac/errors.hpp"

namespace gammac {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kPoleTol = 1e-10;
constexpr double kModZTol = 1e-8;

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

void check_pole(Complex z) {
  const double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - n) < kPoleTol)
    throw PoleError("gamma pole at " + std::to_string(static_cast<long>(n)));
}

// z minus the nearest even integer: sin(pi z) and cos(pi z) keep their relative
// accuracy next to the zeros.
Complex reduce_even(Complex z) { return z - 2.0 * std::round(z.real() / 2.0); }
Complex sin_pi(Complex z) { return std::sin(pi * reduce_even(z)); }

Complex gamma_lanczos(Complex z) {  // Re z >= 1/2
  const Complex x = z - 1.0;
  Complex a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (x + static_cast<double>(k));
  const Complex t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((x + 0.5) * std::log(t) - t) * a;
}

Complex ipow(Complex z, int r) {
  Complex acc = 1.0;
  for (int i = 0; i < r; ++i) acc *= z;
  return acc;
}

// Distance from z to the nearest integer.
double dist_to_integer(Complex z) { return std::abs(z - std::round(z.real())); }

bool constant_coefficient(const Tower& tw, const TowerElement& x) {
  for (int v = 2; v <= tw.var_nu(); ++v)
    if (x.depends_on(v)) return false;
  return true;
}

std::function<Complex(Complex)> richardson(std::function<Complex(Complex)> f) {
  return [f = std::move(f)](Complex nu) {
    constexpr double h = 1e-3;
    auto central = [&](double s) { return (f(nu + s) - f(nu - s)) / (2.0 * s); };
    const Complex a0 = central(h), a1 = central(h / 2), a2 = central(h / 4);
    const Complex r1 = (4.0 * a1 - a0) / 3.0, r2 = (4.0 * a2 - a1) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  };
}

}  // namespace

Complex gamma_fn(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) return pi / (sin_pi(z) * gamma_lanczos(1.0 - z));
  return gamma_lanczos(z);
}

Complex digamma_fn(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) return digamma_fn(1.0 - z) - pi * std::cos(pi * reduce_even(z)) / sin_pi(z);
  Complex acc = 0.0;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // B_2k / (2k) for k = 1..7
  constexpr std::array<double, 7> b = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760,
                                       1.0 / 12};
  const Complex w = 1.0 / (z * z);
  Complex series = 0.0, wp = w;
  for (double bk : b) {
    series += bk * wp;
    wp *= w;
  }
  return acc + std::log(z) - 0.5 / z - series;
}

Complex euler_product_partial(Complex nu, long n) {
  if (n < 1) throw InvalidArgument("Euler product needs N >= 1");
  check_pole(nu);
  Complex log_sum = 0.0;
  for (long i = 1; i <= n; ++i) {
    const double di = static_cast<double>(i);
    log_sum += nu * std::log1p(1.0 / di) - std::log(1.0 + nu / di);
  }
  return std::exp(log_sum) / nu;
}

Complex pochhammer(Complex x, unsigned n) {
  Complex acc = 1.0;
  for (unsigned i = 0; i < n; ++i) acc *= x + static_cast<double>(i);
  return acc;
}

TowerElement pochhammer(const TowerElement& x, unsigned n) {
  TowerElement acc(1);
  for (unsigned i = 0; i < n; ++i) acc *= x + TowerElement(static_cast<long>(i));
  return acc;
}

RootDescriptor RootDescriptor::algebraic(const CarlitzPoly& p) {
  const auto& tw = *p.tower();
  if (p.degree() < 1) throw InvalidArgument("root system of a constant");
  if (gcd(p.poly(), derivative(p.poly())).degree() > 0) throw InvalidArgument("repeated root in " + p.to_string());
  std::vector<Complex> c;
  double scale = 0.0;
  for (const auto& x : p.poly().coeffs()) {
    if (!constant_coefficient(tw, x)) throw InvalidArgument("coefficient " + tw.format(x) + " is not a constant");
    c.push_back(tw.eval(x, 0.0));
    scale = std::max(scale, std::abs(c.back()));
  }
  auto roots = polynomial_roots(c);
  for (const auto& z : roots) {
    double mag = 0.0, zp = 1.0;
    for (const auto& ci : c) {
      mag += std::abs(ci) * zp;
      zp *= std::abs(z);
    }
    if (std::abs(polyval(c, z)) > 1e-10 * mag) throw Error("root refinement failed");
  }
  RootDescriptor d(p.tower(), AlgebraicConstant{p, std::move(roots)});
  d.check_distinct_mod_z();
  return d;
}

RootDescriptor RootDescriptor::exp_periodic(const TowerHandle& tower, int order, std::size_t base, Complex scale) {
  if (order < 1) throw InvalidArgument("ExpPeriodic order must be positive");
  if (base >= tower->generator_count()) throw InvalidArgument("no such periodic generator");
  const auto& info = tower->generator_info(base);
  if (info.tau_multiplier != Scalar(1) || info.derive_rate.get_den() != 1 || info.derive_rate == 0)
    throw InvalidArgument("ExpPeriodic needs a 1-periodic generator with integer rate");
  if (std::abs(scale) == 0.0) throw InvalidArgument("ExpPeriodic scale must be nonzero");
  RootDescriptor d(tower, ExpPeriodic{order, base, scale, static_cast<int>(info.derive_rate.get_num().get_si())});

  // nu -> nu + 1 must permute the branches cyclically.
  const Complex nu0(0.3, 0.5);
  const auto now = d.values(nu0), next = d.values(nu0 + 1.0);
  const int n = order, lam = std::get<ExpPeriodic>(d.data_).lambda;
  for (int j = 0; j < n; ++j) {
    const auto target = static_cast<std::size_t>(((j + lam) % n + n) % n);
    if (std::abs(next[static_cast<std::size_t>(j)] - now[target]) > 1e-9 * std::abs(now[target]))
      throw Error("ExpPeriodic branches are not permuted by the shift");
  }
  d.check_distinct_mod_z();
  return d;
}

RootDescriptor RootDescriptor::from_poly(const CarlitzPoly& p) {
  const auto& tw = *p.tower();
  bool all_constant = true;
  for (const auto& x : p.poly().coeffs()) all_constant = all_constant && constant_coefficient(tw, x);
  if (all_constant) return algebraic(p);

  const int n = p.degree();
  const auto lead = p.coeff(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i)
    if (!p.coeff(static_cast<std::size_t>(i)).is_zero())
      throw InvalidArgument("root family not supported for " + p.to_string());
  const auto q = -p.coeff(0) / lead;  // t^n = q
  std::optional<std::size_t> base;
  for (std::size_t g = 0; g < tw.generator_count(); ++g) {
    if (!q.depends_on(tw.var_generator(g))) continue;
    if (base) throw InvalidArgument("root family not supported for " + p.to_string());
    base = g;
  }
  if (!base) throw InvalidArgument("root family not supported for " + p.to_string());
  const auto s = q / tw.generator(*base);
  if (!constant_coefficient(tw, s)) throw InvalidArgument("root family not supported for " + p.to_string());
  const Complex sv = tw.eval(s, 0.0);
  return exp_periodic(p.tower(), n, *base, std::exp(std::log(sv) / static_cast<double>(n)));
}

int RootDescriptor::size() const noexcept {
  if (const auto* a = std::get_if<AlgebraicConstant>(&data_)) return static_cast<int>(a->roots.size());
  return std::get<ExpPeriodic>(data_).order;
}

std::vector<Complex> RootDescriptor::values(Complex nu) const {
  if (const auto* a = std::get_if<AlgebraicConstant>(&data_)) return a->roots;
  const auto& e = std::get<ExpPeriodic>(data_);
  const double n = e.order;
  const Complex base = e.scale * std::exp(2.0 * pi * kI * static_cast<double>(e.lambda) * nu / n);
  std::vector<Complex> out;
  for (int j = 0; j < e.order; ++j) out.push_back(base * std::exp(2.0 * pi * kI * static_cast<double>(j) / n));
  return out;
}

std::vector<Complex> RootDescriptor::derivatives(Complex nu) const {
  if (std::holds_alternative<AlgebraicConstant>(data_)) return std::vector<Complex>(static_cast<std::size_t>(size()));
  const auto& e = std::get<ExpPeriodic>(data_);
  auto out = values(nu);
  for (auto& z : out) z *= 2.0 * pi * kI * static_cast<double>(e.lambda) / static_cast<double>(e.order);
  return out;
}

void RootDescriptor::check_distinct_mod_z() const {
  std::vector<Complex> nodes{0.0};
  if (std::holds_alternative<ExpPeriodic>(data_)) nodes = SampleSpec{}.nodes();
  for (const auto& nu : nodes) {
    const auto z = values(nu);
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j)
        if (dist_to_integer(z[i] - z[j]) < kModZTol) throw InvalidArgument("roots are not distinct modulo Z");
  }
}

std::vector<Complex> root_system(const RootDescriptor& d, Complex nu) { return d.values(nu); }

SolutionHandle build_solution(const RootDescriptor& d, int r) {
  if (r < 0 || r >= d.size()) throw InvalidArgument("solution index out of range");
  auto roots = std::make_shared<const RootDescriptor>(d);
  SolutionHandle h{roots, r, 0, nullptr};
  h.evaluator = [roots, r](Complex nu) {
    Complex acc = 0.0;
    for (const auto& z : roots->values(nu)) acc += ipow(z, r) * gamma_fn(nu - z);
    return acc;
  };
  return h;
}

SolutionHandle derive_solution(const SolutionHandle& h, int j) {
  if (j < 0) throw InvalidArgument("negative derivative order");
  if (j == 0) return h;
  SolutionHandle out = h;
  out.derivative_order = h.derivative_order + j;
  int remaining = j;
  if (h.roots && h.derivative_order == 0) {
    auto roots = h.roots;
    const int r = h.power;
    out.evaluator = [roots, r](Complex nu) {
      const auto z = roots->values(nu), dz = roots->derivatives(nu);
      Complex acc = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const Complex g = gamma_fn(nu - z[i]);
        acc += ipow(z[i], r) * g * digamma_fn(nu - z[i]) * (1.0 - dz[i]);
        if (r > 0) acc += static_cast<double>(r) * ipow(z[i], r - 1) * dz[i] * g;
      }
      return acc;
    };
    --remaining;
  }
  for (; remaining > 0; --remaining) out.evaluator = richardson(out.evaluator);
  return out;
}

std::vector<SolutionHandle> solution_basis(const FactoredPoly& a) {
  std::vector<SolutionHandle> out;
  for (const auto& f : a.factors()) {
    const auto d = RootDescriptor::from_poly(f.poly);
    for (int r = 0; r < d.size(); ++r) {
      const auto y = build_solution(d, r);
      for (unsigned k = 0; k < f.exponent; ++k) out.push_back(derive_solution(y, static_cast<int>(k)));
    }
  }
  return out;
}

std::vector<std::vector<Complex>> vandermonde_block(const RootDescriptor& d, Complex nu) {
  const auto z = d.values(nu);
  std::vector<std::vector<Complex>> m(z.size(), std::vector<Complex>(z.size()));
  for (std::size_t r = 0; r < z.size(); ++r)
    for (std::size_t j = 0; j < z.size(); ++j) m[r][j] = ipow(z[j], static_cast<int>(r));
  return m;
}

namespace {

// Terms p_i(nu) h(nu + i) of L(h)(nu).
std::vector<Complex> operator_terms(const SkewOperator& l, const SolutionHandle& h, Complex nu) {
  std::vector<Complex> terms;
  const auto& tw = *l.tower();
  const auto& c = l.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    terms.push_back(tw.eval(c[i], nu) * h(nu + static_cast<double>(i)));
  }
  return terms;
}

}  // namespace

Complex apply_operator_numeric(const SkewOperator& l, const SolutionHandle& h, Complex nu) {
  Complex acc = 0.0;
  for (const auto& t : operator_terms(l, h, nu)) acc += t;
  return acc;
}

std::vector<Complex> SampleSpec::nodes() const {
  if (points < 1) throw InvalidArgument("sample spec needs at least one point");
  std::vector<Complex> out;
  for (int k = 0; k < points; ++k) {
    const double re = points == 1 ? re_min : re_min + (re_max - re_min) * k / (points - 1);
    out.emplace_back(re, line_im);
  }
  return out;
}

ResidualReport residual_scan(const SkewOperator& l, const SolutionHandle& h, const SampleSpec& samples) {
  ResidualReport rep;
  rep.tol = samples.tol;
  bool any = false;
  for (const auto& nu : samples.nodes()) {
    ResidualPoint pt{nu};
    try {
      const auto terms = operator_terms(l, h, nu);
      Complex sum = 0.0;
      double biggest = 0.0;
      for (const auto& t : terms) {
        sum += t;
        biggest = std::max(biggest, std::abs(t));
      }
      pt.residual = std::abs(sum) / (1.0 + biggest);
      rep.max_residual = std::max(rep.max_residual, pt.residual);
      any = true;
    } catch (const PoleError&) {
      pt.pole = true;
    }
    rep.points.push_back(pt);
  }
  if (!any) throw PoleError("every sample point hits a pole");
  rep.pass = rep.max_residual <= samples.tol;
  return rep;
}

namespace {

Complex casoratian_det(const std::vector<SolutionHandle>& hs, Complex nu) {
  const auto s = static_cast<Eigen::Index>(hs.size());
  Eigen::MatrixXcd m(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) m(i, j) = hs[static_cast<std::size_t>(j)](nu + static_cast<double>(i));
  return m.determinant();
}

}  // namespace

CasoratianNumeric casoratian_numeric(const std::vector<SolutionHandle>& hs, Complex nu, const SkewOperator* op) {
  if (hs.empty()) throw InvalidArgument("Casoratian of an empty family");
  CasoratianNumeric out{casoratian_det(hs, nu), casoratian_det(hs, nu + 1.0), std::nullopt};
  if (op) {
    if (op->is_zero() || *op->degree() != hs.size())
      throw InvalidArgument("operator order must match the number of solutions");
    const auto& tw = *op->tower();
    const auto n = *op->degree();
    const Complex ratio = tw.eval(op->coefficient(0), nu) / tw.eval(op->leading(), nu);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    out.twist_residual = std::abs(out.det_next - sign * ratio * out.det) / std::abs(out.det_next);
  }
  return out;
}

}  // namespace gammac
