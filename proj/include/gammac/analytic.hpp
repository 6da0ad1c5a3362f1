#pragma once

// Numerics for the gamma-type solutions: y_r(nu) = sum_j zeta_j^r Gamma(nu - zeta_j)
// over the roots zeta_j of a factor P of a, evaluated in double precision.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "gammac/carlitz.hpp"
#include "gammac/roots.hpp"
#include "gammac/skew.hpp"

namespace gammac {

/// Lanczos (g = 607/128) with reflection for Re z < 1/2. Throws PoleError within
/// 1e-10 of a non-positive integer.
Complex gamma_fn(Complex z);
/// Asymptotic series after upward recurrence, reflection for Re z < 1/2.
Complex digamma_fn(Complex z);
/// (1/nu) prod_{i=1}^{N} (1 + nu/i)^{-1} (1 + 1/i)^nu.
Complex euler_product_partial(Complex nu, long n);

Complex pochhammer(Complex x, unsigned n);
TowerElement pochhammer(const TowerElement& x, unsigned n);

/// Roots of P with constant coefficients (no nu, no periodic generator).
struct AlgebraicConstant {
  CarlitzPoly minpoly;
  std::vector<Complex> roots;
};

/// zeta_j(nu) = scale exp(2 pi i lambda nu / n) exp(2 pi i j / n), the roots of
/// t^n - scale^n u for the periodic generator u = exp(2 pi i lambda nu). lambda is a
/// nonzero integer, so nu -> nu + 1 sends branch j to branch j + lambda.
struct ExpPeriodic {
  int order = 1;
  std::size_t base = 0;
  Complex scale{1.0, 0.0};
  int lambda = 1;
};

class RootDescriptor {
 public:
  static constexpr double kTolerance = 1e-10;

  /// P must be square-free with roots pairwise distinct mod Z.
  static RootDescriptor algebraic(const CarlitzPoly& p);
  static RootDescriptor exp_periodic(const TowerHandle& tower, int order, std::size_t base, Complex scale);
  /// Picks the family from the shape of P: constant coefficients, or t^n - s*u.
  static RootDescriptor from_poly(const CarlitzPoly& p);

  const TowerHandle& tower() const noexcept { return tower_; }
  const std::variant<AlgebraicConstant, ExpPeriodic>& data() const noexcept { return data_; }
  int size() const noexcept;
  /// The n branch values at nu.
  std::vector<Complex> values(Complex nu) const;
  /// d zeta_j / d nu.
  std::vector<Complex> derivatives(Complex nu) const;

 private:
  RootDescriptor(TowerHandle tower, std::variant<AlgebraicConstant, ExpPeriodic> data)
      : tower_(std::move(tower)), data_(std::move(data)) {}
  void check_distinct_mod_z() const;

  TowerHandle tower_;
  std::variant<AlgebraicConstant, ExpPeriodic> data_;
};

std::vector<Complex> root_system(const RootDescriptor& d, Complex nu);

struct SolutionHandle {
  std::shared_ptr<const RootDescriptor> roots;
  int power = 0;
  int derivative_order = 0;
  std::function<Complex(Complex)> evaluator;

  Complex operator()(Complex nu) const { return evaluator(nu); }
};

/// y_r; requires 0 <= r < n.
SolutionHandle build_solution(const RootDescriptor& d, int r);
/// D^j h. The first derivative is closed form (digamma), higher ones use Richardson
/// extrapolation of central differences (step 1e-3, three levels).
SolutionHandle derive_solution(const SolutionHandle& h, int j);

/// D^k y_{i,r} for every factor P_i, r < deg P_i and k < multiplicity: a basis of the
/// solutions of C_a.
std::vector<SolutionHandle> solution_basis(const FactoredPoly& a);

/// Rows r, columns j: zeta_j(nu)^r. Then (y_0, ..., y_{n-1}) = M (Gamma(nu - zeta_j))_j.
std::vector<std::vector<Complex>> vandermonde_block(const RootDescriptor& d, Complex nu);

/// sum_i p_i(nu) h(nu + i).
Complex apply_operator_numeric(const SkewOperator& l, const SolutionHandle& h, Complex nu);

struct SampleSpec {
  double line_im = 0.5;
  double re_min = -5.0;
  double re_max = 5.0;
  int points = 20;
  double tol = 1e-8;

  std::vector<Complex> nodes() const;
};

struct ResidualPoint {
  Complex nu;
  double residual = 0.0;
  bool pole = false;
};

struct ResidualReport {
  std::vector<ResidualPoint> points;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Relative residual |L(h)(nu)| / (1 + max_i |p_i(nu) h(nu+i)|) at every node; nodes
/// that hit a pole are flagged and skipped. Throws PoleError if every node does.
ResidualReport residual_scan(const SkewOperator& l, const SolutionHandle& h, const SampleSpec& samples = {});

struct CasoratianNumeric {
  Complex det;
  Complex det_next;  // at nu + 1
  /// |det(nu+1) - (-1)^n (p_0/p_n)(nu) det(nu)| / |det(nu+1)| when an operator is given.
  std::optional<double> twist_residual;
};

/// det (h_j(nu + i))_{i,j}.
CasoratianNumeric casoratian_numeric(const std::vector<SolutionHandle>& hs, Complex nu,
                                     const SkewOperator* op = nullptr);

}  // namespace gammac
