#include "gammac/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gammac/errors.hpp"

namespace gammac {

Complex polyval(const std::vector<Complex>& coeffs, Complex x) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

Complex polyder_val(const std::vector<Complex>& coeffs, Complex x) {
  Complex acc = 0.0;
  for (std::size_t i = coeffs.size() - 1; i >= 1; --i) acc = acc * x + static_cast<double>(i) * coeffs[i];
  return acc;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in, double tol) {
  std::vector<Complex> c = coeffs_in;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  if (n == 1) return {-c[0]};

  // Cauchy bound for the initial circle.
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
  const double radius = 1.0 + bound;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = 0.5 * radius * Complex(std::cos(ang), std::sin(ang));
  }

  bool converged = false;
  for (int iter = 0; iter < 500 && !converged; ++iter) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex p = polyval(c, z[k]);
      const Complex dp = polyder_val(c, z[k]);
      if (p == 0.0) continue;
      const Complex ratio = p / dp;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      if (std::abs(step) > tol * (1.0 + std::abs(z[k]))) converged = false;
    }
  }
  // Newton polish against the original polynomial.
  for (auto& r : z) {
    for (int i = 0; i < 3; ++i) {
      const Complex dp = polyder_val(c, r);
      if (dp == 0.0) break;
      r -= polyval(c, r) / dp;
    }
  }
  if (!converged) throw Error("polynomial root iteration did not converge");
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return z;
}

}  // namespace gammac
