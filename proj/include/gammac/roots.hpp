#pragma once

#include <complex>
#include <vector>

namespace gammac {

using Complex = std::complex<double>;

/// All complex roots of sum_i coeffs[i] x^i (coeffs low to high, nonzero leading term),
/// by Aberth simultaneous iteration followed by Newton polishing.
/// Throws if the iteration fails to reach `tol`.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, double tol = 1e-14);

Complex polyval(const std::vector<Complex>& coeffs, Complex x);

}  // namespace gammac
