#pragma once

// Eigen dense storage over exact fields, plus fraction-exact Gaussian elimination
// (Eigen's own decompositions assume an ordered, inexact scalar).

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "gammac/tower.hpp"

namespace gammac {

template <class F>
struct ExactNumTraits : Eigen::GenericNumTraits<F> {
  using Real = F;
  using NonInteger = F;
  using Literal = F;
  using Nested = F;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace gammac

namespace Eigen {
template <>
struct NumTraits<gammac::TowerElement> : gammac::ExactNumTraits<gammac::TowerElement> {};
}  // namespace Eigen

namespace gammac {

template <class F>
using ExactMatrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using ExactVector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using TowerMatrix = ExactMatrix<TowerElement>;

template <class F>
ExactMatrix<F> exact_zero(Eigen::Index rows, Eigen::Index cols) {
  ExactMatrix<F> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = F(0);
  return m;
}

template <class F>
ExactMatrix<F> exact_identity(Eigen::Index n) {
  ExactMatrix<F> m = exact_zero<F>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = F(1);
  return m;
}

/// Plain triple-loop product; avoids Eigen's blocked kernels for heavy scalars.
template <class F>
ExactMatrix<F> exact_product(const ExactMatrix<F>& a, const ExactMatrix<F>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  ExactMatrix<F> r = exact_zero<F>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) r(i, j) = r(i, j) + a(i, k) * b(k, j);
    }
  return r;
}

template <class F>
bool exact_equal(const ExactMatrix<F>& a, const ExactMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<Eigen::Index> exact_rref(ExactMatrix<F>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const F inv = F(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const F f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t exact_rank(ExactMatrix<F> m) {
  return exact_rref(m).size();
}

template <class F>
F exact_determinant(ExactMatrix<F> m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  F det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    while (piv < n && is_zero(m(piv, col))) ++piv;
    if (piv == n) return F(0);
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      det = F(0) - det;
    }
    det = det * m(col, col);
    const F inv = F(1) / m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const F f = m(i, col) * inv;
      for (Eigen::Index j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

/// Basis of the right kernel {v : m v = 0}.
template <class F>
std::vector<ExactVector<F>> exact_nullspace(ExactMatrix<F> m) {
  const auto pivots = exact_rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<ExactVector<F>> basis;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    ExactVector<F> v(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(j) = F(0);
    v(free) = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = F(0) - m(static_cast<Eigen::Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gammac
