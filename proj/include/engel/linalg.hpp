#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "engel/exactnum.hpp"

namespace engel {

/// Rows and columns of a nonsingular rank x rank submatrix.
struct PivotSelection {
  Eigen::Index rank = 0;
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
};

/// Exact rank by full-pivot Gaussian elimination. Scalar must be an exact
/// field (pivots are tested with is_zero, no tolerance).
template <typename Derived>
PivotSelection exact_pivots(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> row_perm(rows), col_perm(cols);
  for (Eigen::Index i = 0; i < rows; ++i) row_perm[i] = i;
  for (Eigen::Index j = 0; j < cols; ++j) col_perm[j] = j;

  Eigen::Index k = 0;
  for (; k < std::min(rows, cols); ++k) {
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index j = k; j < cols && pr < 0; ++j)
      for (Eigen::Index i = k; i < rows; ++i)
        if (!is_zero(m(i, j))) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    if (pr != k) {
      m.row(pr).swap(m.row(k));
      std::swap(row_perm[pr], row_perm[k]);
    }
    if (pc != k) {
      m.col(pc).swap(m.col(k));
      std::swap(col_perm[pc], col_perm[k]);
    }
    const Scalar pivot = m(k, k);
    for (Eigen::Index i = k + 1; i < rows; ++i) {
      if (is_zero(m(i, k))) continue;
      const Scalar factor = m(i, k) / pivot;
      for (Eigen::Index j = k; j < cols; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  PivotSelection sel;
  sel.rank = k;
  sel.rows.assign(row_perm.begin(), row_perm.begin() + k);
  sel.cols.assign(col_perm.begin(), col_perm.begin() + k);
  return sel;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return exact_pivots(m).rank;
}

/// Solves a square exact system; std::nullopt when singular.
template <typename DerivedA, typename DerivedB>
std::optional<VectorX<typename DerivedA::Scalar>> exact_solve(const Eigen::MatrixBase<DerivedA>& a,
                                                              const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pr = k;
    while (pr < n && is_zero(aug(pr, k))) ++pr;
    if (pr == n) return std::nullopt;
    if (pr != k) aug.row(pr).swap(aug.row(k));
    const Scalar pivot = aug(k, k);
    for (Eigen::Index j = k; j <= n; ++j) aug(k, j) /= pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || is_zero(aug(i, k))) continue;
      const Scalar factor = aug(i, k);
      for (Eigen::Index j = k; j <= n; ++j) aug(i, j) -= factor * aug(k, j);
    }
  }
  return VectorX<Scalar>(aug.col(n));
}

}  // namespace engel
