#pragma once

// Dense exact Gaussian elimination over Q. Matrices here are tiny (one
// homogeneous graded slice), so no sparsity tricks.

#include <optional>
#include <stdexcept>
#include <vector>

#include "osg/rational.hpp"

namespace osg::linalg {

using Matrix = std::vector<std::vector<Rational>>;
using Vector = std::vector<Rational>;

/// Reduced row echelon form of [a | b...]. Pivots are taken column by column,
/// using the first row (in row order) with a nonzero entry.
struct Echelon {
  Matrix reduced;                 // rows x (cols + extra)
  std::vector<int> pivot_columns; // one per nonzero row, ascending
  std::size_t cols = 0;
};

inline Echelon row_reduce(Matrix m, std::size_t coefficient_cols) {
  Echelon e;
  e.cols = coefficient_cols;
  std::size_t row = 0;
  const std::size_t rows = m.size();
  for (std::size_t col = 0; col < coefficient_cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    e.pivot_columns.push_back(static_cast<int>(col));
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m, m.front().size()).pivot_columns.size();
}

/// Solves a x = b for each right-hand side, free variables set to zero.
/// Returns nullopt for a right-hand side outside the column span.
inline std::vector<std::optional<Vector>> solve(const Matrix& a, const std::vector<Vector>& rhs) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  Matrix aug(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != cols) throw std::invalid_argument("ragged matrix");
    aug[r] = a[r];
    for (const auto& b : rhs) aug[r].push_back(b.at(r));
  }
  const Echelon e = row_reduce(std::move(aug), cols);
  std::vector<std::optional<Vector>> out;
  out.reserve(rhs.size());
  const std::size_t nonzero_rows = e.pivot_columns.size();
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    bool consistent = true;
    for (std::size_t r = nonzero_rows; r < rows; ++r) {
      if (e.reduced[r][cols + k] != 0) {
        consistent = false;
        break;
      }
    }
    if (!consistent) {
      out.emplace_back(std::nullopt);
      continue;
    }
    Vector x(cols, Rational(0));
    for (std::size_t r = 0; r < nonzero_rows; ++r) x[e.pivot_columns[r]] = e.reduced[r][cols + k];
    out.emplace_back(std::move(x));
  }
  return out;
}

}  // namespace osg::linalg
