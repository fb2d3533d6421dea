#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ged {

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Forbidden cells of assignment matrices. Must exceed any total edit cost.
inline constexpr double kForbiddenCost = 1e12;

struct Assignment {
  std::vector<std::size_t> row_to_col;
  double cost = 0;  // sum of the chosen entries, accumulated in row order
};

/// Minimum-cost perfect assignment (Hungarian method with potentials, O(n^3)).
/// Throws std::invalid_argument on a non-square matrix.
Assignment hungarian(const DenseMatrix& costs);

/// Square (p+q) x (p+q) matrix for matching p source items against q target
/// items with substitution (p x q block), deletion and insertion diagonals.
DenseMatrix edit_assignment_matrix(std::size_t p, std::size_t q, std::span<const double> sub,
                                   std::span<const double> del, std::span<const double> ins);

}  // namespace ged
