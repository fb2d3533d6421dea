#include <limits>
#include <stdexcept>

#include "ged/assignment.hpp"

namespace ged {

Assignment hungarian(const DenseMatrix& costs) {
  if (costs.rows != costs.cols) throw std::invalid_argument("hungarian: cost matrix must be square");
  const std::size_t n = costs.rows;
  Assignment result;
  result.row_to_col.resize(n);
  if (n == 0) return result;

  // Shortest augmenting path with row/column potentials; index 0 is a dummy.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = costs(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) result.row_to_col[match[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) result.cost += costs(i, result.row_to_col[i]);
  return result;
}

DenseMatrix edit_assignment_matrix(std::size_t p, std::size_t q, std::span<const double> sub,
                                   std::span<const double> del, std::span<const double> ins) {
  DenseMatrix m(p + q, p + q, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < q; ++k) m(i, k) = sub[i * q + k];
    for (std::size_t j = 0; j < p; ++j) m(i, q + j) = (i == j) ? del[i] : kForbiddenCost;
  }
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t l = 0; l < q; ++l) m(p + k, l) = (k == l) ? ins[k] : kForbiddenCost;
  }
  return m;
}

}  // namespace ged
