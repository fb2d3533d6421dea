#pragma once

#include <chrono>
#include <cstddef>
#include <vector>

#include "ged/blp.hpp"

namespace ged::detail {

using Clock = std::chrono::steady_clock;

enum class LpOutcome { optimal, infeasible, cutoff, time_limit };

/// Bounded-variable dual simplex over a BlpModel with rows A x + s = b.
/// Every column is boxed (slacks by the range of their row), so any basis is
/// made dual feasible by putting each nonbasic column at the bound matching
/// the sign of its reduced cost and no phase 1 is needed. This also gives
/// cheap warm starts between branch-and-bound nodes. Each solve runs on
/// slightly perturbed costs against dual degeneracy, then finishes on the
/// true costs from the basis it reached.
class DualSimplex {
 public:
  explicit DualSimplex(const BlpModel& model, double tol = 1e-9);

  std::size_t num_structural() const { return n_; }
  void set_bounds(std::size_t j, double lb, double ub);
  double lower(std::size_t j) const { return lb_[j]; }
  double upper(std::size_t j) const { return ub_[j]; }

  /// Stops early with `cutoff` once the dual objective reaches `cutoff`.
  LpOutcome solve(double cutoff, Clock::time_point deadline);

  double objective() const;
  /// Whether objective() is a valid lower bound after a time_limit or cutoff
  /// outcome (false while still on perturbed costs).
  bool bound_valid() const { return bound_valid_; }
  std::vector<double> primal() const;
  std::size_t iterations() const { return iterations_; }

 private:
  LpOutcome iterate(double cutoff, Clock::time_point deadline);
  void perturb();
  void bind_nonbasic_to_bounds();
  void compute_primal();
  void compute_duals();
  bool refactor();
  void reset_to_slack_basis();
  double dual_value() const;

  std::size_t n_ = 0, m_ = 0;
  double tol_;
  double constant_ = 0;
  std::vector<double> cost_, base_cost_, lb_, ub_, b_;  // cost_ may be perturbed
  std::vector<std::size_t> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<std::size_t> row_start_, row_col_;
  std::vector<double> row_val_;

  std::vector<std::size_t> basis_;  // column basic in each row
  std::vector<long> position_;      // row of a basic column, -1 if nonbasic
  std::vector<char> at_upper_;
  std::vector<double> x_, d_;
  std::vector<double> binv_;        // dense m x m, row-major
  std::size_t pivots_since_refactor_ = 0;
  std::size_t iterations_ = 0;
  bool bound_valid_ = false;
};

}  // namespace ged::detail
