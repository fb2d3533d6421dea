#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace ged::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr std::size_t kRefactorInterval = 100;
constexpr std::size_t kStallLimit = 50;
constexpr double kPerturbation = 1e-7;

}  // namespace

DualSimplex::DualSimplex(const BlpModel& model, double tol) : tol_(tol) {
  n_ = model.num_variables();
  m_ = model.num_constraints();
  const std::size_t total = n_ + m_;
  cost_.assign(total, 0.0);
  lb_.assign(total, 0.0);
  ub_.assign(total, 1.0);
  constant_ = model.objective().constant;
  for (const auto& t : model.objective().terms) cost_[t.var] += t.coef;
  base_cost_ = cost_;

  // Merge repeated terms and build the row and column views.
  std::vector<std::map<std::size_t, double>> rows(m_);
  b_.resize(m_);
  for (std::size_t r = 0; r < m_; ++r) {
    const auto& c = model.constraints()[r];
    for (const auto& t : c.terms) rows[r][t.var] += t.coef;
    b_[r] = c.rhs;
    ub_[n_ + r] = c.sense == Sense::equal ? 0.0 : kInf;
  }
  std::vector<std::size_t> count(n_, 0);
  row_start_.push_back(0);
  for (std::size_t r = 0; r < m_; ++r) {
    // Inequality slacks get the largest value b - a.x can take on the unit
    // box, so every column is boxed and a bound flip always restores dual
    // feasibility.
    if (ub_[n_ + r] == kInf) {
      double range = b_[r];
      for (auto [j, v] : rows[r]) range -= std::min(v, 0.0);
      ub_[n_ + r] = std::max(range, 0.0);
    }
    for (auto [j, v] : rows[r]) {
      if (v == 0) continue;
      row_col_.push_back(j);
      row_val_.push_back(v);
      ++count[j];
    }
    row_start_.push_back(row_col_.size());
  }
  col_start_.assign(n_ + 1, 0);
  for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
  col_row_.resize(row_col_.size());
  col_val_.resize(row_col_.size());
  std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
  for (std::size_t r = 0; r < m_; ++r) {
    for (std::size_t p = row_start_[r]; p < row_start_[r + 1]; ++p) {
      const std::size_t j = row_col_[p];
      col_row_[fill[j]] = r;
      col_val_[fill[j]] = row_val_[p];
      ++fill[j];
    }
  }
  reset_to_slack_basis();
}

void DualSimplex::reset_to_slack_basis() {
  const std::size_t total = n_ + m_;
  basis_.resize(m_);
  position_.assign(total, -1);
  at_upper_.assign(total, 0);
  x_.assign(total, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    basis_[r] = n_ + r;
    position_[n_ + r] = static_cast<long>(r);
  }
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
  pivots_since_refactor_ = 0;
  d_ = cost_;
  for (std::size_t j = 0; j < total; ++j) at_upper_[j] = d_[j] < 0;
  bind_nonbasic_to_bounds();
  compute_primal();
}

void DualSimplex::set_bounds(std::size_t j, double lb, double ub) {
  lb_[j] = lb;
  ub_[j] = ub;
}

void DualSimplex::bind_nonbasic_to_bounds() {
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (position_[j] >= 0) continue;
    if (d_[j] > tol_) {
      at_upper_[j] = 0;
    } else if (d_[j] < -tol_) {
      at_upper_[j] = 1;
    }
    x_[j] = at_upper_[j] ? ub_[j] : lb_[j];
  }
}

void DualSimplex::compute_primal() {
  std::vector<double> rhs = b_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (position_[j] >= 0 || x_[j] == 0) continue;
    for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) rhs[col_row_[p]] -= col_val_[p] * x_[j];
  }
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t s = n_ + r;
    if (position_[s] < 0) rhs[r] -= x_[s];
  }
  for (std::size_t r = 0; r < m_; ++r) {
    double v = 0;
    const double* row = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) v += row[i] * rhs[i];
    x_[basis_[r]] = v;
  }
}

void DualSimplex::compute_duals() {
  std::vector<double> y(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double cb = cost_[basis_[r]];
    if (cb == 0) continue;
    const double* row = &binv_[r * m_];
    for (std::size_t i = 0; i < m_; ++i) y[i] += cb * row[i];
  }
  for (std::size_t j = 0; j < n_; ++j) {
    double v = cost_[j];
    for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) v -= y[col_row_[p]] * col_val_[p];
    d_[j] = v;
  }
  for (std::size_t r = 0; r < m_; ++r) d_[n_ + r] = cost_[n_ + r] - y[r];
  for (std::size_t r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
}

// Gauss-Jordan inversion of the current basis. False when it is singular.
bool DualSimplex::refactor() {
  std::vector<double> a(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = basis_[r];
    if (j >= n_) {
      a[(j - n_) * m_ + r] = 1.0;
    } else {
      for (std::size_t p = col_start_[j]; p < col_start_[j + 1]; ++p) a[col_row_[p] * m_ + r] = col_val_[p];
    }
  }
  std::vector<double> inv(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) inv[r * m_ + r] = 1.0;
  for (std::size_t c = 0; c < m_; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m_; ++r) {
      if (std::abs(a[r * m_ + c]) > std::abs(a[piv * m_ + c])) piv = r;
    }
    if (std::abs(a[piv * m_ + c]) < 1e-11) return false;
    if (piv != c) {
      std::swap_ranges(a.begin() + piv * m_, a.begin() + (piv + 1) * m_, a.begin() + c * m_);
      std::swap_ranges(inv.begin() + piv * m_, inv.begin() + (piv + 1) * m_, inv.begin() + c * m_);
    }
    const double s = 1.0 / a[c * m_ + c];
    for (std::size_t k = 0; k < m_; ++k) {
      a[c * m_ + k] *= s;
      inv[c * m_ + k] *= s;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == c) continue;
      const double f = a[r * m_ + c];
      if (f == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        a[r * m_ + k] -= f * a[c * m_ + k];
        inv[r * m_ + k] -= f * inv[c * m_ + k];
      }
    }
  }
  binv_ = std::move(inv);
  pivots_since_refactor_ = 0;
  return true;
}

double DualSimplex::dual_value() const {
  double z = constant_;
  for (std::size_t j = 0; j < n_ + m_; ++j) z += cost_[j] * x_[j];
  return z;
}

double DualSimplex::objective() const {
  double z = constant_;
  for (std::size_t j = 0; j < n_; ++j) z += base_cost_[j] * x_[j];
  return z;
}

// Shifts every cost away from zero reduced cost, in the direction that keeps
// the current bound choice dual feasible. Deterministic in the column index.
void DualSimplex::perturb() {
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    const std::uint64_t h = (j + 1) * 0x9e3779b97f4a7c15ULL;
    const double u = 0.5 + 0.5 * static_cast<double>((h ^ (h >> 29)) % 1024) / 1024.0;
    const double eps = kPerturbation * (1.0 + std::abs(base_cost_[j])) * u;
    const bool up = position_[j] < 0 ? at_upper_[j] != 0 : base_cost_[j] < 0;
    cost_[j] = base_cost_[j] + (up ? -eps : eps);
  }
}

std::vector<double> DualSimplex::primal() const {
  std::vector<double> out(x_.begin(), x_.begin() + static_cast<long>(n_));
  for (std::size_t j = 0; j < n_; ++j) out[j] = std::clamp(out[j], lb_[j], ub_[j]);
  return out;
}

LpOutcome DualSimplex::solve(double cutoff, Clock::time_point deadline) {
  // Perturbed pass first; it does not yield a valid bound, so no cutoff.
  bound_valid_ = false;
  perturb();
  compute_duals();
  LpOutcome out = iterate(kInf, deadline);
  cost_ = base_cost_;
  if (out != LpOutcome::optimal) {
    compute_duals();
    return out;
  }
  compute_duals();
  bound_valid_ = true;
  return iterate(cutoff, deadline);
}

LpOutcome DualSimplex::iterate(double cutoff, Clock::time_point deadline) {
  bind_nonbasic_to_bounds();
  compute_primal();

  const std::size_t total = n_ + m_;
  std::vector<double> rho(m_), alpha(total), column(m_);
  bool bland = false;
  std::size_t stall = 0;
  double last_value = -kInf;
  const std::size_t iteration_cap = 1000 + 200 * total;
  std::size_t local_iterations = 0;

  for (;;) {
    if (pivots_since_refactor_ >= std::max(kRefactorInterval, m_ / 2)) {
      if (!refactor()) reset_to_slack_basis();
      compute_duals();
      bind_nonbasic_to_bounds();
      compute_primal();
    }

    // Leaving row: largest bound violation, or lowest column index under Bland.
    std::size_t r = m_;
    double worst = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = basis_[i];
      const double viol = std::max(lb_[j] - x_[j], x_[j] - ub_[j]);
      if (viol <= tol_) continue;
      if (bland ? (r == m_ || j < basis_[r]) : viol > worst) {
        r = i;
        worst = viol;
      }
    }
    if (r == m_) return LpOutcome::optimal;

    const double value = dual_value();
    if (value >= cutoff) return LpOutcome::cutoff;
    if (value > last_value + 1e-12) {
      last_value = value;
      stall = 0;
    } else if (++stall > kStallLimit) {
      bland = true;
    }
    if ((iterations_ & 63) == 0 && Clock::now() >= deadline) return LpOutcome::time_limit;
    if (++local_iterations > iteration_cap) {
      throw std::runtime_error("simplex iteration limit exceeded");
    }

    const std::size_t leaving = basis_[r];
    const bool to_lower = x_[leaving] < lb_[leaving];
    const double target = to_lower ? lb_[leaving] : ub_[leaving];

    std::copy(binv_.begin() + r * m_, binv_.begin() + (r + 1) * m_, rho.begin());
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double ri = rho[i];
      if (ri == 0) continue;
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) alpha[row_col_[p]] += ri * row_val_[p];
      alpha[n_ + i] = ri;
    }

    // Harris two-pass ratio test over the eligible nonbasic columns.
    auto eligible = [&](std::size_t j) {
      if (position_[j] >= 0 || lb_[j] == ub_[j]) return false;
      const double a = alpha[j];
      if (std::abs(a) < kPivotTol) return false;
      const bool up = at_upper_[j];
      return to_lower ? ((!up && a < 0) || (up && a > 0)) : ((!up && a > 0) || (up && a < 0));
    };
    auto reduced = [&](std::size_t j) {
      return at_upper_[j] ? std::max(-d_[j], 0.0) : std::max(d_[j], 0.0);
    };
    std::size_t q = total;
    if (bland) {
      double best = kInf;
      for (std::size_t j = 0; j < total; ++j) {
        if (!eligible(j)) continue;
        // Reduced costs within tolerance count as exact ties so that the
        // lowest index wins.
        const double dj = reduced(j);
        const double ratio = dj <= tol_ ? 0.0 : dj / std::abs(alpha[j]);
        if (ratio < best - 1e-12) {
          best = ratio;
          q = j;
        }
      }
    } else {
      double bound = kInf;
      for (std::size_t j = 0; j < total; ++j) {
        if (eligible(j)) bound = std::min(bound, (reduced(j) + tol_) / std::abs(alpha[j]));
      }
      double best_alpha = 0;
      for (std::size_t j = 0; j < total; ++j) {
        if (!eligible(j)) continue;
        if (reduced(j) / std::abs(alpha[j]) <= bound && std::abs(alpha[j]) > best_alpha) {
          best_alpha = std::abs(alpha[j]);
          q = j;
        }
      }
    }
    if (q == total) return LpOutcome::infeasible;

    // Entering column in the current basis.
    std::fill(column.begin(), column.end(), 0.0);
    if (q >= n_) {
      for (std::size_t i = 0; i < m_; ++i) column[i] = binv_[i * m_ + (q - n_)];
    } else {
      for (std::size_t p = col_start_[q]; p < col_start_[q + 1]; ++p) {
        const std::size_t k = col_row_[p];
        const double v = col_val_[p];
        for (std::size_t i = 0; i < m_; ++i) column[i] += binv_[i * m_ + k] * v;
      }
    }
    const double arq = column[r];
    if (std::abs(arq) < kPivotTol) {
      // Row and column views disagree numerically; rebuild and retry.
      if (!refactor()) reset_to_slack_basis();
      compute_duals();
      bind_nonbasic_to_bounds();
      compute_primal();
      bland = true;
      continue;
    }

    const double step = (x_[leaving] - target) / arq;
    for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= step * column[i];
    x_[q] += step;
    x_[leaving] = target;

    const double theta = d_[q] / arq;
    for (std::size_t j = 0; j < total; ++j) {
      if (position_[j] < 0 && alpha[j] != 0) d_[j] -= theta * alpha[j];
    }
    d_[leaving] = -theta;
    d_[q] = 0.0;

    double* pivot_row = &binv_[r * m_];
    const double inv = 1.0 / arq;
    for (std::size_t k = 0; k < m_; ++k) pivot_row[k] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || column[i] == 0) continue;
      const double f = column[i];
      double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * pivot_row[k];
    }

    position_[leaving] = -1;
    at_upper_[leaving] = !to_lower;
    basis_[r] = q;
    position_[q] = static_cast<long>(r);
    at_upper_[q] = 0;
    x_[basis_[r]] = x_[q];
    ++pivots_since_refactor_;
    ++iterations_;
  }
}

}  // namespace ged::detail
