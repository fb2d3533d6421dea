#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <queue>
#include <stdexcept>

#include "ged/solver.hpp"
#include "simplex.hpp"
#include "strings.hpp"

namespace ged {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::Clock;
using detail::DualSimplex;
using detail::LpOutcome;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Clock::time_point deadline_after(Clock::time_point start, double seconds) {
  if (!std::isfinite(seconds) || seconds > 1e9) return Clock::time_point::max();
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

int role_priority(VarRole role) {
  switch (role) {
    case VarRole::vertex_sub: return 0;
    case VarRole::vertex_del:
    case VarRole::vertex_ins: return 1;
    case VarRole::edge_sub: return 2;
    case VarRole::edge_del:
    case VarRole::edge_ins: return 3;
    case VarRole::other: return 4;
  }
  return 4;
}

struct Fix {
  std::size_t var;
  bool value;
};

struct Node {
  std::vector<Fix> fixes;
  double bound = -kInf;  // LP bound of the parent
  std::size_t seq = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

class Logger {
 public:
  explicit Logger(const SolveOptions& opts) : out_(opts.log ? *opts.log : std::cerr), level_(opts.verbosity) {}
  void line(int level, const std::string& event, std::size_t nodes, double bound, double incumbent, double time) {
    if (level_ < level) return;
    out_ << "event=" << event << " nodes=" << nodes << " bound=" << detail::format_double(bound)
         << " incumbent=" << detail::format_double(incumbent) << " time=" << detail::format_double(time) << '\n';
  }

 private:
  std::ostream& out_;
  int level_;
};

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_timeout: return "feasible_timeout";
    case SolveStatus::timeout: return "timeout";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

std::string_view to_string(BranchingRule r) {
  return r == BranchingRule::most_fractional ? "most_fractional" : "first_fractional";
}

BranchingRule parse_branching_rule(std::string_view name) {
  if (name == "most_fractional") return BranchingRule::most_fractional;
  if (name == "first_fractional") return BranchingRule::first_fractional;
  throw std::invalid_argument("unknown branching rule '" + std::string(name) + "'");
}

void validate(const SolveOptions& opts) {
  if (!(opts.time_limit > 0)) throw std::invalid_argument("time_limit must be positive");
  if (!(opts.integrality_tol > 0) || !(opts.lp_tol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (!(opts.gap_rel >= 0) || !(opts.gap_abs >= 0)) throw std::invalid_argument("gap tolerances must be nonnegative");
}

SolveResult solve_lp(const BlpModel& model, const SolveOptions& opts) {
  validate(opts);
  const auto start = Clock::now();
  SolveResult res;
  DualSimplex lp(model, opts.lp_tol);
  const LpOutcome out = lp.solve(kInf, deadline_after(start, opts.time_limit));
  res.stats.nodes = 1;
  res.stats.lp_iterations = lp.iterations();
  res.stats.wall_time = seconds_since(start);
  switch (out) {
    case LpOutcome::optimal:
      res.status = SolveStatus::optimal;
      res.values = lp.primal();
      res.objective = model.evaluate(res.values);
      res.best_bound = res.objective;
      break;
    case LpOutcome::infeasible:
      res.status = SolveStatus::infeasible;
      res.objective = kInf;
      res.best_bound = kInf;
      break;
    case LpOutcome::time_limit:
    case LpOutcome::cutoff:
      res.status = SolveStatus::timeout;
      res.objective = kInf;
      res.best_bound = lp.bound_valid() ? lp.objective() : -kInf;
      break;
  }
  return res;
}

SolveResult solve_bb(const BlpModel& model, const SolveOptions& opts) {
  validate(opts);
  const auto start = Clock::now();
  const auto deadline = deadline_after(start, opts.time_limit);
  Logger log(opts);
  const std::size_t n = model.num_variables();
  const auto& vars = model.variables();

  SolveResult res;
  res.objective = kInf;
  double incumbent = kInf;
  std::vector<double> incumbent_values;
  double reported_bound = -kInf;

  auto gap_tol = [&](double inc) { return opts.gap_abs + opts.gap_rel * std::abs(inc); };
  auto record = [&](double bound) {
    // LP values carry roundoff; report them slightly lowered so the bound never
    // passes an incumbent it only ties.
    if (std::isfinite(bound) && bound < incumbent) bound -= 1e-9 * (1 + std::abs(bound));
    reported_bound = std::max(reported_bound, std::min(bound, incumbent));
    res.stats.trajectory.push_back({seconds_since(start), res.stats.nodes, incumbent, reported_bound});
  };
  auto offer = [&](std::vector<double> values) {
    if (values.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (vars[j].domain == VarDomain::binary) values[j] = std::round(values[j]);
    }
    if (model.max_violation(values) > 1e-6) return false;
    const double z = model.evaluate(values);
    if (z >= incumbent) return false;
    incumbent = z;
    incumbent_values = std::move(values);
    return true;
  };

  if (opts.initial_incumbent && offer(*opts.initial_incumbent)) {
    log.line(1, "incumbent", 0, -kInf, incumbent, seconds_since(start));
    record(-kInf);
  }

  DualSimplex lp(model, opts.lp_tol);
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::size_t seq = 0;
  open.push(Node{{}, -kInf, seq++});
  bool timed_out = false;
  std::vector<Fix> applied;

  auto apply = [&](const std::vector<Fix>& fixes) {
    for (const auto& f : applied) lp.set_bounds(f.var, 0.0, 1.0);
    for (const auto& f : fixes) lp.set_bounds(f.var, f.value ? 1.0 : 0.0, f.value ? 1.0 : 0.0);
    applied = fixes;
  };

  std::optional<Node> dive;
  while (dive || !open.empty()) {
    Node node;
    if (dive) {
      node = std::move(*dive);
      dive.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (node.bound >= incumbent - gap_tol(incumbent)) continue;
    if (Clock::now() >= deadline) {
      open.push(std::move(node));
      timed_out = true;
      break;
    }

    const double global = std::min(node.bound, open.empty() ? kInf : open.top().bound);
    if (global > reported_bound) record(global);

    apply(node.fixes);
    ++res.stats.nodes;
    const double cutoff = incumbent < kInf ? incumbent - gap_tol(incumbent) : kInf;
    const LpOutcome out = lp.solve(cutoff, deadline);
    if (out == LpOutcome::time_limit) {
      if (lp.bound_valid()) node.bound = std::max(node.bound, lp.objective());
      open.push(std::move(node));
      timed_out = true;
      break;
    }
    if (out != LpOutcome::optimal) continue;

    const std::vector<double> x = lp.primal();
    const double z = model.evaluate(x);
    if (z >= incumbent - gap_tol(incumbent)) continue;

    std::size_t branch = n;
    int best_priority = 5;
    double best_score = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (vars[j].domain != VarDomain::binary) continue;
      const double frac = x[j] - std::floor(x[j]);
      if (frac <= opts.integrality_tol || frac >= 1 - opts.integrality_tol) continue;
      if (opts.branching == BranchingRule::first_fractional) {
        branch = j;
        break;
      }
      const int pr = role_priority(vars[j].role);
      const double score = 0.5 - std::abs(frac - 0.5);
      if (pr < best_priority || (pr == best_priority && score > best_score)) {
        best_priority = pr;
        best_score = score;
        branch = j;
      }
    }

    if (branch == n) {
      if (offer(x)) {
        log.line(1, "incumbent", res.stats.nodes, reported_bound, incumbent, seconds_since(start));
        record(std::min(z, open.empty() ? kInf : open.top().bound));
      }
      continue;
    }

    const bool up_first = x[branch] >= 0.5;
    Node near{node.fixes, z, seq++};
    Node far{node.fixes, z, seq++};
    near.fixes.push_back({branch, up_first});
    far.fixes.push_back({branch, !up_first});
    open.push(std::move(far));
    dive = std::move(near);

    if (res.stats.nodes % 1000 == 0) {
      log.line(2, "progress", res.stats.nodes, reported_bound, incumbent, seconds_since(start));
    }
  }

  res.stats.lp_iterations = lp.iterations();
  res.stats.wall_time = seconds_since(start);
  if (timed_out) {
    double bound = open.empty() ? incumbent : open.top().bound;
    if (dive) bound = std::min(bound, dive->bound);
    bound = std::max(std::min(bound, incumbent), reported_bound);
    res.best_bound = bound;
    if (incumbent < kInf) {
      res.status = SolveStatus::feasible_timeout;
      res.objective = incumbent;
      res.values = std::move(incumbent_values);
    } else {
      res.status = SolveStatus::timeout;
      res.objective = kInf;
    }
  } else if (incumbent < kInf) {
    res.status = SolveStatus::optimal;
    res.objective = incumbent;
    res.best_bound = incumbent;
    res.values = std::move(incumbent_values);
  } else {
    res.status = SolveStatus::infeasible;
    res.objective = kInf;
    res.best_bound = kInf;
  }
  record(res.best_bound);
  log.line(1, std::string("done status=") + std::string(to_string(res.status)), res.stats.nodes, res.best_bound,
           res.objective, res.stats.wall_time);
  return res;
}

}  // namespace ged
