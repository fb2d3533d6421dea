#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ged/blp.hpp"
#include "ged/cost.hpp"
#include "ged/graph.hpp"

namespace ged {

enum class SolveStatus {
  optimal,
  feasible_timeout,  // time limit hit with an incumbent
  timeout,           // time limit hit before any feasible solution
  infeasible,
  unbounded,
};

std::string_view to_string(SolveStatus s);

enum class BranchingRule {
  most_fractional,  // by role: vertex_sub, vertex del/ins, edge_sub, edge del/ins
  first_fractional,
};

std::string_view to_string(BranchingRule r);
BranchingRule parse_branching_rule(std::string_view name);

struct SolveOptions {
  double time_limit = 300;  // seconds
  double integrality_tol = 1e-6;
  double lp_tol = 1e-9;
  BranchingRule branching = BranchingRule::most_fractional;
  std::uint64_t deterministic_seed = 0;  // recorded only; the search uses no randomness
  int verbosity = 0;                     // 1: incumbents and summary, 2: periodic node lines
  std::ostream* log = nullptr;           // defaults to std::cerr
  std::optional<std::vector<double>> initial_incumbent;
  double gap_rel = 1e-6;
  double gap_abs = 1e-9;
};

/// Throws std::invalid_argument on non-positive tolerances or time limit.
void validate(const SolveOptions& opts);

struct TrajectoryPoint {
  double time = 0;
  std::size_t nodes = 0;
  double incumbent = 0;  // +inf before the first feasible solution
  double best_bound = 0;
};

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  double wall_time = 0;
  std::vector<TrajectoryPoint> trajectory;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0;   // +inf when there is no solution
  double best_bound = 0;  // valid global lower bound
  std::vector<double> values;
  SolveStats stats;

  bool has_solution() const { return status == SolveStatus::optimal || status == SolveStatus::feasible_timeout; }
};

/// LP optimum with every variable in [0,1], whatever its declared domain.
SolveResult solve_lp(const BlpModel& model, const SolveOptions& opts = {});

/// Branch-and-bound over the binary variables; unit-interval ones stay
/// continuous.
SolveResult solve_bb(const BlpModel& model, const SolveOptions& opts = {});

enum class GedFormulation { f1, f2, f2_alt, f2u, automatic };

std::string_view to_string(GedFormulation f);

struct GedResult {
  SolveResult solve;
  EditPath path;
  Formulation formulation = Formulation::f2;
};

/// Exact GED through one of the BLP formulations. `automatic` picks
/// choose_f2_family. When `seed_with_bp` is set and no incumbent is given, the
/// bipartite upper bound seeds the search. Throws std::invalid_argument when
/// the formulation does not fit the graphs' directedness.
GedResult compute_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                      GedFormulation formulation = GedFormulation::automatic, const SolveOptions& opts = {},
                      bool seed_with_bp = true);

enum class LowerBoundKind { f1lp, f2lp };

/// LP relaxation bound. f2lp uses F2 for directed and F2u for undirected pairs.
SolveResult compute_lower_bound_result(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                                       LowerBoundKind kind, const SolveOptions& opts = {});
double compute_lower_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                           LowerBoundKind kind, const SolveOptions& opts = {});

}  // namespace ged
