#pragma once

#include <cstddef>
#include <string_view>

#include "ged/assignment.hpp"
#include "ged/blp.hpp"
#include "ged/cost.hpp"
#include "ged/graph.hpp"

namespace ged {

/// (n1+n2) x (n1+n2) bipartite matrix. Each vertex entry adds an optimal
/// assignment of the incident edges (out- and in-edges separately for
/// directed graphs) to the vertex cost; deletion and insertion entries add the
/// incident edge deletion and insertion costs.
DenseMatrix bp_cost_matrix(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);

/// Bipartite upper bound: the vertex assignment of bp_cost_matrix completed
/// into an edit path. The returned path's total_cost is the bound.
EditPath bp_upper_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);
EditPath bp_upper_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);

enum class SearchStatus {
  optimal,       // A* finished
  memory_limit,  // open list exceeded the memory limit
  time_limit,
  heuristic,     // beam search result
};

std::string_view to_string(SearchStatus s);

struct SearchOptions {
  std::size_t memory_limit = std::size_t{1} << 30;  // bytes of open-list nodes
  double time_limit = 300;                          // seconds
};

struct SearchResult {
  SearchStatus status = SearchStatus::optimal;
  double cost = 0;
  EditPath path;
  std::size_t expanded = 0;
  std::size_t generated = 0;
  double wall_time = 0;
};

/// A* over vertex assignments in g1 document order with a vertex-only
/// Hungarian heuristic. On a limit breach the best complete path seen so far
/// is returned (the bipartite path when none was reached).
SearchResult astar_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                       const SearchOptions& opts = {});
SearchResult astar_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                       const SearchOptions& opts = {});

/// Level-wise beam search keeping the q best nodes by g+h (stable order).
/// Throws std::invalid_argument when q == 0.
SearchResult beam_search(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                         std::size_t q = 10);
SearchResult beam_search(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                         std::size_t q = 10);

/// Vertex Hausdorff edit distance: every vertex pays half of its cheapest
/// substitution or its full deletion/insertion, whichever is smaller.
double hausdorff_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);
double hausdorff_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);

}  // namespace ged
