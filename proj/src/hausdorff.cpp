#include <algorithm>

#include "ged/baselines.hpp"

namespace ged {

double hausdorff_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  const std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
  double total = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    double best = costs.vertex_del[i];
    for (std::size_t k = 0; k < n2; ++k) best = std::min(best, costs.vsub(i, k) / 2);
    total += best;
  }
  for (std::size_t k = 0; k < n2; ++k) {
    double best = costs.vertex_ins[k];
    for (std::size_t i = 0; i < n1; ++i) best = std::min(best, costs.vsub(i, k) / 2);
    total += best;
  }
  return total;
}

double hausdorff_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return hausdorff_ged(g1, g2, compute_cost_tables(g1, g2, m));
}

}  // namespace ged
