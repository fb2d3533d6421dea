#include <optional>

#include "ged/baselines.hpp"

namespace ged {

namespace {

double edge_set_cost(const CostTables& costs, const std::vector<std::size_t>& src, const std::vector<std::size_t>& dst) {
  const std::size_t p = src.size(), q = dst.size();
  if (p == 0 && q == 0) return 0;
  std::vector<double> sub(p * q), del(p), ins(q);
  for (std::size_t s = 0; s < p; ++s) {
    del[s] = costs.edge_del[src[s]];
    for (std::size_t t = 0; t < q; ++t) sub[s * q + t] = costs.esub(src[s], dst[t]);
  }
  for (std::size_t t = 0; t < q; ++t) ins[t] = costs.edge_ins[dst[t]];
  return hungarian(edit_assignment_matrix(p, q, sub, del, ins)).cost;
}

// Out-edges (loops included) and in-edges (loops excluded) so each incident
// edge is counted once per vertex.
struct LocalEdges {
  std::vector<std::vector<std::size_t>> out, in;
};

LocalEdges local_edges(const AttributedGraph& g) {
  const Incidence inc(g);
  LocalEdges le;
  le.out.resize(g.num_vertices());
  le.in.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.directed) {
      le.out[v] = inc.out_edges(v);
      for (std::size_t e : inc.in_edges(v)) {
        if (!g.edges[e].is_loop()) le.in[v].push_back(e);
      }
    } else {
      le.out[v] = inc.incident(v);
    }
  }
  return le;
}

}  // namespace

DenseMatrix bp_cost_matrix(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  const std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
  const LocalEdges l1 = local_edges(g1), l2 = local_edges(g2);
  std::vector<double> sub(n1 * n2), del(n1), ins(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t k = 0; k < n2; ++k) {
      sub[i * n2 + k] = costs.vsub(i, k) + edge_set_cost(costs, l1.out[i], l2.out[k]) +
                        edge_set_cost(costs, l1.in[i], l2.in[k]);
    }
    del[i] = costs.vertex_del[i];
    for (std::size_t e : l1.out[i]) del[i] += costs.edge_del[e];
    for (std::size_t e : l1.in[i]) del[i] += costs.edge_del[e];
  }
  for (std::size_t k = 0; k < n2; ++k) {
    ins[k] = costs.vertex_ins[k];
    for (std::size_t e : l2.out[k]) ins[k] += costs.edge_ins[e];
    for (std::size_t e : l2.in[k]) ins[k] += costs.edge_ins[e];
  }
  return edit_assignment_matrix(n1, n2, sub, del, ins);
}

EditPath bp_upper_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  const std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
  const Assignment a = hungarian(bp_cost_matrix(g1, g2, costs));
  std::vector<std::optional<std::size_t>> mapping(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    if (a.row_to_col[i] < n2) mapping[i] = a.row_to_col[i];
  }
  return complete_vertex_mapping(g1, g2, costs, mapping);
}

EditPath bp_upper_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return bp_upper_bound(g1, g2, compute_cost_tables(g1, g2, m));
}

}  // namespace ged
