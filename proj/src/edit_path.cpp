#include <algorithm>
#include <map>
#include <sstream>

#include "ged/assignment.hpp"
#include "ged/blp.hpp"

namespace ged {

namespace {

std::pair<std::size_t, std::size_t> endpoint_key(bool directed, std::size_t a, std::size_t b) {
  if (!directed && a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace

EditPath make_edit_path(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                        std::vector<std::pair<std::size_t, std::size_t>> vertex_subs,
                        std::vector<std::pair<std::size_t, std::size_t>> edge_subs) {
  EditPath p;
  std::sort(vertex_subs.begin(), vertex_subs.end());
  std::sort(edge_subs.begin(), edge_subs.end());
  p.vertex_subs = std::move(vertex_subs);
  p.edge_subs = std::move(edge_subs);

  std::vector<char> v1(g1.num_vertices(), 0), v2(g2.num_vertices(), 0);
  std::vector<char> e1(g1.num_edges(), 0), e2(g2.num_edges(), 0);
  for (auto [i, k] : p.vertex_subs) v1.at(i) = v2.at(k) = 1;
  for (auto [a, b] : p.edge_subs) e1.at(a) = e2.at(b) = 1;
  for (std::size_t i = 0; i < v1.size(); ++i) if (!v1[i]) p.deleted_vertices.push_back(i);
  for (std::size_t k = 0; k < v2.size(); ++k) if (!v2[k]) p.inserted_vertices.push_back(k);
  for (std::size_t a = 0; a < e1.size(); ++a) if (!e1[a]) p.deleted_edges.push_back(a);
  for (std::size_t b = 0; b < e2.size(); ++b) if (!e2[b]) p.inserted_edges.push_back(b);
  p.total_cost = edit_path_cost(costs, p);
  return p;
}

double edit_path_cost(const CostTables& costs, const EditPath& path) {
  double total = 0;
  for (auto [i, k] : path.vertex_subs) total += costs.vsub(i, k);
  for (auto [a, b] : path.edge_subs) total += costs.esub(a, b);
  for (auto i : path.deleted_vertices) total += costs.vertex_del[i];
  for (auto k : path.inserted_vertices) total += costs.vertex_ins[k];
  for (auto a : path.deleted_edges) total += costs.edge_del[a];
  for (auto b : path.inserted_edges) total += costs.edge_ins[b];
  return total;
}

std::vector<std::string> check_edit_path(const AttributedGraph& g1, const AttributedGraph& g2,
                                         const EditPath& path) {
  std::vector<std::string> problems;
  const std::size_t n1 = g1.num_vertices(), n2 = g2.num_vertices();
  const std::size_t m1 = g1.num_edges(), m2 = g2.num_edges();
  std::vector<long> phi(n1, -1), phi_inv(n2, -1);
  for (auto [i, k] : path.vertex_subs) {
    if (i >= n1 || k >= n2) {
      problems.push_back("vertex substitution out of range");
      continue;
    }
    if (phi[i] >= 0) problems.push_back("vertex " + g1.vertices[i].id + " substituted twice");
    if (phi_inv[k] >= 0) problems.push_back("vertex " + g2.vertices[k].id + " is the image of two vertices");
    phi[i] = static_cast<long>(k);
    phi_inv[k] = static_cast<long>(i);
  }
  std::vector<char> e1_used(m1, 0), e2_used(m2, 0);
  for (auto [a, b] : path.edge_subs) {
    if (a >= m1 || b >= m2) {
      problems.push_back("edge substitution out of range");
      continue;
    }
    if (e1_used[a]++) problems.push_back("edge " + g1.edges[a].id + " substituted twice");
    if (e2_used[b]++) problems.push_back("edge " + g2.edges[b].id + " is the image of two edges");
    const auto& ea = g1.edges[a];
    const auto& eb = g2.edges[b];
    const long h = phi[ea.head], t = phi[ea.tail];
    const long kh = static_cast<long>(eb.head), kt = static_cast<long>(eb.tail);
    bool ok = (h == kh && t == kt);
    if (!g1.directed) ok = ok || (h == kt && t == kh);
    if (h < 0 || t < 0) ok = false;
    if (!ok) problems.push_back("edge substitution " + ea.id + "->" + eb.id + " breaks topology");
  }
  auto expect_set = [&](const std::vector<std::size_t>& got, std::vector<std::size_t> want, const char* what) {
    std::vector<std::size_t> sorted = got;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != want) problems.push_back(std::string(what) + " set does not match the substitutions");
  };
  std::vector<std::size_t> want;
  for (std::size_t i = 0; i < n1; ++i) if (phi[i] < 0) want.push_back(i);
  expect_set(path.deleted_vertices, want, "deleted vertex");
  want.clear();
  for (std::size_t k = 0; k < n2; ++k) if (phi_inv[k] < 0) want.push_back(k);
  expect_set(path.inserted_vertices, want, "inserted vertex");
  want.clear();
  for (std::size_t a = 0; a < m1; ++a) if (!e1_used[a]) want.push_back(a);
  expect_set(path.deleted_edges, want, "deleted edge");
  want.clear();
  for (std::size_t b = 0; b < m2; ++b) if (!e2_used[b]) want.push_back(b);
  expect_set(path.inserted_edges, want, "inserted edge");
  return problems;
}

EditPath complete_vertex_mapping(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                                 const std::vector<std::optional<std::size_t>>& mapping) {
  std::vector<std::pair<std::size_t, std::size_t>> xs;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    if (mapping[i]) xs.emplace_back(i, *mapping[i]);
  }

  using Key = std::pair<std::size_t, std::size_t>;
  std::map<Key, std::vector<std::size_t>> groups1, groups2;
  for (std::size_t a = 0; a < g1.num_edges(); ++a) {
    const auto& e = g1.edges[a];
    if (mapping[e.head] && mapping[e.tail]) {
      groups1[endpoint_key(g1.directed, *mapping[e.head], *mapping[e.tail])].push_back(a);
    }
  }
  for (std::size_t b = 0; b < g2.num_edges(); ++b) {
    const auto& e = g2.edges[b];
    groups2[endpoint_key(g2.directed, e.head, e.tail)].push_back(b);
  }

  std::vector<std::pair<std::size_t, std::size_t>> ys;
  for (const auto& [key, src] : groups1) {
    auto it = groups2.find(key);
    if (it == groups2.end()) continue;
    const auto& dst = it->second;
    const std::size_t p = src.size(), q = dst.size();
    std::vector<double> sub(p * q), del(p), ins(q);
    for (std::size_t s = 0; s < p; ++s) {
      del[s] = costs.edge_del[src[s]];
      for (std::size_t t = 0; t < q; ++t) sub[s * q + t] = costs.esub(src[s], dst[t]);
    }
    for (std::size_t t = 0; t < q; ++t) ins[t] = costs.edge_ins[dst[t]];
    if (p == 1 && q == 1) {
      if (sub[0] <= del[0] + ins[0]) ys.emplace_back(src[0], dst[0]);
      continue;
    }
    auto assign = hungarian(edit_assignment_matrix(p, q, sub, del, ins));
    for (std::size_t s = 0; s < p; ++s) {
      if (assign.row_to_col[s] < q) ys.emplace_back(src[s], dst[assign.row_to_col[s]]);
    }
  }
  return make_edit_path(g1, g2, costs, std::move(xs), std::move(ys));
}

std::string describe_edit_path(const AttributedGraph& g1, const AttributedGraph& g2, const EditPath& path) {
  std::ostringstream out;
  for (auto [i, k] : path.vertex_subs) out << "sub vertex " << g1.vertices[i].id << " -> " << g2.vertices[k].id << '\n';
  for (auto i : path.deleted_vertices) out << "del vertex " << g1.vertices[i].id << '\n';
  for (auto k : path.inserted_vertices) out << "ins vertex " << g2.vertices[k].id << '\n';
  for (auto [a, b] : path.edge_subs) out << "sub edge " << g1.edges[a].id << " -> " << g2.edges[b].id << '\n';
  for (auto a : path.deleted_edges) out << "del edge " << g1.edges[a].id << '\n';
  for (auto b : path.inserted_edges) out << "ins edge " << g2.edges[b].id << '\n';
  return out.str();
}

}  // namespace ged
