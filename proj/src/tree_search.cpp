#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>

#include "ged/baselines.hpp"

namespace ged {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::optimal: return "optimal";
    case SearchStatus::memory_limit: return "memory_limit";
    case SearchStatus::time_limit: return "time_limit";
    case SearchStatus::heuristic: return "heuristic";
  }
  return "unknown";
}

namespace {

constexpr int kEpsilon = -1;
using Clock = std::chrono::steady_clock;

struct SearchNode {
  std::vector<int> mapping;  // image of g1 vertex d for d < depth, or kEpsilon
  double g = 0;
  double h = 0;
  std::size_t seq = 0;
  std::size_t depth() const { return mapping.size(); }
  double f() const { return g + h; }
};

// Incremental costs of the search tree. Vertex i of g1 is decided at depth i.
class SearchContext {
 public:
  SearchContext(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs)
      : g1_(g1), g2_(g2), costs_(costs), inc2_(g2), closing_(g1.num_vertices()) {
    for (std::size_t a = 0; a < g1.num_edges(); ++a) {
      const auto& e = g1.edges[a];
      closing_[std::max(e.head, e.tail)].push_back(a);
    }
  }

  std::size_t n1() const { return g1_.num_vertices(); }
  std::size_t n2() const { return g2_.num_vertices(); }

  std::vector<char> used(const std::vector<int>& mapping) const {
    std::vector<char> u(n2(), 0);
    for (int k : mapping) if (k != kEpsilon) u[static_cast<std::size_t>(k)] = 1;
    return u;
  }

  // Cost added by deciding vertex i = mapping.size() - 1.
  double step(const std::vector<int>& mapping, const std::vector<char>& used) const {
    const std::size_t i = mapping.size() - 1;
    const int k = mapping[i];
    double cost = k == kEpsilon ? costs_.vertex_del[i] : costs_.vsub(i, static_cast<std::size_t>(k));

    using Key = std::pair<int, int>;
    std::map<Key, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    for (std::size_t a : closing_[i]) {
      const auto& e = g1_.edges[a];
      const int h = mapping[e.head], t = mapping[e.tail];
      if (h == kEpsilon || t == kEpsilon) {
        cost += costs_.edge_del[a];
        continue;
      }
      groups[key(h, t)].first.push_back(a);
    }
    if (k != kEpsilon) {
      for (std::size_t b : inc2_.incident(static_cast<std::size_t>(k))) {
        const auto& e = g2_.edges[b];
        if (!used[e.head] || !used[e.tail]) continue;
        groups[key(static_cast<int>(e.head), static_cast<int>(e.tail))].second.push_back(b);
      }
    }
    for (const auto& [_, sides] : groups) cost += match_cost(sides.first, sides.second);
    return cost;
  }

  // Vertex-only assignment bound over the undecided vertices.
  double heuristic(std::size_t depth, const std::vector<char>& used) const {
    std::vector<std::size_t> rest2;
    for (std::size_t k = 0; k < n2(); ++k) if (!used[k]) rest2.push_back(k);
    const std::size_t p = n1() - depth, q = rest2.size();
    if (p == 0 && q == 0) return 0;
    std::vector<double> sub(p * q), del(p), ins(q);
    for (std::size_t s = 0; s < p; ++s) {
      del[s] = costs_.vertex_del[depth + s];
      for (std::size_t t = 0; t < q; ++t) sub[s * q + t] = costs_.vsub(depth + s, rest2[t]);
    }
    for (std::size_t t = 0; t < q; ++t) ins[t] = costs_.vertex_ins[rest2[t]];
    return hungarian(edit_assignment_matrix(p, q, sub, del, ins)).cost;
  }

  EditPath complete(const std::vector<int>& mapping) const {
    std::vector<std::optional<std::size_t>> m(mapping.size());
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      if (mapping[i] != kEpsilon) m[i] = static_cast<std::size_t>(mapping[i]);
    }
    return complete_vertex_mapping(g1_, g2_, costs_, m);
  }

  // Children of `node` in generation order: each unused target vertex, then epsilon.
  template <class Emit>
  void expand(const SearchNode& node, Emit&& emit) const {
    const std::vector<char> base = used(node.mapping);
    std::vector<int> candidates;
    for (std::size_t k = 0; k < n2(); ++k) if (!base[k]) candidates.push_back(static_cast<int>(k));
    candidates.push_back(kEpsilon);
    for (int k : candidates) {
      SearchNode child;
      child.mapping = node.mapping;
      child.mapping.push_back(k);
      std::vector<char> u = base;
      if (k != kEpsilon) u[static_cast<std::size_t>(k)] = 1;
      if (child.depth() == n1()) {
        child.g = complete(child.mapping).total_cost;
        child.h = 0;
      } else {
        child.g = node.g + step(child.mapping, u);
        child.h = heuristic(child.depth(), u);
      }
      emit(std::move(child));
    }
  }

 private:
  std::pair<int, int> key(int a, int b) const {
    if (!g1_.directed && a > b) std::swap(a, b);
    return {a, b};
  }

  double match_cost(const std::vector<std::size_t>& src, const std::vector<std::size_t>& dst) const {
    double cost = 0;
    if (dst.empty()) {
      for (std::size_t a : src) cost += costs_.edge_del[a];
      return cost;
    }
    if (src.empty()) {
      for (std::size_t b : dst) cost += costs_.edge_ins[b];
      return cost;
    }
    const std::size_t p = src.size(), q = dst.size();
    if (p == 1 && q == 1) {
      return std::min(costs_.esub(src[0], dst[0]), costs_.edge_del[src[0]] + costs_.edge_ins[dst[0]]);
    }
    std::vector<double> sub(p * q), del(p), ins(q);
    for (std::size_t s = 0; s < p; ++s) {
      del[s] = costs_.edge_del[src[s]];
      for (std::size_t t = 0; t < q; ++t) sub[s * q + t] = costs_.esub(src[s], dst[t]);
    }
    for (std::size_t t = 0; t < q; ++t) ins[t] = costs_.edge_ins[dst[t]];
    return hungarian(edit_assignment_matrix(p, q, sub, del, ins)).cost;
  }

  const AttributedGraph& g1_;
  const AttributedGraph& g2_;
  const CostTables& costs_;
  Incidence inc2_;
  std::vector<std::vector<std::size_t>> closing_;  // g1 edges whose later endpoint is i
};

struct AStarOrder {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.f() != b.f()) return a.f() > b.f();
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.seq > b.seq;
  }
};

std::size_t node_bytes(const SearchNode& n) { return sizeof(SearchNode) + n.mapping.size() * sizeof(int); }

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

}  // namespace

SearchResult astar_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                       const SearchOptions& opts) {
  const auto start = Clock::now();
  const SearchContext ctx(g1, g2, costs);
  SearchResult res;

  std::priority_queue<SearchNode, std::vector<SearchNode>, AStarOrder> open;
  std::size_t bytes = 0;
  std::size_t seq = 0;
  std::optional<SearchNode> best_leaf;

  auto push = [&](SearchNode n) {
    n.seq = seq++;
    ++res.generated;
    if (n.depth() == ctx.n1() && (!best_leaf || n.g < best_leaf->g)) best_leaf = n;
    bytes += node_bytes(n);
    open.push(std::move(n));
  };

  SearchNode root;
  if (ctx.n1() == 0) {
    root.g = ctx.complete(root.mapping).total_cost;
  } else {
    root.h = ctx.heuristic(0, std::vector<char>(ctx.n2(), 0));
  }
  push(std::move(root));

  std::optional<SearchStatus> breach;
  while (!open.empty()) {
    SearchNode node = open.top();
    open.pop();
    bytes -= node_bytes(node);
    if (node.depth() == ctx.n1()) {
      res.status = SearchStatus::optimal;
      res.path = ctx.complete(node.mapping);
      res.cost = res.path.total_cost;
      res.wall_time = elapsed(start);
      return res;
    }
    if ((res.expanded & 255) == 0 && elapsed(start) >= opts.time_limit) {
      breach = SearchStatus::time_limit;
      break;
    }
    ++res.expanded;
    ctx.expand(node, push);
    if (bytes > opts.memory_limit) {
      breach = SearchStatus::memory_limit;
      break;
    }
  }

  res.status = breach.value_or(SearchStatus::memory_limit);
  res.path = best_leaf ? ctx.complete(best_leaf->mapping) : bp_upper_bound(g1, g2, costs);
  res.cost = res.path.total_cost;
  res.wall_time = elapsed(start);
  return res;
}

SearchResult astar_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                       const SearchOptions& opts) {
  return astar_ged(g1, g2, compute_cost_tables(g1, g2, m), opts);
}

SearchResult beam_search(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                         std::size_t q) {
  if (q == 0) throw std::invalid_argument("beam width must be at least 1");
  const auto start = Clock::now();
  const SearchContext ctx(g1, g2, costs);
  SearchResult res;
  res.status = SearchStatus::heuristic;

  std::vector<SearchNode> beam(1);
  for (std::size_t depth = 0; depth < ctx.n1(); ++depth) {
    std::vector<SearchNode> children;
    for (const auto& node : beam) {
      ++res.expanded;
      ctx.expand(node, [&](SearchNode c) { children.push_back(std::move(c)); });
    }
    res.generated += children.size();
    std::stable_sort(children.begin(), children.end(),
                     [](const SearchNode& a, const SearchNode& b) { return a.f() < b.f(); });
    if (children.size() > q) children.resize(q);
    beam = std::move(children);
  }
  const SearchNode* best = &beam.front();
  for (const auto& n : beam) {
    if (n.g < best->g) best = &n;
  }
  res.path = ctx.complete(best->mapping);
  res.cost = res.path.total_cost;
  res.wall_time = elapsed(start);
  return res;
}

SearchResult beam_search(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                         std::size_t q) {
  return beam_search(g1, g2, compute_cost_tables(g1, g2, m), q);
}

}  // namespace ged
