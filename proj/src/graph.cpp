#include "ged/graph.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "strings.hpp"

namespace ged {

std::string to_string(const AttributeValue& value) {
  struct Visitor {
    std::string operator()(double d) const { return detail::format_double(d); }
    std::string operator()(const Symbol& s) const { return s.name; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, value);
}

std::optional<std::size_t> AttributedGraph::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t AttributedGraph::add_vertex(std::string id, AttributeMap attrs) {
  if (find_vertex(id)) throw GraphError("duplicate vertex id '" + id + "'");
  vertices.push_back(Vertex{std::move(id), std::move(attrs)});
  return vertices.size() - 1;
}

std::size_t AttributedGraph::add_edge(std::string id, std::size_t head, std::size_t tail,
                                      AttributeMap attrs) {
  if (head >= vertices.size() || tail >= vertices.size()) {
    throw GraphError("edge '" + id + "' has a dangling endpoint");
  }
  for (const auto& e : edges) {
    if (e.id == id) throw GraphError("duplicate edge id '" + id + "'");
  }
  if (!directed && head > tail) std::swap(head, tail);
  edges.push_back(Edge{std::move(id), head, tail, std::move(attrs)});
  return edges.size() - 1;
}

std::size_t AttributedGraph::add_edge(std::string id, std::string_view head_id,
                                      std::string_view tail_id, AttributeMap attrs) {
  auto head = find_vertex(head_id);
  auto tail = find_vertex(tail_id);
  if (!head || !tail) {
    throw GraphError("edge '" + id + "' references undeclared vertex '" +
                     std::string(!head ? head_id : tail_id) + "'");
  }
  return add_edge(std::move(id), *head, *tail, std::move(attrs));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_vertex_id: return "duplicate_vertex_id";
    case ViolationKind::empty_vertex_id: return "empty_vertex_id";
    case ViolationKind::dangling_endpoint: return "dangling_endpoint";
    case ViolationKind::duplicate_edge_id: return "duplicate_edge_id";
    case ViolationKind::non_canonical_edge: return "non_canonical_edge";
    case ViolationKind::non_finite_numeric: return "non_finite_numeric";
    case ViolationKind::empty_symbol: return "empty_symbol";
  }
  return "unknown";
}

namespace {

void check_attrs(const AttributeMap& attrs, const std::string& owner,
                 std::vector<GraphViolation>& out) {
  for (const auto& [key, value] : attrs) {
    if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
      out.push_back({ViolationKind::non_finite_numeric,
                     owner + " attribute '" + key + "' is not finite"});
    }
    if (const auto* s = std::get_if<Symbol>(&value); s && s->name.empty()) {
      out.push_back({ViolationKind::empty_symbol, owner + " attribute '" + key + "' is an empty symbol"});
    }
  }
}

}  // namespace

std::vector<GraphViolation> validate(const AttributedGraph& g) {
  std::vector<GraphViolation> out;
  std::unordered_set<std::string> seen;
  for (const auto& v : g.vertices) {
    if (v.id.empty()) out.push_back({ViolationKind::empty_vertex_id, "vertex with empty id"});
    if (!seen.insert(v.id).second) {
      out.push_back({ViolationKind::duplicate_vertex_id, "duplicate vertex id '" + v.id + "'"});
    }
    check_attrs(v.attrs, "vertex '" + v.id + "'", out);
  }
  seen.clear();
  for (const auto& e : g.edges) {
    if (!seen.insert(e.id).second) {
      out.push_back({ViolationKind::duplicate_edge_id, "duplicate edge id '" + e.id + "'"});
    }
    const bool dangling = e.head >= g.vertices.size() || e.tail >= g.vertices.size();
    if (dangling) {
      out.push_back({ViolationKind::dangling_endpoint,
                     "edge '" + e.id + "' references a missing vertex"});
    } else if (!g.directed && e.head > e.tail) {
      out.push_back({ViolationKind::non_canonical_edge,
                     "undirected edge '" + e.id + "' is not stored with the smaller endpoint first"});
    }
    check_attrs(e.attrs, "edge '" + e.id + "'", out);
  }
  return out;
}

void require_valid(const AttributedGraph& g) {
  auto violations = validate(g);
  if (violations.empty()) return;
  std::string msg = "invalid graph '" + g.name + "':";
  for (const auto& v : violations) msg += " " + v.message + ";";
  throw GraphError(msg);
}

bool has_parallel_edges(const AttributedGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : g.edges) {
    auto key = std::make_pair(e.head, e.tail);
    if (!g.directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen.insert(key).second) return true;
  }
  return false;
}

Incidence::Incidence(const AttributedGraph& g)
    : out_(g.num_vertices()), in_(g.num_vertices()), incident_(g.num_vertices()) {
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges[e];
    out_[edge.head].push_back(e);
    in_[edge.tail].push_back(e);
    incident_[edge.head].push_back(e);
    if (!edge.is_loop()) incident_[edge.tail].push_back(e);
  }
}

AttributedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const bool is_gxl = path.size() >= 4 && path.compare(path.size() - 4, 4, ".gxl") == 0;
  try {
    return is_gxl ? load_gxl(buf.str()) : load_text_graph(buf.str());
  } catch (const GraphError& e) {
    throw GraphError(path + ": " + e.what());
  }
}

}  // namespace ged
