#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ged {

/// Symbolic attribute value (GXL `enum`/`bool`). Compared by name.
struct Symbol {
  std::string name;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// numeric | symbol | text
using AttributeValue = std::variant<double, Symbol, std::string>;
using AttributeMap = std::map<std::string, AttributeValue>;

std::string to_string(const AttributeValue& value);

struct Vertex {
  std::string id;
  AttributeMap attrs;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Endpoints are vertex indices. For undirected graphs head <= tail.
struct Edge {
  std::string id;
  std::size_t head = 0;
  std::size_t tail = 0;
  AttributeMap attrs;

  bool is_loop() const { return head == tail; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised by loaders and the checked builder methods. `line` is 0 when the
/// problem has no source location.
class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Attributed graph (V, E, mu, xi). Edges are identified by id, so parallel
/// edges and loops are representable. Vertex and edge order is document order.
///
/// The members are public so that raw, possibly invalid, data can be held and
/// reported by validate(). The add_* helpers enforce the invariants.
struct AttributedGraph {
  std::string name;
  bool directed = false;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_edges() const { return edges.size(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;

  /// Throws GraphError on a duplicate id.
  std::size_t add_vertex(std::string id, AttributeMap attrs = {});
  /// Throws GraphError on a dangling endpoint or duplicate edge id. Undirected
  /// edges are stored with the smaller vertex index as head.
  std::size_t add_edge(std::string id, std::size_t head, std::size_t tail, AttributeMap attrs = {});
  std::size_t add_edge(std::string id, std::string_view head_id, std::string_view tail_id,
                       AttributeMap attrs = {});

  friend bool operator==(const AttributedGraph&, const AttributedGraph&) = default;
};

enum class ViolationKind {
  duplicate_vertex_id,
  empty_vertex_id,
  dangling_endpoint,
  duplicate_edge_id,
  non_canonical_edge,
  non_finite_numeric,
  empty_symbol,
};

std::string_view to_string(ViolationKind kind);

struct GraphViolation {
  ViolationKind kind;
  std::string message;
};

std::vector<GraphViolation> validate(const AttributedGraph& g);

/// Throws GraphError listing every violation when `g` is not valid.
void require_valid(const AttributedGraph& g);

/// True when two edges join the same endpoints (same orientation for
/// directed graphs, as an unordered pair otherwise).
bool has_parallel_edges(const AttributedGraph& g);

/// Incidence lists over a valid graph. Loops appear once in `incident`.
class Incidence {
 public:
  explicit Incidence(const AttributedGraph& g);

  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

 private:
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> incident_;
};

// GXL subset: <gxl><graph id edgemode><node id><attr name><float|int|string|enum|bool>
AttributedGraph load_gxl(std::string_view content);
std::string save_gxl(const AttributedGraph& g);

// Line-oriented debug format, see README.
AttributedGraph load_text_graph(std::string_view content);
std::string save_text_graph(const AttributedGraph& g);

/// Dispatches on extension: `.gxl` is GXL, anything else the text format.
AttributedGraph load_graph_file(const std::string& path);

}  // namespace ged
