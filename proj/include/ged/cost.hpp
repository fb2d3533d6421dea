#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ged/graph.hpp"

namespace ged {

class CostError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit-cost Levenshtein distance.
double string_edit_distance(std::string_view s1, std::string_view s2);

enum class CostModelKind { grec, muta, prot, ilpiso, custom };

std::string_view to_string(CostModelKind kind);
CostModelKind parse_cost_model_kind(std::string_view name);

enum class Metric {
  zero,         // always 0
  dirac,        // 0 when every key is equal, 2*tau otherwise
  l1,           // sum of |a - b| over numeric keys
  euclidean,    // L2 distance over numeric keys
  levenshtein,  // string edit distance of a single text/symbol key
};

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);

/// How one substitution cost is computed from two attribute maps. When
/// `type_key` is set, mismatching types cost 2*tau regardless of the metric.
struct SubstitutionRule {
  Metric metric = Metric::zero;
  std::vector<std::string> keys;
  std::string type_key;  // empty: no type gate
};

struct CostParams {
  CostModelKind model = CostModelKind::custom;
  double tau_vertex = 1.0;
  double tau_edge = 1.0;
  double alpha = 0.5;
  SubstitutionRule vertex_rule;
  SubstitutionRule edge_rule;
};

/// Table values and attribute bindings of a built-in model: GREC (90, 15, 0.5),
/// PROT (11, 1, 0.75), MUTA (11, 1.1, 0.25), ILPISO (66.6, 66.6, 0.5).
CostParams default_params(CostModelKind kind);

/// The six elementary edit-cost functions.
struct CostModel {
  using Sub = std::function<double(const AttributeMap&, const AttributeMap&)>;
  using Unary = std::function<double(const AttributeMap&)>;

  std::string name;
  Sub vertex_sub;
  Unary vertex_del;
  Unary vertex_ins;
  Sub edge_sub;
  Unary edge_del;
  Unary edge_ins;
};

/// Vertex costs are scaled by alpha and edge costs by (1 - alpha); deletion
/// and insertion cost tau before scaling. Throws CostError on bad params.
CostModel make_cost_model(const CostParams& params);

/// Reads a JSON cost config (see README). Built-in names ("grec", "muta",
/// "prot", "ilpiso") are accepted in place of a path.
CostParams load_cost_params(const std::string& path_or_name);
CostParams parse_cost_params(std::string_view json_text);
/// Inverse of parse_cost_params; every key is written.
std::string cost_params_to_json(const CostParams& params);

struct AxiomViolation {
  std::string rule;  // e.g. "vertex_sub_triangle"
  std::size_t a = 0, b = 0, c = 0;  // sample indices; b == npos stands for epsilon
  double lhs = 0, rhs = 0;
};

/// Checks the triangle inequalities (intermediate element ranging over the
/// samples and epsilon) and the symmetry equalities over every sampled triple.
std::vector<AxiomViolation> check_cost_axioms(const CostModel& m,
                                              const std::vector<AttributeMap>& vertex_samples,
                                              const std::vector<AttributeMap>& edge_samples,
                                              double tol = 1e-9);

/// Every elementary cost of a graph pair, evaluated once.
struct CostTables {
  std::size_t n1 = 0, n2 = 0, m1 = 0, m2 = 0;
  std::vector<double> vertex_sub;  // n1 x n2, row-major
  std::vector<double> vertex_del;  // n1
  std::vector<double> vertex_ins;  // n2
  std::vector<double> edge_sub;    // m1 x m2, row-major
  std::vector<double> edge_del;    // m1
  std::vector<double> edge_ins;    // m2

  double vsub(std::size_t i, std::size_t k) const { return vertex_sub[i * n2 + k]; }
  double esub(std::size_t ij, std::size_t kl) const { return edge_sub[ij * m2 + kl]; }
};

/// Throws CostError when a cost is negative or not finite.
CostTables compute_cost_tables(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);

}  // namespace ged
