#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ged/cost.hpp"
#include "ged/graph.hpp"

namespace ged {

enum class VarDomain { binary, unit_interval };

/// What an edit variable stands for; drives branching priority.
enum class VarRole { vertex_sub, edge_sub, vertex_del, vertex_ins, edge_del, edge_ins, other };

struct Variable {
  std::string name;
  VarDomain domain = VarDomain::binary;
  VarRole role = VarRole::other;
};

struct Term {
  std::size_t var;
  double coef;
};

enum class Sense { less_equal, equal };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::less_equal;
  double rhs = 0;
};

struct Objective {
  double constant = 0;
  std::vector<Term> terms;
};

enum class Formulation { f1, f2, f2_alt, f2u };

std::string_view to_string(Formulation f);

/// Index layout of a GED model built from a graph pair. Offsets are npos for
/// variable families the formulation does not have.
struct GedLayout {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Formulation formulation = Formulation::f2;
  bool directed = true;
  std::size_t n1 = 0, n2 = 0, m1 = 0, m2 = 0;
  std::size_t x_offset = 0, y_offset = 0;
  std::size_t u_offset = npos, v_offset = npos, e_offset = npos, f_offset = npos;

  std::size_t x(std::size_t i, std::size_t k) const { return x_offset + i * n2 + k; }
  std::size_t y(std::size_t ij, std::size_t kl) const { return y_offset + ij * m2 + kl; }
};

/// Generic minimization program over [0,1]-boxed variables.
class BlpModel {
 public:
  std::size_t add_variable(std::string name, VarDomain domain, VarRole role = VarRole::other);
  /// Throws std::out_of_range if a term references an undeclared variable.
  void add_constraint(Constraint c);
  void set_objective(Objective obj);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  const std::optional<GedLayout>& layout() const { return layout_; }
  void set_layout(GedLayout layout) { layout_ = layout; }

  bool all_binary() const;
  double evaluate(std::span<const double> values) const;
  /// Largest amount by which `values` violates a row or a variable bound.
  double max_violation(std::span<const double> values) const;

  /// Same program with every domain widened to [0,1]. Idempotent.
  friend BlpModel relax(const BlpModel& model);

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Objective objective_;
  std::optional<GedLayout> layout_;
};

BlpModel relax(const BlpModel& model);

/// Edit path (x, y, u, v, e, f) as index lists into the graph pair.
struct EditPath {
  std::vector<std::pair<std::size_t, std::size_t>> vertex_subs;  // x: (i, k)
  std::vector<std::pair<std::size_t, std::size_t>> edge_subs;    // y: (ij, kl)
  std::vector<std::size_t> deleted_vertices;                      // u
  std::vector<std::size_t> inserted_vertices;                     // v
  std::vector<std::size_t> deleted_edges;                         // e
  std::vector<std::size_t> inserted_edges;                        // f
  double total_cost = 0;
};

/// Fills u, v, e, f from x and y and recomputes total_cost.
EditPath make_edit_path(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                        std::vector<std::pair<std::size_t, std::size_t>> vertex_subs,
                        std::vector<std::pair<std::size_t, std::size_t>> edge_subs);

double edit_path_cost(const CostTables& costs, const EditPath& path);

/// Empty iff the path is an injective, complete and topologically consistent
/// edit path between g1 and g2.
std::vector<std::string> check_edit_path(const AttributedGraph& g1, const AttributedGraph& g2,
                                         const EditPath& path);

/// Completes a vertex assignment (mapping[i] = k, or nullopt for deletion) into
/// the cheapest edit path that keeps it: edges between mapped endpoints are
/// matched by an optimal assignment within each endpoint pair, the rest are
/// deleted or inserted.
EditPath complete_vertex_mapping(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs,
                                 const std::vector<std::optional<std::size_t>>& mapping);

std::string describe_edit_path(const AttributedGraph& g1, const AttributedGraph& g2, const EditPath& path);

BlpModel build_f1(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);
BlpModel build_f1(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);
BlpModel build_f2(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);
BlpModel build_f2(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);
BlpModel build_f2_alt(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);
BlpModel build_f2_alt(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);
BlpModel build_f2u(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m);
BlpModel build_f2u(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);

BlpModel build_model(Formulation f, const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs);

/// F2 for directed pairs unless F2-alt has fewer topology rows
/// (|V1||E2| < |V2||E1|); F2u for undirected pairs.
Formulation choose_f2_family(const AttributedGraph& g1, const AttributedGraph& g2);

/// Converts a solver assignment into an edit path. Throws std::logic_error on
/// non-integral values or a violated constraint: both indicate a solver bug.
EditPath decode_solution(const BlpModel& model, const AttributedGraph& g1, const AttributedGraph& g2,
                         const CostTables& costs, std::span<const double> values, double tol = 1e-6);
EditPath decode_solution(Formulation f, const AttributedGraph& g1, const AttributedGraph& g2,
                         const CostModel& m, std::span<const double> values, double tol = 1e-6);

/// Variable assignment of `model` representing `path`.
std::vector<double> encode_edit_path(const BlpModel& model, const EditPath& path);

/// CPLEX LP text format.
void write_lp(const BlpModel& model, std::ostream& out);
std::string to_lp_string(const BlpModel& model);

}  // namespace ged
