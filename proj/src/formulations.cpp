#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ged/blp.hpp"

namespace ged {

namespace {

void add_term(std::vector<Term>& terms, std::size_t var, double coef) {
  for (auto& t : terms) {
    if (t.var == var) {
      t.coef += coef;
      return;
    }
  }
  terms.push_back({var, coef});
}

std::string idx_name(char prefix, std::size_t a) { return std::string(1, prefix) + "_" + std::to_string(a); }
std::string idx_name(char prefix, std::size_t a, std::size_t b) {
  return std::string(1, prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}
std::string row_name(const char* family, std::size_t a, std::size_t b) {
  return std::string(family) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

GedLayout base_layout(Formulation f, const AttributedGraph& g1, const AttributedGraph& g2) {
  GedLayout l;
  l.formulation = f;
  l.directed = g1.directed;
  l.n1 = g1.num_vertices();
  l.n2 = g2.num_vertices();
  l.m1 = g1.num_edges();
  l.m2 = g2.num_edges();
  return l;
}

void check_pair(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  require_valid(g1);
  require_valid(g2);
  if (costs.n1 != g1.num_vertices() || costs.n2 != g2.num_vertices() || costs.m1 != g1.num_edges() ||
      costs.m2 != g2.num_edges()) {
    throw std::invalid_argument("cost tables do not match the graph pair");
  }
}

// x then y, ordered (g1 order) x (g2 order).
void add_substitution_variables(BlpModel& model, GedLayout& l) {
  l.x_offset = model.num_variables();
  for (std::size_t i = 0; i < l.n1; ++i) {
    for (std::size_t k = 0; k < l.n2; ++k) model.add_variable(idx_name('x', i, k), VarDomain::binary, VarRole::vertex_sub);
  }
  l.y_offset = model.num_variables();
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t b = 0; b < l.m2; ++b) model.add_variable(idx_name('y', a, b), VarDomain::binary, VarRole::edge_sub);
  }
}

// Reduced-objective formulations share these rows: sum_k x_ik <= 1, sum_i x_ik <= 1.
void add_vertex_capacity_rows(BlpModel& model, const GedLayout& l) {
  for (std::size_t i = 0; i < l.n1; ++i) {
    Constraint c{idx_name('a', i), {}, Sense::less_equal, 1.0};
    for (std::size_t k = 0; k < l.n2; ++k) c.terms.push_back({l.x(i, k), 1.0});
    model.add_constraint(std::move(c));
  }
  for (std::size_t k = 0; k < l.n2; ++k) {
    Constraint c{idx_name('b', k), {}, Sense::less_equal, 1.0};
    for (std::size_t i = 0; i < l.n1; ++i) c.terms.push_back({l.x(i, k), 1.0});
    model.add_constraint(std::move(c));
  }
}

void set_reduced_objective(BlpModel& model, const GedLayout& l, const CostTables& costs) {
  Objective obj;
  for (double c : costs.vertex_del) obj.constant += c;
  for (double c : costs.vertex_ins) obj.constant += c;
  for (double c : costs.edge_del) obj.constant += c;
  for (double c : costs.edge_ins) obj.constant += c;
  for (std::size_t i = 0; i < l.n1; ++i) {
    for (std::size_t k = 0; k < l.n2; ++k) {
      obj.terms.push_back({l.x(i, k), costs.vsub(i, k) - costs.vertex_del[i] - costs.vertex_ins[k]});
    }
  }
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t b = 0; b < l.m2; ++b) {
      obj.terms.push_back({l.y(a, b), costs.esub(a, b) - costs.edge_del[a] - costs.edge_ins[b]});
    }
  }
  model.set_objective(std::move(obj));
}

// sum_ij y_ij,kl <= 1 for every kl in E2.
void add_target_edge_capacity_rows(BlpModel& model, const GedLayout& l) {
  for (std::size_t b = 0; b < l.m2; ++b) {
    Constraint c{idx_name('q', b), {}, Sense::less_equal, 1.0};
    for (std::size_t a = 0; a < l.m1; ++a) c.terms.push_back({l.y(a, b), 1.0});
    model.add_constraint(std::move(c));
  }
}

// sum_kl y_ij,kl <= 1 for every ij in E1.
void add_source_edge_capacity_rows(BlpModel& model, const GedLayout& l) {
  for (std::size_t a = 0; a < l.m1; ++a) {
    Constraint c{idx_name('p', a), {}, Sense::less_equal, 1.0};
    for (std::size_t b = 0; b < l.m2; ++b) c.terms.push_back({l.y(a, b), 1.0});
    model.add_constraint(std::move(c));
  }
}

// Undirected incidence weight of vertex k in edge e: loops count twice.
double incidence(const Edge& e, std::size_t k) {
  return (e.head == k ? 1.0 : 0.0) + (e.tail == k ? 1.0 : 0.0);
}

}  // namespace

BlpModel build_f1(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  check_pair(g1, g2, costs);
  if (g1.directed != g2.directed) throw std::invalid_argument("F1 needs two directed or two undirected graphs");
  BlpModel model;
  GedLayout l = base_layout(Formulation::f1, g1, g2);
  add_substitution_variables(model, l);
  l.u_offset = model.num_variables();
  for (std::size_t i = 0; i < l.n1; ++i) model.add_variable(idx_name('u', i), VarDomain::binary, VarRole::vertex_del);
  l.v_offset = model.num_variables();
  for (std::size_t k = 0; k < l.n2; ++k) model.add_variable(idx_name('v', k), VarDomain::binary, VarRole::vertex_ins);
  l.e_offset = model.num_variables();
  for (std::size_t a = 0; a < l.m1; ++a) model.add_variable(idx_name('e', a), VarDomain::binary, VarRole::edge_del);
  l.f_offset = model.num_variables();
  for (std::size_t b = 0; b < l.m2; ++b) model.add_variable(idx_name('f', b), VarDomain::binary, VarRole::edge_ins);

  Objective obj;
  for (std::size_t i = 0; i < l.n1; ++i) {
    for (std::size_t k = 0; k < l.n2; ++k) obj.terms.push_back({l.x(i, k), costs.vsub(i, k)});
  }
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t b = 0; b < l.m2; ++b) obj.terms.push_back({l.y(a, b), costs.esub(a, b)});
  }
  for (std::size_t i = 0; i < l.n1; ++i) obj.terms.push_back({l.u_offset + i, costs.vertex_del[i]});
  for (std::size_t k = 0; k < l.n2; ++k) obj.terms.push_back({l.v_offset + k, costs.vertex_ins[k]});
  for (std::size_t a = 0; a < l.m1; ++a) obj.terms.push_back({l.e_offset + a, costs.edge_del[a]});
  for (std::size_t b = 0; b < l.m2; ++b) obj.terms.push_back({l.f_offset + b, costs.edge_ins[b]});
  model.set_objective(std::move(obj));

  for (std::size_t i = 0; i < l.n1; ++i) {
    Constraint c{idx_name('a', i), {{l.u_offset + i, 1.0}}, Sense::equal, 1.0};
    for (std::size_t k = 0; k < l.n2; ++k) c.terms.push_back({l.x(i, k), 1.0});
    model.add_constraint(std::move(c));
  }
  for (std::size_t k = 0; k < l.n2; ++k) {
    Constraint c{idx_name('b', k), {{l.v_offset + k, 1.0}}, Sense::equal, 1.0};
    for (std::size_t i = 0; i < l.n1; ++i) c.terms.push_back({l.x(i, k), 1.0});
    model.add_constraint(std::move(c));
  }
  for (std::size_t a = 0; a < l.m1; ++a) {
    Constraint c{idx_name('p', a), {{l.e_offset + a, 1.0}}, Sense::equal, 1.0};
    for (std::size_t b = 0; b < l.m2; ++b) c.terms.push_back({l.y(a, b), 1.0});
    model.add_constraint(std::move(c));
  }
  for (std::size_t b = 0; b < l.m2; ++b) {
    Constraint c{idx_name('q', b), {{l.f_offset + b, 1.0}}, Sense::equal, 1.0};
    for (std::size_t a = 0; a < l.m1; ++a) c.terms.push_back({l.y(a, b), 1.0});
    model.add_constraint(std::move(c));
  }

  // Topology, one row per (ij, kl) and endpoint.
  for (int side = 0; side < 2; ++side) {
    for (std::size_t a = 0; a < l.m1; ++a) {
      const Edge& ij = g1.edges[a];
      for (std::size_t b = 0; b < l.m2; ++b) {
        const Edge& kl = g2.edges[b];
        Constraint c{row_name(side == 0 ? "h" : "t", a, b), {}, Sense::less_equal, 0.0};
        if (l.directed) {
          add_term(c.terms, l.y(a, b), 1.0);
          add_term(c.terms, side == 0 ? l.x(ij.head, kl.head) : l.x(ij.tail, kl.tail), -1.0);
        } else {
          const std::size_t k = side == 0 ? kl.head : kl.tail;
          add_term(c.terms, l.y(a, b), incidence(kl, k));
          add_term(c.terms, l.x(ij.head, k), -1.0);
          add_term(c.terms, l.x(ij.tail, k), -1.0);
        }
        model.add_constraint(std::move(c));
      }
    }
  }
  model.set_layout(l);
  return model;
}

BlpModel build_f2(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  check_pair(g1, g2, costs);
  if (!g1.directed || !g2.directed) throw std::invalid_argument("F2 needs two directed graphs (use F2u)");
  BlpModel model;
  GedLayout l = base_layout(Formulation::f2, g1, g2);
  add_substitution_variables(model, l);
  set_reduced_objective(model, l, costs);
  add_vertex_capacity_rows(model, l);

  const Incidence inc2(g2);
  // sum_{kl: head k} y_ij,kl <= x_ik
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t k = 0; k < l.n2; ++k) {
      Constraint c{row_name("h", a, k), {}, Sense::less_equal, 0.0};
      for (std::size_t b : inc2.out_edges(k)) add_term(c.terms, l.y(a, b), 1.0);
      add_term(c.terms, l.x(g1.edges[a].head, k), -1.0);
      model.add_constraint(std::move(c));
    }
  }
  // sum_{kl: tail l} y_ij,kl <= x_jl
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t k = 0; k < l.n2; ++k) {
      Constraint c{row_name("t", a, k), {}, Sense::less_equal, 0.0};
      for (std::size_t b : inc2.in_edges(k)) add_term(c.terms, l.y(a, b), 1.0);
      add_term(c.terms, l.x(g1.edges[a].tail, k), -1.0);
      model.add_constraint(std::move(c));
    }
  }
  // Parallel source edges could share one target edge otherwise.
  if (has_parallel_edges(g1)) add_target_edge_capacity_rows(model, l);
  model.set_layout(l);
  return model;
}

BlpModel build_f2_alt(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  check_pair(g1, g2, costs);
  if (!g1.directed || !g2.directed) throw std::invalid_argument("F2-alt needs two directed graphs");
  BlpModel model;
  GedLayout l = base_layout(Formulation::f2_alt, g1, g2);
  add_substitution_variables(model, l);
  set_reduced_objective(model, l, costs);
  add_vertex_capacity_rows(model, l);

  const Incidence inc1(g1);
  // sum_{ij: head i} y_ij,kl <= x_ik
  for (std::size_t b = 0; b < l.m2; ++b) {
    for (std::size_t i = 0; i < l.n1; ++i) {
      Constraint c{row_name("h", b, i), {}, Sense::less_equal, 0.0};
      for (std::size_t a : inc1.out_edges(i)) add_term(c.terms, l.y(a, b), 1.0);
      add_term(c.terms, l.x(i, g2.edges[b].head), -1.0);
      model.add_constraint(std::move(c));
    }
  }
  // sum_{ij: tail j} y_ij,kl <= x_jl
  for (std::size_t b = 0; b < l.m2; ++b) {
    for (std::size_t i = 0; i < l.n1; ++i) {
      Constraint c{row_name("t", b, i), {}, Sense::less_equal, 0.0};
      for (std::size_t a : inc1.in_edges(i)) add_term(c.terms, l.y(a, b), 1.0);
      add_term(c.terms, l.x(i, g2.edges[b].tail), -1.0);
      model.add_constraint(std::move(c));
    }
  }
  if (has_parallel_edges(g2)) add_source_edge_capacity_rows(model, l);
  model.set_layout(l);
  return model;
}

BlpModel build_f2u(const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  check_pair(g1, g2, costs);
  if (g1.directed || g2.directed) throw std::invalid_argument("F2u needs two undirected graphs");
  BlpModel model;
  GedLayout l = base_layout(Formulation::f2u, g1, g2);
  add_substitution_variables(model, l);
  set_reduced_objective(model, l, costs);
  add_vertex_capacity_rows(model, l);

  const Incidence inc2(g2);
  // sum_{kl incident to k} y_ij,kl <= x_ik + x_jk; endpoints and loops are
  // counted with multiplicity on both sides.
  for (std::size_t a = 0; a < l.m1; ++a) {
    const Edge& ij = g1.edges[a];
    for (std::size_t k = 0; k < l.n2; ++k) {
      Constraint c{row_name("n", a, k), {}, Sense::less_equal, 0.0};
      for (std::size_t b : inc2.incident(k)) add_term(c.terms, l.y(a, b), incidence(g2.edges[b], k));
      add_term(c.terms, l.x(ij.head, k), -1.0);
      add_term(c.terms, l.x(ij.tail, k), -1.0);
      model.add_constraint(std::move(c));
    }
  }
  if (has_parallel_edges(g1)) add_target_edge_capacity_rows(model, l);
  model.set_layout(l);
  return model;
}

BlpModel build_f1(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return build_f1(g1, g2, compute_cost_tables(g1, g2, m));
}
BlpModel build_f2(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return build_f2(g1, g2, compute_cost_tables(g1, g2, m));
}
BlpModel build_f2_alt(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return build_f2_alt(g1, g2, compute_cost_tables(g1, g2, m));
}
BlpModel build_f2u(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  return build_f2u(g1, g2, compute_cost_tables(g1, g2, m));
}

BlpModel build_model(Formulation f, const AttributedGraph& g1, const AttributedGraph& g2, const CostTables& costs) {
  switch (f) {
    case Formulation::f1: return build_f1(g1, g2, costs);
    case Formulation::f2: return build_f2(g1, g2, costs);
    case Formulation::f2_alt: return build_f2_alt(g1, g2, costs);
    case Formulation::f2u: return build_f2u(g1, g2, costs);
  }
  throw std::invalid_argument("unknown formulation");
}

Formulation choose_f2_family(const AttributedGraph& g1, const AttributedGraph& g2) {
  if (!g1.directed && !g2.directed) return Formulation::f2u;
  if (g1.directed != g2.directed) throw std::invalid_argument("graphs differ in directedness");
  return g1.num_vertices() * g2.num_edges() < g2.num_vertices() * g1.num_edges() ? Formulation::f2_alt
                                                                                  : Formulation::f2;
}

EditPath decode_solution(const BlpModel& model, const AttributedGraph& g1, const AttributedGraph& g2,
                         const CostTables& costs, std::span<const double> values, double tol) {
  if (!model.layout()) throw std::invalid_argument("model was not built from a graph pair");
  const GedLayout& l = *model.layout();
  if (values.size() != model.num_variables()) throw std::logic_error("assignment size does not match the model");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (std::abs(values[j] - std::round(values[j])) > tol) {
      throw std::logic_error("non-integral value for " + model.variables()[j].name);
    }
  }
  if (model.max_violation(values) > tol) throw std::logic_error("assignment violates the model constraints");

  std::vector<std::pair<std::size_t, std::size_t>> xs, ys;
  for (std::size_t i = 0; i < l.n1; ++i) {
    for (std::size_t k = 0; k < l.n2; ++k) if (values[l.x(i, k)] > 0.5) xs.emplace_back(i, k);
  }
  for (std::size_t a = 0; a < l.m1; ++a) {
    for (std::size_t b = 0; b < l.m2; ++b) if (values[l.y(a, b)] > 0.5) ys.emplace_back(a, b);
  }
  EditPath path = make_edit_path(g1, g2, costs, std::move(xs), std::move(ys));
  const double objective = model.evaluate(values);
  if (std::abs(path.total_cost - objective) > 1e-6 * std::max(1.0, std::abs(objective))) {
    throw std::logic_error("decoded edit path cost does not match the objective");
  }
  return path;
}

EditPath decode_solution(Formulation f, const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                         std::span<const double> values, double tol) {
  const CostTables costs = compute_cost_tables(g1, g2, m);
  return decode_solution(build_model(f, g1, g2, costs), g1, g2, costs, values, tol);
}

std::vector<double> encode_edit_path(const BlpModel& model, const EditPath& path) {
  if (!model.layout()) throw std::invalid_argument("model was not built from a graph pair");
  const GedLayout& l = *model.layout();
  std::vector<double> values(model.num_variables(), 0.0);
  for (auto [i, k] : path.vertex_subs) values[l.x(i, k)] = 1.0;
  for (auto [a, b] : path.edge_subs) values[l.y(a, b)] = 1.0;
  if (l.u_offset != GedLayout::npos) {
    for (auto i : path.deleted_vertices) values[l.u_offset + i] = 1.0;
    for (auto k : path.inserted_vertices) values[l.v_offset + k] = 1.0;
    for (auto a : path.deleted_edges) values[l.e_offset + a] = 1.0;
    for (auto b : path.inserted_edges) values[l.f_offset + b] = 1.0;
  }
  return values;
}

}  // namespace ged
