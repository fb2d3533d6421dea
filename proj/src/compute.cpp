#include <limits>
#include <stdexcept>

#include "ged/baselines.hpp"
#include "ged/solver.hpp"

namespace ged {

std::string_view to_string(GedFormulation f) {
  switch (f) {
    case GedFormulation::f1: return "f1";
    case GedFormulation::f2: return "f2";
    case GedFormulation::f2_alt: return "f2_alt";
    case GedFormulation::f2u: return "f2u";
    case GedFormulation::automatic: return "auto";
  }
  return "auto";
}

namespace {

Formulation resolve(GedFormulation f, const AttributedGraph& g1, const AttributedGraph& g2) {
  if (g1.directed != g2.directed) throw std::invalid_argument("graphs differ in directedness");
  const bool directed = g1.directed;
  switch (f) {
    case GedFormulation::f1: return Formulation::f1;
    case GedFormulation::f2:
      if (!directed) throw std::invalid_argument("f2 needs directed graphs; use f2u for undirected graphs");
      return Formulation::f2;
    case GedFormulation::f2_alt:
      if (!directed) throw std::invalid_argument("f2_alt needs directed graphs");
      return Formulation::f2_alt;
    case GedFormulation::f2u:
      if (directed) throw std::invalid_argument("f2u needs undirected graphs");
      return Formulation::f2u;
    case GedFormulation::automatic: return choose_f2_family(g1, g2);
  }
  throw std::invalid_argument("unknown formulation");
}

}  // namespace

GedResult compute_ged(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                      GedFormulation formulation, const SolveOptions& opts, bool seed_with_bp) {
  GedResult out;
  out.formulation = resolve(formulation, g1, g2);
  const CostTables costs = compute_cost_tables(g1, g2, m);
  const BlpModel model = build_model(out.formulation, g1, g2, costs);
  SolveOptions local = opts;
  if (seed_with_bp && !local.initial_incumbent) {
    local.initial_incumbent = encode_edit_path(model, bp_upper_bound(g1, g2, costs));
  }
  out.solve = solve_bb(model, local);
  if (out.solve.has_solution()) {
    out.path = decode_solution(model, g1, g2, costs, out.solve.values, local.integrality_tol);
  } else if (out.solve.status == SolveStatus::infeasible) {
    throw std::logic_error("GED model reported infeasible");
  }
  return out;
}

SolveResult compute_lower_bound_result(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                                       LowerBoundKind kind, const SolveOptions& opts) {
  if (g1.directed != g2.directed) throw std::invalid_argument("graphs differ in directedness");
  const CostTables costs = compute_cost_tables(g1, g2, m);
  Formulation f = Formulation::f1;
  if (kind == LowerBoundKind::f2lp) f = g1.directed ? Formulation::f2 : Formulation::f2u;
  SolveResult res = solve_lp(relax(build_model(f, g1, g2, costs)), opts);
  if (res.status == SolveStatus::infeasible) throw std::logic_error("GED relaxation reported infeasible");
  return res;
}

double compute_lower_bound(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                           LowerBoundKind kind, const SolveOptions& opts) {
  const SolveResult res = compute_lower_bound_result(g1, g2, m, kind, opts);
  return res.status == SolveStatus::optimal ? res.objective : res.best_bound;
}

}  // namespace ged
