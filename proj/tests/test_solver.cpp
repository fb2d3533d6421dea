#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ged/baselines.hpp"
#include "ged/solver.hpp"
#include "oracles.hpp"

using namespace ged;

namespace {

std::vector<Formulation> formulations_for(bool directed) {
  if (directed) return {Formulation::f1, Formulation::f2, Formulation::f2_alt};
  return {Formulation::f1, Formulation::f2u};
}

GedFormulation as_ged(Formulation f) {
  switch (f) {
    case Formulation::f1: return GedFormulation::f1;
    case Formulation::f2: return GedFormulation::f2;
    case Formulation::f2_alt: return GedFormulation::f2_alt;
    case Formulation::f2u: return GedFormulation::f2u;
  }
  return GedFormulation::automatic;
}

oracle::RandomCostInstance random_instance(std::mt19937_64& rng, bool directed, std::size_t max_vertices,
                                           bool multigraph = false) {
  oracle::RandomGraphSpec spec;
  spec.directed = directed;
  spec.max_vertices = max_vertices;
  spec.loops = multigraph;
  spec.parallel = multigraph;
  return oracle::with_random_costs(rng, oracle::random_graph(rng, spec, "a"), oracle::random_graph(rng, spec, "b"));
}

// Dense graphs with identical labels: many optimal vertex maps and a weak root bound.
std::pair<AttributedGraph, AttributedGraph> hard_pair(std::size_t n) {
  std::mt19937_64 rng(99);
  oracle::RandomGraphSpec spec;
  spec.min_vertices = spec.max_vertices = n;
  spec.edge_probability = 0.5;
  spec.labels = 1;
  return {oracle::random_graph(rng, spec, "a"), oracle::random_graph(rng, spec, "b")};
}

CostModel unit_model() {
  CostParams p;
  p.tau_vertex = 2;
  p.tau_edge = 2;
  p.alpha = 0.5;
  return make_cost_model(p);
}

}  // namespace

TEST_CASE("lp: minimize x with x >= 0.3") {
  BlpModel m;
  const auto x = m.add_variable("x", VarDomain::unit_interval);
  m.add_constraint({"c", {{x, -1.0}}, Sense::less_equal, -0.3});
  m.set_objective({0.0, {{x, 1.0}}});
  const auto r = solve_lp(m);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == doctest::Approx(0.3));
  CHECK(r.values[0] == doctest::Approx(0.3));
}

TEST_CASE("lp: equality rows, negative costs and infeasibility") {
  BlpModel m;
  const auto a = m.add_variable("a", VarDomain::unit_interval);
  const auto b = m.add_variable("b", VarDomain::unit_interval);
  m.add_constraint({"sum", {{a, 1.0}, {b, 1.0}}, Sense::equal, 1.5});
  m.set_objective({1.0, {{a, -2.0}, {b, 1.0}}});
  auto r = solve_lp(m);
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0 - 2.0 + 0.5));

  m.add_constraint({"cap", {{a, 1.0}}, Sense::less_equal, 0.25});
  r = solve_lp(m);
  CHECK(r.status == SolveStatus::infeasible);
  CHECK(solve_bb(m).status == SolveStatus::infeasible);
}

TEST_CASE("lp: identical labeled vertices relax to zero") {
  AttributedGraph g;
  g.directed = true;
  g.add_vertex("a", {{"label", 1.0}});
  CHECK(compute_lower_bound(g, g, make_cost_model(default_params(CostModelKind::ilpiso)), LowerBoundKind::f2lp) == 0);
}

TEST_CASE("lp: agrees with the tableau oracle on random relaxations") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto inst = random_instance(rng, directed, 6);
    for (auto f : formulations_for(directed)) {
      const auto model = relax(build_model(f, inst.g1, inst.g2, inst.tables));
      const auto r = solve_lp(model);
      const auto t = oracle::tableau_lp(model);
      REQUIRE(t.feasible);
      REQUIRE(r.status == SolveStatus::optimal);
      INFO("trial " << trial << " " << to_string(f) << " simplex " << r.objective << " tableau " << t.objective);
      CHECK(model.max_violation(t.x) <= 1e-9);
      CHECK(oracle::close(r.objective, t.objective, 1e-9, 1e-9));
      CHECK(model.max_violation(r.values) <= 1e-9);
    }
  }
}

TEST_CASE("bb: integral relaxation is solved at the root") {
  // Vertex-only graphs: the relaxation is an assignment polytope.
  std::mt19937_64 rng(43);
  oracle::RandomGraphSpec spec;
  spec.directed = true;
  spec.edge_probability = 0;
  const auto inst = oracle::with_random_costs(rng, oracle::random_graph(rng, spec, "a"), oracle::random_graph(rng, spec, "b"));
  const auto r = solve_bb(build_f2(inst.g1, inst.g2, inst.tables));
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.stats.nodes == 1);
  CHECK(oracle::close(r.objective, oracle::brute_force_ged(inst.g1, inst.g2, inst.tables)));
}

TEST_CASE("bb: every formulation matches the enumeration oracle") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto inst = random_instance(rng, directed, 5);
    const double truth = oracle::brute_force_ged(inst.g1, inst.g2, inst.tables);
    for (auto f : formulations_for(directed)) {
      const auto r = solve_bb(build_model(f, inst.g1, inst.g2, inst.tables));
      REQUIRE(r.status == SolveStatus::optimal);
      CHECK(oracle::close(r.objective, truth));
    }
  }
}

TEST_CASE("bb: loops and parallel edges match the enumeration oracle") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto inst = random_instance(rng, directed, 4, true);
    const double truth = oracle::brute_force_ged(inst.g1, inst.g2, inst.tables);
    for (auto f : formulations_for(directed)) {
      const auto r = solve_bb(build_model(f, inst.g1, inst.g2, inst.tables));
      REQUIRE(r.status == SolveStatus::optimal);
      CHECK(oracle::close(r.objective, truth));
    }
  }
}

TEST_CASE("compute_ged: examples and decoded paths") {
  std::mt19937_64 rng(59);
  const auto g = oracle::random_grec_graph(rng, 5, 0.5);
  for (auto kind : {CostModelKind::grec}) {
    const auto r = compute_ged(g, g, make_cost_model(default_params(kind)));
    CHECK(r.solve.status == SolveStatus::optimal);
    CHECK(r.solve.objective == doctest::Approx(0));
  }
  AttributedGraph one, none;
  one.add_vertex("a", {{"x", 1.0}, {"y", 2.0}, {"type", Symbol{"corner"}}});
  const auto del = compute_ged(one, none, make_cost_model(default_params(CostModelKind::grec)));
  CHECK(del.solve.objective == doctest::Approx(45));
  CHECK(del.path.deleted_vertices == std::vector<std::size_t>{0});

  for (int trial = 0; trial < 20; ++trial) {
    const bool directed = trial % 2 == 1;
    const auto inst = random_instance(rng, directed, 5);
    for (auto f : formulations_for(directed)) {
      const auto r = compute_ged(inst.g1, inst.g2, inst.model, as_ged(f));
      REQUIRE(r.solve.status == SolveStatus::optimal);
      CHECK(check_edit_path(inst.g1, inst.g2, r.path).empty());
      CHECK(oracle::close(r.path.total_cost, r.solve.objective));
      CHECK(oracle::close(edit_path_cost(inst.tables, r.path), r.solve.objective));
    }
  }

  AttributedGraph d;
  d.directed = true;
  CHECK_THROWS_AS(compute_ged(d, none, unit_model()), std::invalid_argument);
  CHECK_THROWS_AS(compute_ged(none, none, unit_model(), GedFormulation::f2), std::invalid_argument);
  CHECK_THROWS_AS(compute_ged(d, d, unit_model(), GedFormulation::f2u), std::invalid_argument);
}

TEST_CASE("lower bounds: identical graphs and ordering below GED") {
  std::mt19937_64 rng(61);
  const auto g = oracle::random_grec_graph(rng, 5, 0.5);
  const auto grec = make_cost_model(default_params(CostModelKind::grec));
  CHECK(compute_lower_bound(g, g, grec, LowerBoundKind::f1lp) == doctest::Approx(0));
  CHECK(compute_lower_bound(g, g, grec, LowerBoundKind::f2lp) == doctest::Approx(0));
  for (int trial = 0; trial < 40; ++trial) {
    const bool directed = trial % 2 == 0;
    const auto inst = random_instance(rng, directed, 5);
    const double truth = oracle::brute_force_ged(inst.g1, inst.g2, inst.tables);
    const double f1lp = compute_lower_bound(inst.g1, inst.g2, inst.model, LowerBoundKind::f1lp);
    const double f2lp = compute_lower_bound(inst.g1, inst.g2, inst.model, LowerBoundKind::f2lp);
    CHECK(f1lp <= truth + 1e-9 + 1e-6 * truth);
    CHECK(f2lp <= truth + 1e-9 + 1e-6 * truth);
  }
}

TEST_CASE("bb: timeout contract") {
  const auto [g1, g2] = hard_pair(12);
  const auto m = unit_model();
  SolveOptions opts;
  opts.time_limit = 0.05;
  const auto r = compute_ged(g1, g2, m, GedFormulation::f1, opts);
  REQUIRE(r.solve.status == SolveStatus::feasible_timeout);
  CHECK(r.solve.best_bound <= r.solve.objective);
  CHECK(check_edit_path(g1, g2, r.path).empty());
  CHECK(r.path.total_cost == doctest::Approx(r.solve.objective));

  // Without a seed there may be no incumbent at all.
  SolveOptions tiny;
  tiny.time_limit = 1e-6;
  const auto bare = solve_bb(build_f1(g1, g2, m), tiny);
  CHECK((bare.status == SolveStatus::timeout || bare.status == SolveStatus::feasible_timeout));
  CHECK_FALSE(bare.status == SolveStatus::optimal);
}

TEST_CASE("bb: determinism and anytime monotonicity") {
  const auto [g1, g2] = hard_pair(7);
  const auto model = build_f1(g1, g2, unit_model());
  const auto a = solve_bb(model);
  const auto b = solve_bb(model);
  REQUIRE(a.status == SolveStatus::optimal);
  CHECK(a.objective == b.objective);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.lp_iterations == b.stats.lp_iterations);
  CHECK(a.values == b.values);
  REQUIRE_FALSE(a.stats.trajectory.empty());
  for (std::size_t i = 1; i < a.stats.trajectory.size(); ++i) {
    CHECK(a.stats.trajectory[i].incumbent <= a.stats.trajectory[i - 1].incumbent);
    CHECK(a.stats.trajectory[i].best_bound >= a.stats.trajectory[i - 1].best_bound);
  }
  for (const auto& p : a.stats.trajectory) CHECK(p.best_bound <= p.incumbent);
  CHECK(a.stats.trajectory.back().incumbent == a.objective);
}

TEST_CASE("bb: branching rules and log format") {
  const auto [g1, g2] = hard_pair(5);
  const auto model = build_f1(g1, g2, unit_model());
  std::ostringstream log;
  SolveOptions opts;
  opts.verbosity = 1;
  opts.log = &log;
  const auto most = solve_bb(model, opts);
  opts.branching = BranchingRule::first_fractional;
  const auto first = solve_bb(model, opts);
  CHECK(most.objective == doctest::Approx(first.objective));
  CHECK(log.str().find("event=incumbent nodes=") != std::string::npos);
  CHECK(log.str().find("event=done status=optimal") != std::string::npos);
  CHECK(log.str().find(" time=") != std::string::npos);
  CHECK(parse_branching_rule("first_fractional") == BranchingRule::first_fractional);
  CHECK_THROWS_AS(parse_branching_rule("random"), std::invalid_argument);
}

TEST_CASE("options validation and initial incumbents") {
  SolveOptions bad;
  bad.time_limit = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad.time_limit = 1;
  bad.integrality_tol = -1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  std::mt19937_64 rng(67);
  const auto inst = random_instance(rng, true, 5);
  const auto model = build_f2(inst.g1, inst.g2, inst.tables);
  SolveOptions seeded;
  seeded.initial_incumbent = encode_edit_path(model, bp_upper_bound(inst.g1, inst.g2, inst.tables));
  const auto r = solve_bb(model, seeded);
  CHECK(oracle::close(r.objective, oracle::brute_force_ged(inst.g1, inst.g2, inst.tables)));
  SolveOptions junk;
  junk.initial_incumbent = std::vector<double>(model.num_variables(), 1.0);
  CHECK(oracle::close(solve_bb(model, junk).objective, r.objective));
}
