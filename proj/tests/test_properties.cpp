#include <doctest.h>

#include <random>

#include "ged/baselines.hpp"
#include "ged/solver.hpp"
#include "oracles.hpp"

using namespace ged;

namespace {

const CostModel& unit_model() {
  static const CostModel m = [] {
    CostParams p;
    p.tau_vertex = 2;
    p.tau_edge = 2;
    p.alpha = 0.5;
    return make_cost_model(p);
  }();
  return m;
}

double lp_value(const BlpModel& m) {
  const auto r = solve_lp(relax(m));
  REQUIRE(r.status == SolveStatus::optimal);
  return r.objective;
}

double bb_value(const BlpModel& m) {
  const auto r = solve_bb(m);
  REQUIRE(r.status == SolveStatus::optimal);
  return r.objective;
}

// Excess of y summed over a source edge, or over a target edge, above 1.
double implied_violation(const BlpModel& m, const std::vector<double>& x) {
  const auto& l = *m.layout();
  double worst = 0;
  for (std::size_t a = 0; a < l.m1; ++a) {
    double s = 0;
    for (std::size_t b = 0; b < l.m2; ++b) s += x[l.y(a, b)];
    worst = std::max(worst, s - 1);
  }
  for (std::size_t b = 0; b < l.m2; ++b) {
    double s = 0;
    for (std::size_t a = 0; a < l.m1; ++a) s += x[l.y(a, b)];
    worst = std::max(worst, s - 1);
  }
  return worst;
}

}  // namespace

// The pairwise F1 topology rows are not implied by the aggregated F2 rows over
// fractional points: with four G1 edges on two heads and two tails, F2LP can
// spread one G2 edge over all of them.
TEST_CASE("relaxations: F1LP can exceed F2LP (directed)") {
  AttributedGraph g1, g2;
  g1.directed = g2.directed = true;
  for (const char* v : {"i1", "i2", "j1", "j2"}) g1.add_vertex(v);
  g1.add_edge("i1j1", "i1", "j1");
  g1.add_edge("i1j2", "i1", "j2");
  g1.add_edge("i2j1", "i2", "j1");
  g1.add_edge("i2j2", "i2", "j2");
  g2.add_vertex("k");
  g2.add_vertex("l");
  g2.add_edge("kl", "k", "l");
  const auto t = compute_cost_tables(g1, g2, unit_model());
  const double f1lp = lp_value(build_f1(g1, g2, t));
  const double f2lp = lp_value(build_f2(g1, g2, t));
  const double ged = bb_value(build_f2(g1, g2, t));
  CHECK(f1lp == doctest::Approx(5.0));
  CHECK(f2lp == doctest::Approx(3.0));
  CHECK(ged == doctest::Approx(5.0));
  CHECK(oracle::brute_force_ged(g1, g2, t) == doctest::Approx(5.0));
}

TEST_CASE("relaxations: F1LP can exceed F2LP (undirected)") {
  AttributedGraph tri, k2;
  for (const char* v : {"a", "b", "c"}) tri.add_vertex(v);
  tri.add_edge("ab", "a", "b");
  tri.add_edge("bc", "b", "c");
  tri.add_edge("ac", "a", "c");
  k2.add_vertex("u");
  k2.add_vertex("v");
  k2.add_edge("uv", "u", "v");
  const auto t = compute_cost_tables(tri, k2, unit_model());
  const double f1lp = lp_value(build_f1(tri, k2, t));
  const double f2lp = lp_value(build_f2u(tri, k2, t));
  CHECK(f1lp > f2lp + 0.1);
  MESSAGE("triangle vs K2: F1LP " << f1lp << ", F2uLP " << f2lp);
  CHECK(bb_value(build_f2u(tri, k2, t)) == doctest::Approx(3.0));
}

TEST_CASE("formulations agree on optima and F2 optima satisfy the implied constraints") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 60; ++trial) {
    oracle::RandomGraphSpec spec;
    spec.directed = trial % 2 == 0;
    spec.max_vertices = 5;
    const auto inst =
        oracle::with_random_costs(rng, oracle::random_graph(rng, spec, "a"), oracle::random_graph(rng, spec, "b"));
    const auto f1 = build_f1(inst.g1, inst.g2, inst.tables);
    const auto f2 = spec.directed ? build_f2(inst.g1, inst.g2, inst.tables) : build_f2u(inst.g1, inst.g2, inst.tables);
    const auto r1 = solve_bb(f1);
    const auto r2 = solve_bb(f2);
    REQUIRE(r2.status == SolveStatus::optimal);
    CHECK(oracle::close(r1.objective, r2.objective));
    CHECK(implied_violation(f2, r2.values) <= 0);
    if (spec.directed) {
      const auto alt = build_f2_alt(inst.g1, inst.g2, inst.tables);
      const auto ra = solve_bb(alt);
      CHECK(oracle::close(ra.objective, r2.objective));
      CHECK(implied_violation(alt, ra.values) <= 0);
    }
    const auto path = decode_solution(f2, inst.g1, inst.g2, inst.tables, r2.values);
    CHECK(check_edit_path(inst.g1, inst.g2, path).empty());
  }
}

TEST_CASE("symmetric cost models give symmetric distances") {
  std::mt19937_64 rng(113);
  const auto grec = make_cost_model(default_params(CostModelKind::grec));
  for (int trial = 0; trial < 30; ++trial) {
    const auto g1 = oracle::random_grec_graph(rng, 2 + rng() % 4, 0.4);
    const auto g2 = oracle::random_grec_graph(rng, 2 + rng() % 4, 0.4);
    const double d12 = compute_ged(g1, g2, grec).solve.objective;
    const double d21 = compute_ged(g2, g1, grec).solve.objective;
    CHECK(oracle::close(d12, d21));
    CHECK(oracle::close(hausdorff_ged(g1, g2, grec), hausdorff_ged(g2, g1, grec)));
  }
  for (int trial = 0; trial < 30; ++trial) {
    oracle::RandomGraphSpec spec;
    spec.directed = true;
    spec.max_vertices = 5;
    const auto g1 = oracle::random_graph(rng, spec, "a"), g2 = oracle::random_graph(rng, spec, "b");
    const auto ilp = make_cost_model(default_params(CostModelKind::ilpiso));
    CHECK(oracle::close(compute_ged(g1, g2, ilp).solve.objective, compute_ged(g2, g1, ilp).solve.objective));
  }
}

TEST_CASE("bound sandwich on random grec pairs") {
  std::mt19937_64 rng(127);
  const auto grec = make_cost_model(default_params(CostModelKind::grec));
  auto leq = [](double a, double b) { return a <= b + 1e-9 + 1e-6 * std::abs(b); };
  for (int trial = 0; trial < 40; ++trial) {
    const auto g1 = oracle::random_grec_graph(rng, 2 + rng() % 4, 0.4);
    const auto g2 = oracle::random_grec_graph(rng, 2 + rng() % 4, 0.4);
    const auto t = compute_cost_tables(g1, g2, grec);
    const double ged = oracle::brute_force_ged(g1, g2, t);
    CHECK(leq(hausdorff_ged(g1, g2, t), compute_lower_bound(g1, g2, grec, LowerBoundKind::f1lp)));
    CHECK(leq(compute_lower_bound(g1, g2, grec, LowerBoundKind::f2lp), ged));
    CHECK(leq(ged, bp_upper_bound(g1, g2, t).total_cost));
    CHECK(leq(ged, beam_search(g1, g2, t).cost));
  }
}
