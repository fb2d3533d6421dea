#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ged/assignment.hpp"
#include "ged/blp.hpp"
#include "ged/cost.hpp"
#include "ged/graph.hpp"

namespace oracle {

struct RandomGraphSpec {
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 6;
  double edge_probability = 0.4;
  bool directed = false;
  bool loops = false;
  bool parallel = false;
  int labels = 3;  // vertex and edge "label" values drawn from 0..labels-1
};

ged::AttributedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec, const std::string& prefix);

/// Random GREC-like undirected graph (x, y, type; edge type).
ged::AttributedGraph random_grec_graph(std::mt19937_64& rng, std::size_t n, double p);

/// Independent random costs for every elementary operation of a pair, with a
/// CostModel that reads them back through a per-element "uid" attribute.
/// Graphs passed in are copied with the uid attributes added.
struct RandomCostInstance {
  ged::AttributedGraph g1, g2;
  ged::CostTables tables;
  ged::CostModel model;
};

RandomCostInstance with_random_costs(std::mt19937_64& rng, ged::AttributedGraph g1, ged::AttributedGraph g2,
                                     double max_cost = 10.0);

/// Exhaustive GED: every injective partial vertex map, every topology-consistent
/// injective edge map. Depth-first with pruning on nonnegative costs.
double brute_force_ged(const ged::AttributedGraph& g1, const ged::AttributedGraph& g2,
                       const ged::CostTables& costs);

/// Dense two-phase tableau simplex on min c.x, rows, 0 <= x <= 1, with the unit
/// bounds as explicit rows.
struct TableauResult {
  bool feasible = false;
  double objective = 0;
  std::vector<double> x;
};
TableauResult tableau_lp(const ged::BlpModel& model);

/// Minimum over all n! permutations.
double brute_force_assignment(const ged::DenseMatrix& m);

/// Plain recursion over the last characters, taking a free match when they agree.
int recursive_levenshtein(const std::string& a, const std::string& b);

bool close(double a, double b, double rel = 1e-6, double abs = 1e-9);

}  // namespace oracle
