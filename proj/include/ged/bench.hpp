#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ged/baselines.hpp"
#include "ged/cost.hpp"
#include "ged/graph.hpp"
#include "ged/solver.hpp"

namespace ged {

enum class Method { f1, f2, f2u, f1lp, f2lp, astar, beam, bp, hed };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
/// F1LP, F2LP and HED: excluded from the reference matrix.
bool is_lower_bound(Method m);
/// Methods whose "optimal" status certifies the exact distance.
bool is_exact(Method m);

struct MethodOptions {
  SolveOptions solve;
  SearchOptions search;
  std::size_t beam_width = 10;
};

/// One evaluated pair. `status` is the solver or search status name, "bound"
/// for lower bounds, "heuristic" for BP and beam search.
struct PairOutcome {
  double value = 0;
  std::string status;
  double seconds = 0;
};

/// Wall time covers cost evaluation, model build and solve. Throws
/// std::invalid_argument for a method that does not fit the graphs.
PairOutcome run_method(Method method, const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                       const MethodOptions& opts);

struct DistanceMatrix {
  std::string method;
  std::size_t size = 0;
  std::vector<double> values;  // row-major
  std::vector<std::string> status;
  std::vector<double> seconds;

  DistanceMatrix() = default;
  DistanceMatrix(std::string method_name, std::size_t m)
      : method(std::move(method_name)), size(m), values(m * m, 0.0), status(m * m), seconds(m * m, 0.0) {}

  double operator()(std::size_t i, std::size_t j) const { return values[i * size + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * size + j]; }
};

/// All m*m ordered pairs, evaluated by `workers` threads. Results do not
/// depend on the worker count.
DistanceMatrix pairwise_matrix(const std::vector<AttributedGraph>& graphs, Method method, const CostModel& m,
                               const MethodOptions& opts, std::size_t workers = 1);

/// Entrywise minimum over the non-lower-bound matrices. Throws
/// std::invalid_argument when none is left or the sizes differ.
DistanceMatrix reference_matrix(const std::vector<DistanceMatrix>& matrices);

struct Deviation {
  std::vector<double> values;  // |M - R| / R, 0 where M = R = 0
  std::vector<char> flagged;   // R = 0 < M without epsilon: excluded from the mean
  double mean = 0;
  std::size_t flagged_count = 0;
};

/// With `epsilon` set, R = 0 < M cells count as M / epsilon instead of being
/// flagged.
Deviation deviation(const DistanceMatrix& m, const DistanceMatrix& r, std::optional<double> epsilon = std::nullopt);

/// Mean of the nonnegative entries of `seconds`.
double mean_time(const DistanceMatrix& m);

struct Scores {
  std::vector<double> deviation;
  std::vector<double> speed;
};

/// `mean_dev[s][p]` and `mean_time[s][p]` for subset s and method p. Each
/// score is the mean over subsets of value / subset maximum; a subset whose
/// maximum is 0 contributes 0.
Scores scores(const std::vector<std::vector<double>>& mean_dev, const std::vector<std::vector<double>>& mean_times);

/// Ordering violations of HED <= F1LP <= F2LP <= GED <= min(BP, BS) on
/// the pairs some exact method solved to optimality, as readable lines.
std::vector<std::string> check_sandwich(const std::vector<DistanceMatrix>& matrices, double tol = 1e-6);

struct SyntheticSpec {
  std::string kind = "grec";  // grec | random
  std::size_t graphs_per_size = 3;
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 6;
  double edge_probability = 0.3;
  bool directed = false;  // random kind only
  std::uint64_t seed = 1;
};

/// Deterministic synthetic dataset. GREC-like graphs carry x, y and a vertex
/// type, edges carry a type, matching the grec cost model's attribute keys.
std::vector<AttributedGraph> synthesize_dataset(const SyntheticSpec& spec);

struct BenchConfig {
  std::vector<std::string> graph_files;         // explicit files, or
  std::string dataset_dir;                      // every .gxl/.txt file, sorted by name, or
  std::optional<SyntheticSpec> synthetic;       // generated graphs
  CostParams cost = default_params(CostModelKind::grec);
  std::vector<Method> methods;
  double time_limit = 10;
  std::size_t beam_width = 10;
  std::size_t astar_memory_limit = std::size_t{1} << 30;
  std::size_t max_vertices = 0;                 // 0: no filter
  bool group_by_vertex_count = true;            // false: one subset "all"
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::optional<double> deviation_epsilon;
};

/// Parses the JSON config; relative paths resolve against `base_dir`.
/// Throws std::invalid_argument on an invalid config.
BenchConfig parse_bench_config(std::string_view json_text, const std::string& base_dir = ".");
BenchConfig load_bench_config(const std::string& path);

struct SubsetReport {
  std::string name;
  std::vector<std::size_t> graphs;  // indices into the loaded dataset
  std::vector<DistanceMatrix> matrices;  // one per method, config order
  DistanceMatrix reference;
  std::vector<Deviation> deviations;
  std::vector<double> mean_times;
};

struct MetricsReport {
  std::vector<Method> methods;
  std::vector<std::string> graph_names;
  std::vector<SubsetReport> subsets;
  Scores scores;
  std::vector<std::string> sandwich_violations;
};

/// Runs every method on every within-subset pair. With `out_dir` non-empty,
/// writes the CSV artifacts, report.txt and manifest.json there.
MetricsReport run_benchmark(const BenchConfig& config, const std::string& out_dir = "");

}  // namespace ged
