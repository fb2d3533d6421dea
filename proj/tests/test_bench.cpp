#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "ged/bench.hpp"
#include "oracles.hpp"

using namespace ged;
namespace fs = std::filesystem;

namespace {

DistanceMatrix filled(const std::string& method, std::vector<double> values) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(values.size()))));
  DistanceMatrix m(method, n);
  m.values = std::move(values);
  const Method k = parse_method(method);
  std::fill(m.status.begin(), m.status.end(), is_exact(k) ? "optimal" : is_lower_bound(k) ? "bound" : "heuristic");
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ged_test_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("deviation arithmetic") {
  const auto r = filled("f2", {1, 2, 4, 8});
  auto d = deviation(r, r);
  CHECK(d.mean == 0);
  const auto m = filled("bp", {1.2, 2.4, 4.8, 9.6});
  d = deviation(m, r);
  for (double v : d.values) CHECK(v == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d.mean == doctest::Approx(0.2).epsilon(1e-12));

  const auto lb = filled("hed", {0.5, 1, 4, 2});
  d = deviation(lb, r);
  CHECK(d.values[0] == 0.5);
  CHECK(d.values[3] == 0.75);

  const auto zero = filled("f2", {0, 0, 0, 3});
  const auto over = filled("bp", {0, 2, 0, 3});
  d = deviation(over, zero);
  CHECK(d.flagged_count == 1);
  CHECK(d.flagged[1] == 1);
  CHECK(d.mean == 0);
  d = deviation(over, zero, 4.0);
  CHECK(d.flagged_count == 0);
  CHECK(d.values[1] == 0.5);
  CHECK(d.mean == doctest::Approx(0.125));
}

TEST_CASE("score arithmetic") {
  auto s = scores({{1, 2, 4}}, {{1, 2, 4}});
  CHECK(s.deviation == std::vector<double>{0.25, 0.5, 1});
  CHECK(s.speed == std::vector<double>{0.25, 0.5, 1});
  s = scores({{3}}, {{0.7}});
  CHECK(s.deviation[0] == 1);
  CHECK(s.speed[0] == 1);
  s = scores({{0, 2}, {0, 0}}, {{1, 1}, {2, 4}});
  CHECK(s.deviation[0] == 0);
  CHECK(s.deviation[1] == 0.5);
  CHECK(s.speed[0] == 0.75);
  CHECK(s.speed[1] == 1);
  CHECK_THROWS_AS(scores({}, {}), std::invalid_argument);
}

TEST_CASE("reference matrix") {
  const auto f2 = filled("f2", {0, 3, 3, 0});
  const auto bp = filled("bp", {0, 5, 2, 0});
  const auto hed = filled("hed", {0, 1, 1, 0});
  CHECK(reference_matrix({f2}).values == f2.values);
  const auto r = reference_matrix({hed, f2, bp});
  CHECK(r.values == std::vector<double>{0, 3, 2, 0});
  CHECK(r.status[1] == "f2");
  CHECK(r.status[2] == "bp");
  CHECK_THROWS_AS(reference_matrix({hed}), std::invalid_argument);
  CHECK_THROWS_AS(reference_matrix({f2, filled("bp", {1})}), std::invalid_argument);
  auto timed_out = filled("f2", {0, 0.5, 3, 0});
  timed_out.status[1] = "timeout";
  CHECK(reference_matrix({timed_out, bp}).values[1] == 5);
}

TEST_CASE("sandwich check") {
  const auto hed = filled("hed", {0, 1, 1, 0});
  const auto f2 = filled("f2", {0, 3, 3, 0});
  const auto bp = filled("bp", {0, 5, 2, 0});
  const auto v = check_sandwich({hed, f2, bp});
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("pair 1,0") != std::string::npos);
  CHECK(check_sandwich({hed, f2}).empty());

  // An LP stopped early reports an unusable bound and drops out of the chain.
  auto f1lp = filled("f1lp", {0, 2, 2, 0});
  f1lp.values[1] = -std::numeric_limits<double>::infinity();
  f1lp.status[1] = "timeout";
  CHECK(check_sandwich({hed, f1lp, f2}).empty());
  f1lp.values[2] = 0.5;
  REQUIRE(check_sandwich({hed, f1lp, f2}).size() == 1);
}

TEST_CASE("pairwise matrices") {
  std::mt19937_64 rng(107);
  const auto grec = make_cost_model(default_params(CostModelKind::grec));
  MethodOptions opts;
  const auto g = oracle::random_grec_graph(rng, 4, 0.5);
  CHECK(pairwise_matrix({g}, Method::f2, grec, opts).values == std::vector<double>{0});
  const auto same = pairwise_matrix({g, g}, Method::f2, grec, opts);
  for (double v : same.values) CHECK(v == doctest::Approx(0));

  std::vector<AttributedGraph> graphs;
  for (int k = 0; k < 5; ++k) graphs.push_back(oracle::random_grec_graph(rng, 2 + k % 3, 0.5));
  const auto f2 = pairwise_matrix(graphs, Method::f2, grec, opts);
  const auto bp = pairwise_matrix(graphs, Method::bp, grec, opts);
  const auto hed = pairwise_matrix(graphs, Method::hed, grec, opts, 3);
  for (std::size_t c = 0; c < 25; ++c) {
    CHECK(f2.status[c] == "optimal");
    CHECK(hed.values[c] <= f2.values[c] + 1e-9);
    CHECK(f2.values[c] <= bp.values[c] + 1e-9);
  }
  CHECK(pairwise_matrix(graphs, Method::f2, grec, opts, 4).values == f2.values);
  CHECK(check_sandwich({hed, f2, bp}).empty());

  AttributedGraph d;
  d.directed = true;
  CHECK_THROWS_AS(pairwise_matrix({g, d}, Method::bp, grec, opts), std::invalid_argument);
  CHECK_THROWS_AS(pairwise_matrix({d}, Method::f2u, grec, opts), std::invalid_argument);
}

TEST_CASE("bench config parsing") {
  const auto c = parse_bench_config(R"({"synthetic": {"kind": "random", "directed": true}, "methods": ["f2", "bp"],
      "cost": {"model": "ilpiso"}, "subsets": "all", "workers": 2, "seed": 5, "deviation_epsilon": 0.5})");
  REQUIRE(c.synthetic);
  CHECK(c.synthetic->directed);
  CHECK(c.synthetic->seed == 5);
  CHECK(c.cost.model == CostModelKind::ilpiso);
  CHECK_FALSE(c.group_by_vertex_count);
  CHECK(c.deviation_epsilon == 0.5);
  CHECK(c.methods == std::vector<Method>{Method::f2, Method::bp});

  CHECK_THROWS_AS(parse_bench_config("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"methods": ["f2"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"], "methods": ["nope"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"], "methods": ["f2"], "colour": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"], "dataset_dir": "d", "methods": ["f2"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"], "methods": ["f2"], "time_limit": 0})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"graphs": ["a.gxl"], "methods": ["f2"], "cost": "nowhere.json"})"),
                  std::invalid_argument);
  const auto missing = parse_bench_config(R"({"graphs": ["missing.gxl"], "methods": ["f2"]})", "/nonexistent");
  CHECK_THROWS_AS(run_benchmark(missing), std::invalid_argument);
}

TEST_CASE("synthetic datasets are deterministic") {
  SyntheticSpec spec;
  spec.seed = 9;
  const auto a = synthesize_dataset(spec);
  const auto b = synthesize_dataset(spec);
  CHECK(a == b);
  CHECK(a.size() == 12);
  for (const auto& g : a) CHECK(validate(g).empty());
  spec.seed = 10;
  CHECK_FALSE(synthesize_dataset(spec) == a);
}

TEST_CASE("tiny benchmark run") {
  const auto config = load_bench_config(GED_TEST_DATA "/bench_tiny.json");
  const auto dir = scratch("tiny");
  const auto report = run_benchmark(config, dir.string());
  REQUIRE(report.subsets.size() == 1);
  const auto& sub = report.subsets[0];
  CHECK(sub.name == "all");
  CHECK(sub.matrices[0].values == std::vector<double>{0, 1, 1, 0});
  CHECK(sub.deviations[0].mean == 0);
  CHECK(report.sandwich_violations.empty());
  CHECK(report.scores.deviation[0] == 0);
  for (const char* f : {"matrix_all_f2.csv", "matrix_all_bp.csv", "timing_all_f2.csv", "reference_all.csv",
                        "metrics.csv", "scores.csv", "timing_metrics.csv", "speed_scores.csv", "sandwich.csv",
                        "report.txt", "manifest.json"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(dir / "matrix_all_f2.csv") ==
        "i,j,g1,g2,value,status\n0,0,p2.txt,p2.txt,0,optimal\n0,1,p2.txt,p3.txt,1,optimal\n"
        "1,0,p3.txt,p2.txt,1,optimal\n1,1,p3.txt,p3.txt,0,optimal\n");
  CHECK(slurp(dir / "report.txt").find("ordering violations: 0") != std::string::npos);
}

TEST_CASE("benchmark reruns give identical numeric outputs") {
  auto config = parse_bench_config(R"({"synthetic": {"kind": "grec", "graphs_per_size": 2, "min_vertices": 3,
      "max_vertices": 4}, "methods": ["f2", "f2lp", "beam", "bp", "hed"], "seed": 3})");
  const auto a = scratch("det_a"), b = scratch("det_b");
  run_benchmark(config, a.string());
  config.workers = 3;
  run_benchmark(config, b.string());
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("timing", 0) == 0 || name == "speed_scores.csv" || entry.path().extension() != ".csv") continue;
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name);
    ++compared;
  }
  CHECK(compared >= 10);
}
