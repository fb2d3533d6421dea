#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ged/baselines.hpp"
#include "ged/bench.hpp"
#include "ged/blp.hpp"
#include "ged/cost.hpp"
#include "ged/graph.hpp"
#include "ged/solver.hpp"

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json path_json(const ged::AttributedGraph& g1, const ged::AttributedGraph& g2, const ged::EditPath& p) {
  json j;
  j["vertex_substitutions"] = json::array();
  for (auto [i, k] : p.vertex_subs) j["vertex_substitutions"].push_back({g1.vertices[i].id, g2.vertices[k].id});
  j["edge_substitutions"] = json::array();
  for (auto [a, b] : p.edge_subs) j["edge_substitutions"].push_back({g1.edges[a].id, g2.edges[b].id});
  auto ids = [](const auto& items, const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (auto i : idx) out.push_back(items[i].id);
    return out;
  };
  j["deleted_vertices"] = ids(g1.vertices, p.deleted_vertices);
  j["inserted_vertices"] = ids(g2.vertices, p.inserted_vertices);
  j["deleted_edges"] = ids(g1.edges, p.deleted_edges);
  j["inserted_edges"] = ids(g2.edges, p.inserted_edges);
  j["total_cost"] = p.total_cost;
  return j;
}

int run_compute(const std::string& f1, const std::string& f2, const std::string& method_name,
                const std::string& cost, double time_limit, std::size_t beam_width, int verbosity) {
  const auto g1 = ged::load_graph_file(f1);
  const auto g2 = ged::load_graph_file(f2);
  const auto model = ged::make_cost_model(ged::load_cost_params(cost));
  const ged::Method method = ged::parse_method(method_name);
  json out;
  out["method"] = method_name;
  out["g1"] = f1;
  out["g2"] = f2;

  ged::SolveOptions solve;
  solve.time_limit = time_limit;
  solve.verbosity = verbosity;
  switch (method) {
    case ged::Method::f1:
    case ged::Method::f2:
    case ged::Method::f2u: {
      const auto f = method == ged::Method::f1    ? ged::GedFormulation::f1
                     : method == ged::Method::f2u ? ged::GedFormulation::f2u
                                                  : ged::GedFormulation::automatic;
      const auto r = ged::compute_ged(g1, g2, model, f, solve);
      out["formulation"] = std::string(ged::to_string(r.formulation));
      out["status"] = std::string(ged::to_string(r.solve.status));
      out["distance"] = number(r.solve.objective);
      out["best_bound"] = number(r.solve.best_bound);
      out["nodes"] = r.solve.stats.nodes;
      out["lp_iterations"] = r.solve.stats.lp_iterations;
      out["seconds"] = r.solve.stats.wall_time;
      if (r.solve.has_solution()) out["edit_path"] = path_json(g1, g2, r.path);
      break;
    }
    case ged::Method::f1lp:
    case ged::Method::f2lp: {
      const auto r = ged::compute_lower_bound_result(
          g1, g2, model, method == ged::Method::f1lp ? ged::LowerBoundKind::f1lp : ged::LowerBoundKind::f2lp, solve);
      out["status"] = std::string(ged::to_string(r.status));
      out["distance"] = number(r.status == ged::SolveStatus::optimal ? r.objective : r.best_bound);
      out["lp_iterations"] = r.stats.lp_iterations;
      out["seconds"] = r.stats.wall_time;
      break;
    }
    case ged::Method::astar:
    case ged::Method::beam: {
      ged::SearchOptions so;
      so.time_limit = time_limit;
      const auto r = method == ged::Method::astar ? ged::astar_ged(g1, g2, model, so)
                                                  : ged::beam_search(g1, g2, model, beam_width);
      out["status"] = std::string(ged::to_string(r.status));
      out["distance"] = r.cost;
      out["expanded"] = r.expanded;
      out["generated"] = r.generated;
      out["seconds"] = r.wall_time;
      out["edit_path"] = path_json(g1, g2, r.path);
      break;
    }
    case ged::Method::bp: {
      const auto p = ged::bp_upper_bound(g1, g2, model);
      out["status"] = "heuristic";
      out["distance"] = p.total_cost;
      out["edit_path"] = path_json(g1, g2, p);
      break;
    }
    case ged::Method::hed:
      out["status"] = "bound";
      out["distance"] = ged::hausdorff_ged(g1, g2, model);
      break;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_validate(const std::string& file) {
  ged::AttributedGraph g;
  try {
    g = ged::load_graph_file(file);
  } catch (const ged::GraphError& e) {
    json out{{"graph", file}, {"valid", false}, {"violations", json::array({{{"kind", "parse_error"}, {"message", e.what()}}})}};
    std::cout << out.dump(2) << '\n';
    return 1;
  }
  const auto violations = ged::validate(g);
  json out{{"graph", file},
           {"valid", violations.empty()},
           {"directed", g.directed},
           {"vertices", g.num_vertices()},
           {"edges", g.num_edges()},
           {"parallel_edges", ged::has_parallel_edges(g)},
           {"violations", json::array()}};
  for (const auto& v : violations) {
    out["violations"].push_back({{"kind", std::string(ged::to_string(v.kind))}, {"message", v.message}});
  }
  std::cout << out.dump(2) << '\n';
  return violations.empty() ? 0 : 1;
}

int run_export(const std::string& f1, const std::string& f2, const std::string& formulation, const std::string& cost,
               const std::string& out_path, bool relaxed) {
  const auto g1 = ged::load_graph_file(f1);
  const auto g2 = ged::load_graph_file(f2);
  const auto tables = ged::compute_cost_tables(g1, g2, ged::make_cost_model(ged::load_cost_params(cost)));
  ged::Formulation f;
  if (formulation == "f1") f = ged::Formulation::f1;
  else if (formulation == "f2") f = ged::choose_f2_family(g1, g2);
  else if (formulation == "f2_alt") f = ged::Formulation::f2_alt;
  else if (formulation == "f2u") f = ged::Formulation::f2u;
  else throw std::invalid_argument("unknown formulation '" + formulation + "'");
  auto model = ged::build_model(f, g1, g2, tables);
  if (relaxed) model = ged::relax(model);
  if (out_path.empty()) {
    ged::write_lp(model, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    ged::write_lp(model, out);
  }
  return 0;
}

int run_bench(const std::string& config_path, const std::string& out_dir) {
  const auto config = ged::load_bench_config(config_path);
  const auto report = ged::run_benchmark(config, out_dir);
  std::ifstream txt(std::filesystem::path(out_dir) / "report.txt");
  std::cout << txt.rdbuf();
  (void)report;
  return 0;
}

int run_synth(const ged::SyntheticSpec& spec, const std::string& out_dir, const std::string& format) {
  std::filesystem::create_directories(out_dir);
  for (const auto& g : ged::synthesize_dataset(spec)) {
    const bool gxl = format == "gxl";
    std::ofstream out(std::filesystem::path(out_dir) / (g.name + (gxl ? ".gxl" : ".txt")));
    out << (gxl ? ged::save_gxl(g) : ged::save_text_graph(g));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph edit distance: exact BLP formulations, relaxations and baselines"};
  app.require_subcommand(1);

  std::string g1, g2, method = "f2", cost = "grec", formulation = "f2", out, config;
  double time_limit = 300;
  std::size_t beam_width = 10;
  int verbosity = 0;
  bool relaxed = false;

  auto* compute = app.add_subcommand("compute", "distance between two graphs");
  compute->add_option("--g1", g1, "source graph (.gxl or text)")->required();
  compute->add_option("--g2", g2, "target graph")->required();
  compute->add_option("--method", method, "f1, f2, f2u, f1lp, f2lp, astar, beam, bp or hed")
      ->check(CLI::IsMember({"f1", "f2", "f2u", "f1lp", "f2lp", "astar", "beam", "bp", "hed"}));
  compute->add_option("--cost", cost, "cost config file or built-in model name");
  compute->add_option("--time-limit", time_limit, "seconds")->check(CLI::PositiveNumber);
  compute->add_option("--beam-width", beam_width, "beam width q")->check(CLI::PositiveNumber);
  compute->add_option("-v,--verbosity", verbosity, "solver log level on stderr");

  auto* bench = app.add_subcommand("bench", "run a benchmark config");
  bench->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", out, "output directory")->required();

  std::string graph;
  auto* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("--graph", graph, "graph file")->required();

  auto* export_lp = app.add_subcommand("export-lp", "write a model in LP format");
  export_lp->add_option("--g1", g1, "source graph")->required();
  export_lp->add_option("--g2", g2, "target graph")->required();
  export_lp->add_option("--formulation", formulation, "f1, f2, f2_alt or f2u")
      ->check(CLI::IsMember({"f1", "f2", "f2_alt", "f2u"}));
  export_lp->add_option("--cost", cost, "cost config file or built-in model name");
  export_lp->add_option("--out", out, "output file (default stdout)");
  export_lp->add_flag("--relax", relaxed, "write the continuous relaxation");

  ged::SyntheticSpec spec;
  std::string format = "gxl";
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--kind", spec.kind, "grec or random")->check(CLI::IsMember({"grec", "random"}));
  synth->add_option("--per-size", spec.graphs_per_size, "graphs per vertex count");
  synth->add_option("--min-vertices", spec.min_vertices);
  synth->add_option("--max-vertices", spec.max_vertices);
  synth->add_option("--edge-probability", spec.edge_probability);
  synth->add_flag("--directed", spec.directed, "random kind only");
  synth->add_option("--seed", spec.seed);
  synth->add_option("--format", format)->check(CLI::IsMember({"gxl", "text"}));
  synth->add_option("--out", out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) return run_compute(g1, g2, method, cost, time_limit, beam_width, verbosity);
    if (*bench) return run_bench(config, out);
    if (*validate) return run_validate(graph);
    if (*export_lp) return run_export(g1, g2, formulation, cost, out, relaxed);
    if (*synth) return run_synth(spec, out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
