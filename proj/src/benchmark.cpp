#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ged/bench.hpp"
#include "strings.hpp"

namespace ged {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string resolve_path(const std::string& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base) / path).string();
}

SyntheticSpec parse_synthetic(const json& j, std::uint64_t default_seed) {
  if (!j.is_object()) throw std::invalid_argument("\"synthetic\" must be an object");
  SyntheticSpec s;
  s.seed = default_seed;
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") s.kind = v.get<std::string>();
    else if (key == "graphs_per_size") s.graphs_per_size = v.get<std::size_t>();
    else if (key == "min_vertices") s.min_vertices = v.get<std::size_t>();
    else if (key == "max_vertices") s.max_vertices = v.get<std::size_t>();
    else if (key == "edge_probability") s.edge_probability = v.get<double>();
    else if (key == "directed") s.directed = v.get<bool>();
    else if (key == "seed") s.seed = v.get<std::uint64_t>();
    else throw std::invalid_argument("unknown key '" + key + "' in \"synthetic\"");
  }
  return s;
}

std::vector<AttributedGraph> load_dataset(const BenchConfig& c, std::vector<std::string>& names) {
  std::vector<AttributedGraph> graphs;
  if (c.synthetic) {
    graphs = synthesize_dataset(*c.synthetic);
    for (const auto& g : graphs) names.push_back(g.name);
    return graphs;
  }
  std::vector<std::string> files = c.graph_files;
  if (!c.dataset_dir.empty()) {
    if (!fs::is_directory(c.dataset_dir)) throw std::invalid_argument("dataset directory '" + c.dataset_dir + "' not found");
    for (const auto& entry : fs::directory_iterator(c.dataset_dir)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".gxl" || ext == ".txt")) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
  }
  for (const auto& f : files) {
    if (!fs::exists(f)) throw std::invalid_argument("dataset file '" + f + "' not found");
    graphs.push_back(load_graph_file(f));
    names.push_back(fs::path(f).filename().string());
  }
  return graphs;
}

std::string csv_value(double v) { return detail::format_double(v); }

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

BenchConfig parse_bench_config(std::string_view json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bench config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("bench config must be a JSON object");
  BenchConfig c;
  try {
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") continue;
      if (key == "graphs") {
        for (const auto& f : v.get<std::vector<std::string>>()) c.graph_files.push_back(resolve_path(base_dir, f));
      } else if (key == "dataset_dir") {
        c.dataset_dir = resolve_path(base_dir, v.get<std::string>());
      } else if (key == "synthetic") {
        c.synthetic = parse_synthetic(v, c.seed);
      } else if (key == "cost") {
        if (v.is_string()) {
          const std::string name = v.get<std::string>();
          const std::string path = resolve_path(base_dir, name);
          c.cost = load_cost_params(fs::exists(path) ? path : name);
        } else {
          c.cost = parse_cost_params(v.dump());
        }
      } else if (key == "methods") {
        for (const auto& m : v.get<std::vector<std::string>>()) c.methods.push_back(parse_method(m));
      } else if (key == "time_limit") {
        c.time_limit = v.get<double>();
      } else if (key == "beam_width") {
        c.beam_width = v.get<std::size_t>();
      } else if (key == "astar_memory_limit") {
        c.astar_memory_limit = v.get<std::size_t>();
      } else if (key == "max_vertices") {
        c.max_vertices = v.get<std::size_t>();
      } else if (key == "subsets") {
        const std::string s = v.get<std::string>();
        if (s != "by_vertex_count" && s != "all") throw std::invalid_argument("\"subsets\" must be by_vertex_count or all");
        c.group_by_vertex_count = s == "by_vertex_count";
      } else if (key == "workers") {
        c.workers = v.get<std::size_t>();
      } else if (key == "deviation_epsilon") {
        if (!v.is_null()) c.deviation_epsilon = v.get<double>();
      } else {
        throw std::invalid_argument("unknown bench config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid bench config: ") + e.what());
  } catch (const CostError& e) {
    throw std::invalid_argument(std::string("invalid cost in bench config: ") + e.what());
  }
  const int sources = !c.graph_files.empty() + !c.dataset_dir.empty() + c.synthetic.has_value();
  if (sources != 1) throw std::invalid_argument("bench config needs exactly one of graphs, dataset_dir, synthetic");
  if (c.methods.empty()) throw std::invalid_argument("bench config needs a non-empty \"methods\" list");
  if (!(c.time_limit > 0)) throw std::invalid_argument("time_limit must be positive");
  if (c.beam_width == 0) throw std::invalid_argument("beam_width must be at least 1");
  if (c.workers == 0) throw std::invalid_argument("workers must be at least 1");
  if (c.deviation_epsilon && !(*c.deviation_epsilon > 0)) throw std::invalid_argument("deviation_epsilon must be positive");
  return c;
}

BenchConfig load_bench_config(const std::string& path) {
  return parse_bench_config(read_file(path), fs::path(path).parent_path().string());
}

MetricsReport run_benchmark(const BenchConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  MetricsReport report;
  report.methods = config.methods;
  std::vector<std::string> names;
  std::vector<AttributedGraph> graphs = load_dataset(config, names);
  if (graphs.empty()) throw std::invalid_argument("dataset is empty");
  for (const auto& g : graphs) require_valid(g);

  const CostModel model = make_cost_model(config.cost);
  MethodOptions opts;
  opts.solve.time_limit = config.time_limit;
  opts.solve.deterministic_seed = config.seed;
  opts.search.time_limit = config.time_limit;
  opts.search.memory_limit = config.astar_memory_limit;
  opts.beam_width = config.beam_width;

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const std::size_t n = graphs[g].num_vertices();
    if (config.max_vertices && n > config.max_vertices) continue;
    groups[config.group_by_vertex_count ? n : 0].push_back(g);
  }
  if (groups.empty()) throw std::invalid_argument("no graph passes the max_vertices filter");
  report.graph_names = names;

  std::vector<std::vector<double>> mean_devs, mean_times;
  for (const auto& [size, members] : groups) {
    SubsetReport sub;
    sub.name = config.group_by_vertex_count ? "n" + std::to_string(size) : "all";
    sub.graphs = members;
    std::vector<AttributedGraph> local;
    for (std::size_t g : members) local.push_back(graphs[g]);
    for (Method m : config.methods) sub.matrices.push_back(pairwise_matrix(local, m, model, opts, config.workers));
    sub.reference = reference_matrix(sub.matrices);
    std::vector<double> devs, times;
    for (const auto& mat : sub.matrices) {
      sub.deviations.push_back(deviation(mat, sub.reference, config.deviation_epsilon));
      devs.push_back(sub.deviations.back().mean);
      times.push_back(mean_time(mat));
    }
    sub.mean_times = times;
    mean_devs.push_back(std::move(devs));
    mean_times.push_back(std::move(times));
    for (auto& v : check_sandwich(sub.matrices)) report.sandwich_violations.push_back(sub.name + " " + v);
    report.subsets.push_back(std::move(sub));
  }
  report.scores = scores(mean_devs, mean_times);

  if (out_dir.empty()) return report;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  for (const auto& sub : report.subsets) {
    const std::size_t n = sub.graphs.size();
    for (const auto& mat : sub.matrices) {
      std::ostringstream values, timing;
      values << "i,j,g1,g2,value,status\n";
      timing << "i,j,seconds\n";
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t c = i * n + j;
          values << i << ',' << j << ',' << names[sub.graphs[i]] << ',' << names[sub.graphs[j]] << ','
                 << csv_value(mat.values[c]) << ',' << mat.status[c] << '\n';
          timing << i << ',' << j << ',' << csv_value(mat.seconds[c]) << '\n';
        }
      }
      write_text(dir / ("matrix_" + sub.name + "_" + mat.method + ".csv"), values.str());
      write_text(dir / ("timing_" + sub.name + "_" + mat.method + ".csv"), timing.str());
    }
    std::ostringstream ref;
    ref << "i,j,value,source\n";
    for (std::size_t c = 0; c < n * n; ++c) {
      ref << c / n << ',' << c % n << ',' << csv_value(sub.reference.values[c]) << ',' << sub.reference.status[c]
          << '\n';
    }
    write_text(dir / ("reference_" + sub.name + ".csv"), ref.str());
  }

  std::ostringstream metrics, timing_metrics, score_csv, speed_csv, sandwich;
  metrics << "subset,method,mean_deviation,flagged_cells\n";
  timing_metrics << "subset,method,mean_time\n";
  for (const auto& sub : report.subsets) {
    for (std::size_t p = 0; p < report.methods.size(); ++p) {
      metrics << sub.name << ',' << to_string(report.methods[p]) << ',' << csv_value(sub.deviations[p].mean) << ','
              << sub.deviations[p].flagged_count << '\n';
      timing_metrics << sub.name << ',' << to_string(report.methods[p]) << ',' << csv_value(sub.mean_times[p])
                     << '\n';
    }
  }
  score_csv << "method,deviation_score\n";
  speed_csv << "method,speed_score\n";
  for (std::size_t p = 0; p < report.methods.size(); ++p) {
    score_csv << to_string(report.methods[p]) << ',' << csv_value(report.scores.deviation[p]) << '\n';
    speed_csv << to_string(report.methods[p]) << ',' << csv_value(report.scores.speed[p]) << '\n';
  }
  sandwich << "violation\n";
  for (const auto& v : report.sandwich_violations) sandwich << v << '\n';
  write_text(dir / "metrics.csv", metrics.str());
  write_text(dir / "scores.csv", score_csv.str());
  write_text(dir / "timing_metrics.csv", timing_metrics.str());
  write_text(dir / "speed_scores.csv", speed_csv.str());
  write_text(dir / "sandwich.csv", sandwich.str());

  std::ostringstream txt;
  txt << std::fixed;
  for (const auto& sub : report.subsets) {
    txt << "subset " << sub.name << " (" << sub.graphs.size() << " graphs)\n";
    txt << "  " << std::left << std::setw(8) << "method" << std::right << std::setw(14) << "mean dev" << std::setw(9)
        << "flagged" << std::setw(14) << "mean time s" << "  statuses\n";
    for (std::size_t p = 0; p < report.methods.size(); ++p) {
      std::map<std::string, std::size_t> statuses;
      for (const auto& s : sub.matrices[p].status) ++statuses[s];
      std::string st;
      for (const auto& [s, k] : statuses) st += (st.empty() ? "" : " ") + s + "=" + std::to_string(k);
      txt << "  " << std::left << std::setw(8) << to_string(report.methods[p]) << std::right << std::setw(14)
          << std::setprecision(6) << sub.deviations[p].mean << std::setw(9) << sub.deviations[p].flagged_count
          << std::setw(14) << std::setprecision(4) << sub.mean_times[p] << "  " << st << '\n';
    }
  }
  txt << "scores\n";
  txt << "  " << std::left << std::setw(8) << "method" << std::right << std::setw(12) << "deviation" << std::setw(12)
      << "speed" << '\n';
  for (std::size_t p = 0; p < report.methods.size(); ++p) {
    txt << "  " << std::left << std::setw(8) << to_string(report.methods[p]) << std::right << std::setw(12)
        << std::setprecision(4) << report.scores.deviation[p] << std::setw(12) << report.scores.speed[p] << '\n';
  }
  txt << "ordering violations: " << report.sandwich_violations.size() << '\n';
  for (const auto& v : report.sandwich_violations) txt << "  " << v << '\n';
  write_text(dir / "report.txt", txt.str());

  json manifest;
  manifest["tool"] = "ged";
  manifest["seed"] = config.seed;
  manifest["workers"] = config.workers;
  manifest["hardware_concurrency"] = std::thread::hardware_concurrency();
  manifest["time_limit"] = config.time_limit;
  manifest["beam_width"] = config.beam_width;
  manifest["astar_memory_limit"] = config.astar_memory_limit;
  manifest["max_vertices"] = config.max_vertices;
  manifest["subsets"] = config.group_by_vertex_count ? "by_vertex_count" : "all";
  manifest["cost"] = json::parse(cost_params_to_json(config.cost));
  std::vector<std::string> methods;
  for (Method m : config.methods) methods.emplace_back(to_string(m));
  manifest["methods"] = methods;
  manifest["graphs"] = names;
  manifest["compiler"] = __VERSION__;
  manifest["cxx_standard"] = __cplusplus;
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  return report;
}

}  // namespace ged
