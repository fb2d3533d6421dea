#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ged/bench.hpp"
#include "strings.hpp"

namespace ged {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::f1: return "f1";
    case Method::f2: return "f2";
    case Method::f2u: return "f2u";
    case Method::f1lp: return "f1lp";
    case Method::f2lp: return "f2lp";
    case Method::astar: return "astar";
    case Method::beam: return "beam";
    case Method::bp: return "bp";
    case Method::hed: return "hed";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::f1, Method::f2, Method::f2u, Method::f1lp, Method::f2lp, Method::astar, Method::beam,
                   Method::bp, Method::hed}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool is_lower_bound(Method m) { return m == Method::f1lp || m == Method::f2lp || m == Method::hed; }

bool is_exact(Method m) { return m == Method::f1 || m == Method::f2 || m == Method::f2u || m == Method::astar; }

PairOutcome run_method(Method method, const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m,
                       const MethodOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  PairOutcome out;
  switch (method) {
    case Method::f1:
    case Method::f2:
    case Method::f2u: {
      const GedFormulation f = method == Method::f1  ? GedFormulation::f1
                               : method == Method::f2u ? GedFormulation::f2u
                                                       : GedFormulation::automatic;
      const GedResult r = compute_ged(g1, g2, m, f, opts.solve);
      out.value = r.solve.has_solution() ? r.solve.objective : r.solve.best_bound;
      out.status = std::string(to_string(r.solve.status));
      break;
    }
    case Method::f1lp:
    case Method::f2lp: {
      const SolveResult r = compute_lower_bound_result(
          g1, g2, m, method == Method::f1lp ? LowerBoundKind::f1lp : LowerBoundKind::f2lp, opts.solve);
      out.value = r.status == SolveStatus::optimal ? r.objective : r.best_bound;
      out.status = r.status == SolveStatus::optimal ? "bound" : std::string(to_string(r.status));
      break;
    }
    case Method::astar: {
      const SearchResult r = astar_ged(g1, g2, m, opts.search);
      out.value = r.cost;
      out.status = std::string(to_string(r.status));
      break;
    }
    case Method::beam: {
      const SearchResult r = beam_search(g1, g2, m, opts.beam_width);
      out.value = r.cost;
      out.status = "heuristic";
      break;
    }
    case Method::bp:
      out.value = bp_upper_bound(g1, g2, m).total_cost;
      out.status = "heuristic";
      break;
    case Method::hed:
      out.value = hausdorff_ged(g1, g2, m);
      out.status = "bound";
      break;
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

DistanceMatrix pairwise_matrix(const std::vector<AttributedGraph>& graphs, Method method, const CostModel& m,
                               const MethodOptions& opts, std::size_t workers) {
  const std::size_t n = graphs.size();
  for (const auto& g : graphs) {
    if (g.directed != graphs.front().directed) throw std::invalid_argument("graphs differ in directedness");
  }
  if (n > 0 && method == Method::f2u && graphs.front().directed) {
    throw std::invalid_argument("method f2u needs undirected graphs");
  }
  DistanceMatrix out(std::string(to_string(method)), n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= n * n) return;
      try {
        const PairOutcome r = run_method(method, graphs[cell / n], graphs[cell % n], m, opts);
        out.values[cell] = r.value;
        out.status[cell] = r.status;
        out.seconds[cell] = r.seconds;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n * n;
        return;
      }
    }
  };
  workers = std::max<std::size_t>(1, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

DistanceMatrix reference_matrix(const std::vector<DistanceMatrix>& matrices) {
  const DistanceMatrix* first = nullptr;
  for (const auto& mat : matrices) {
    if (is_lower_bound(parse_method(mat.method))) continue;
    if (first && mat.size != first->size) throw std::invalid_argument("distance matrices differ in size");
    if (!first) first = &mat;
  }
  if (!first) throw std::invalid_argument("reference matrix needs at least one upper-bounding method");
  DistanceMatrix r("reference", first->size);
  std::fill(r.values.begin(), r.values.end(), std::numeric_limits<double>::infinity());
  for (const auto& mat : matrices) {
    if (is_lower_bound(parse_method(mat.method))) continue;
    for (std::size_t c = 0; c < r.values.size(); ++c) {
      if (mat.status[c] == "timeout") continue;  // value is only a bound
      if (mat.values[c] < r.values[c]) {
        r.values[c] = mat.values[c];
        r.status[c] = mat.method;
      }
    }
  }
  return r;
}

Deviation deviation(const DistanceMatrix& m, const DistanceMatrix& r, std::optional<double> epsilon) {
  if (m.size != r.size) throw std::invalid_argument("deviation needs matrices of equal size");
  Deviation d;
  const std::size_t cells = m.values.size();
  d.values.assign(cells, 0.0);
  d.flagged.assign(cells, 0);
  double sum = 0;
  std::size_t counted = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double mv = m.values[c], rv = r.values[c];
    if (rv != 0) {
      d.values[c] = std::abs(mv - rv) / rv;
    } else if (mv != 0) {
      if (epsilon) {
        d.values[c] = mv / *epsilon;
      } else {
        d.flagged[c] = 1;
        ++d.flagged_count;
        continue;
      }
    }
    sum += d.values[c];
    ++counted;
  }
  d.mean = counted ? sum / static_cast<double>(counted) : 0.0;
  return d;
}

double mean_time(const DistanceMatrix& m) {
  if (m.seconds.empty()) return 0;
  double sum = 0;
  for (double s : m.seconds) sum += s;
  return sum / static_cast<double>(m.seconds.size());
}

namespace {

std::vector<double> normalized_mean(const std::vector<std::vector<double>>& per_subset) {
  if (per_subset.empty()) throw std::invalid_argument("scores need at least one subset");
  const std::size_t p = per_subset.front().size();
  std::vector<double> out(p, 0.0);
  for (const auto& row : per_subset) {
    if (row.size() != p) throw std::invalid_argument("subsets list different method counts");
    const double max = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
    if (max <= 0) continue;
    for (std::size_t k = 0; k < p; ++k) out[k] += row[k] / max;
  }
  for (double& v : out) v /= static_cast<double>(per_subset.size());
  return out;
}

}  // namespace

Scores scores(const std::vector<std::vector<double>>& mean_dev, const std::vector<std::vector<double>>& mean_times) {
  return Scores{normalized_mean(mean_dev), normalized_mean(mean_times)};
}

std::vector<std::string> check_sandwich(const std::vector<DistanceMatrix>& matrices, double tol) {
  std::vector<std::string> out;
  if (matrices.empty()) return out;
  const std::size_t n = matrices.front().size;
  auto find = [&](Method m) -> const DistanceMatrix* {
    for (const auto& mat : matrices) {
      if (mat.method == to_string(m)) return &mat;
    }
    return nullptr;
  };
  const DistanceMatrix* hed = find(Method::hed);
  const DistanceMatrix* f1lp = find(Method::f1lp);
  const DistanceMatrix* f2lp = find(Method::f2lp);
  const DistanceMatrix* bp = find(Method::bp);
  const DistanceMatrix* beam = find(Method::beam);

  for (std::size_t c = 0; c < n * n; ++c) {
    std::optional<double> ged;
    std::string ged_from;
    for (const auto& mat : matrices) {
      if (!is_exact(parse_method(mat.method)) || mat.status[c] != "optimal") continue;
      if (!ged) {
        ged = mat.values[c];
        ged_from = mat.method;
      } else if (std::abs(*ged - mat.values[c]) > tol * (1 + std::abs(*ged))) {
        out.push_back("pair " + std::to_string(c / n) + "," + std::to_string(c % n) + ": " + ged_from + "=" +
                      detail::format_double(*ged) + " != " + mat.method + "=" +
                      detail::format_double(mat.values[c]));
      }
    }
    if (!ged) continue;
    std::vector<std::pair<std::string, double>> chain;
    // A relaxation stopped by the time limit only carries a weaker bound.
    for (const auto* lb : {hed, f1lp, f2lp}) {
      if (lb && lb->status[c] == "bound") chain.emplace_back(lb->method, lb->values[c]);
    }
    chain.emplace_back("ged", *ged);
    auto le = [&](const std::string& a, double va, const std::string& b, double vb) {
      if (va <= vb + tol * (1 + std::abs(vb))) return;
      out.push_back("pair " + std::to_string(c / n) + "," + std::to_string(c % n) + ": " + a + "=" +
                    detail::format_double(va) + " > " + b + "=" + detail::format_double(vb));
    };
    for (std::size_t a = 0; a + 1 < chain.size(); ++a) {
      le(chain[a].first, chain[a].second, chain[a + 1].first, chain[a + 1].second);
    }
    if (bp) le("ged", *ged, "bp", bp->values[c]);
    if (beam) le("ged", *ged, "beam", beam->values[c]);
  }
  return out;
}

}  // namespace ged
