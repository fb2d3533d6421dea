#include <random>
#include <stdexcept>

#include "ged/bench.hpp"

namespace ged {

namespace {

// Raw engine output only, so datasets do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

const char* const kVertexTypes[] = {"corner", "endpoint", "intersection", "circle"};
const char* const kEdgeTypes[] = {"line", "arc"};

AttributedGraph grec_like(Rng& rng, std::size_t n, double p, const std::string& name) {
  AttributedGraph g;
  g.name = name;
  g.directed = false;
  for (std::size_t v = 0; v < n; ++v) {
    AttributeMap attrs;
    attrs["x"] = static_cast<double>(rng.below(200));
    attrs["y"] = static_cast<double>(rng.below(200));
    attrs["type"] = Symbol{kVertexTypes[rng.below(4)]};
    g.add_vertex("n" + std::to_string(v), std::move(attrs));
  }
  std::size_t edge = 0;
  auto add = [&](std::size_t a, std::size_t b) {
    AttributeMap attrs;
    attrs["type"] = Symbol{kEdgeTypes[rng.below(2)]};
    g.add_edge("e" + std::to_string(edge++), a, b, std::move(attrs));
  };
  // A random spanning tree keeps the drawing connected, then extra strokes.
  for (std::size_t v = 1; v < n; ++v) add(rng.below(v), v);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 2; b < n; ++b) {
      if (rng.uniform() < p) add(a, b);
    }
  }
  return g;
}

AttributedGraph random_labeled(Rng& rng, std::size_t n, double p, bool directed, const std::string& name) {
  AttributedGraph g;
  g.name = name;
  g.directed = directed;
  for (std::size_t v = 0; v < n; ++v) {
    g.add_vertex("n" + std::to_string(v), {{"label", static_cast<double>(rng.below(10))}});
  }
  std::size_t edge = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = directed ? 0 : a + 1; b < n; ++b) {
      if (a == b || rng.uniform() >= p) continue;
      g.add_edge("e" + std::to_string(edge++), a, b, {{"label", static_cast<double>(rng.below(10))}});
    }
  }
  return g;
}

}  // namespace

std::vector<AttributedGraph> synthesize_dataset(const SyntheticSpec& spec) {
  if (spec.kind != "grec" && spec.kind != "random") {
    throw std::invalid_argument("unknown synthetic kind '" + spec.kind + "'");
  }
  if (spec.min_vertices > spec.max_vertices) throw std::invalid_argument("min_vertices exceeds max_vertices");
  if (!(spec.edge_probability >= 0 && spec.edge_probability <= 1)) {
    throw std::invalid_argument("edge_probability must lie in [0,1]");
  }
  Rng rng(spec.seed);
  std::vector<AttributedGraph> out;
  for (std::size_t n = spec.min_vertices; n <= spec.max_vertices; ++n) {
    for (std::size_t c = 0; c < spec.graphs_per_size; ++c) {
      const std::string name = spec.kind + "_" + std::to_string(n) + "_" + std::to_string(c);
      out.push_back(spec.kind == "grec" ? grec_like(rng, n, spec.edge_probability, name)
                                        : random_labeled(rng, n, spec.edge_probability, spec.directed, name));
    }
  }
  return out;
}

}  // namespace ged
