#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "ged/graph.hpp"
#include "oracles.hpp"

using namespace ged;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int error_line(const std::string& gxl) {
  try {
    load_gxl(gxl);
  } catch (const GraphError& e) {
    return e.line();
  }
  return -1;
}

AttributedGraph random_attributed(std::mt19937_64& rng, bool directed) {
  AttributedGraph g;
  g.name = "r";
  g.directed = directed;
  const std::size_t n = rng() % 7;
  for (std::size_t v = 0; v < n; ++v) {
    AttributeMap a;
    // Raw bit patterns exercise the shortest round-trip formatting.
    double d;
    do {
      const std::uint64_t bits = rng();
      std::memcpy(&d, &bits, sizeof d);
    } while (!std::isfinite(d));
    a["x"] = d;
    a["t"] = std::string("a<b&\"c\" ") + std::to_string(v);
    a["s"] = Symbol{"sym" + std::to_string(rng() % 3)};
    g.add_vertex("v" + std::to_string(v) + "&", a);
  }
  for (std::size_t e = 0; n > 0 && e < 2 * n; ++e) {
    g.add_edge("e" + std::to_string(e), rng() % n, rng() % n, {{"w", static_cast<double>(rng() % 100) / 8}});
  }
  return g;
}

}  // namespace

TEST_CASE("gxl: empty graph keeps edgemode") {
  const auto g = load_gxl(R"(<?xml version="1.0"?><gxl><graph id="g" edgemode="directed"></graph></gxl>)");
  CHECK(g.num_vertices() == 0);
  CHECK(g.num_edges() == 0);
  CHECK(g.directed);
  const auto u = load_gxl(R"(<gxl><graph id="g" edgemode="undirected"/></gxl>)");
  CHECK_FALSE(u.directed);
}

TEST_CASE("gxl: two nodes and one undirected edge") {
  const auto g = load_gxl(R"(<gxl><graph id="g" edgemode="undirected">
    <node id="a"/><node id="b"/><edge from="b" to="a"/></graph></gxl>)");
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  CHECK_FALSE(g.directed);
  CHECK(g.edges[0].head == 0);
  CHECK(g.edges[0].tail == 1);
}

TEST_CASE("gxl: fixture attributes round-trip bit-exactly") {
  const auto g = load_gxl(read(GED_TEST_DATA "/three_nodes.gxl"));
  REQUIRE(g.num_vertices() == 3);
  CHECK(std::get<double>(g.vertices[0].attrs.at("x")) == 0.1);
  CHECK(std::get<double>(g.vertices[1].attrs.at("x")) == 1e-300);
  CHECK(std::get<double>(g.vertices[2].attrs.at("y")) == 7.0);
  CHECK(std::get<std::string>(g.vertices[0].attrs.at("type")) == "corner");
  const auto back = load_gxl(save_gxl(g));
  CHECK(back == g);
  for (std::size_t v = 0; v < 3; ++v) {
    const double a = std::get<double>(g.vertices[v].attrs.at("x"));
    const double b = std::get<double>(back.vertices[v].attrs.at("x"));
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }
}

TEST_CASE("gxl: save emits edgemode and an empty graph element") {
  AttributedGraph g;
  g.name = "d";
  g.directed = true;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge("ab", 0, 1);
  CHECK(save_gxl(g).find("edgemode=\"directed\"") != std::string::npos);
  AttributedGraph empty;
  const auto back = load_gxl(save_gxl(empty));
  CHECK(back.num_vertices() == 0);
  CHECK_FALSE(back.directed);
}

TEST_CASE("gxl: errors carry line numbers") {
  CHECK(error_line("<gxl>\n<graph id=\"g\">\n<node id=\"a\">\n</graph></gxl>") > 0);  // mismatched tag
  CHECK(error_line("<gxl><graph id=\"g\">\n<node id=\"a\"/>\n<edge from=\"a\" to=\"zz\"/></graph></gxl>") == 3);
  CHECK(error_line("<gxl><graph id=\"g\">\n<node id=\"a\"/>\n\n<node id=\"a\"/></graph></gxl>") == 4);
  CHECK(error_line("<gxl><graph id=\"g\"><node id=\"a\"/><node id=\"b\"/>\n<edge id=\"e\" from=\"a\" to=\"b\"/>\n"
                   "<edge id=\"e\" from=\"b\" to=\"a\"/></graph></gxl>") == 3);
  CHECK(error_line("<gxl><graph/><graph/></gxl>") > 0);
  CHECK(error_line("<gxl><graph><node id=\"a\"><attr name=\"x\"><float>1.5x</float></attr></node></graph></gxl>") > 0);
  CHECK(error_line("<gxl><graph><node id=\"a\"><attr name=\"x\"><int>1.5</int></attr></node></graph></gxl>") > 0);
  CHECK(error_line("not xml at all") > 0);
}

TEST_CASE("gxl: value kinds") {
  const auto g = load_gxl(R"(<gxl><graph edgemode="directed"><node id="a">
    <attr name="f"><float>2.5</float></attr><attr name="i"><int>-4</int></attr>
    <attr name="s"><string>A &amp; B</string></attr><attr name="e"><enum>red</enum></attr>
    <attr name="b"><bool>true</bool></attr></node></graph></gxl>)");
  const auto& a = g.vertices[0].attrs;
  CHECK(std::get<double>(a.at("f")) == 2.5);
  CHECK(std::get<double>(a.at("i")) == -4.0);
  CHECK(std::get<std::string>(a.at("s")) == "A & B");
  CHECK(std::get<Symbol>(a.at("e")).name == "red");
  CHECK(std::get<Symbol>(a.at("b")).name == "true");
}

TEST_CASE("gxl: round-trip property on generated graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_attributed(rng, trial % 2 == 0);
    REQUIRE(validate(g).empty());
    const auto back = load_gxl(save_gxl(g));
    CHECK(back == g);
  }
}

TEST_CASE("text format: round-trip and comments") {
  const auto g = load_text_graph("# c\ngraph demo directed\nnode a label=3 kind=x note=\"two words\"\nnode b\n"
                                 "edge e1 a b w=0.5 # trailing\n");
  CHECK(g.directed);
  CHECK(g.num_vertices() == 2);
  CHECK(std::get<double>(g.vertices[0].attrs.at("label")) == 3.0);
  CHECK(std::get<Symbol>(g.vertices[0].attrs.at("kind")).name == "x");
  CHECK(std::get<std::string>(g.vertices[0].attrs.at("note")) == "two words");
  CHECK(load_text_graph(save_text_graph(g)) == g);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_attributed(rng, trial % 2 == 1);
    CHECK(load_text_graph(save_text_graph(r)) == r);
  }
  CHECK_THROWS_AS(load_text_graph("node a\n"), GraphError);
  CHECK_THROWS_AS(load_text_graph("graph g directed\nnode a\nedge e a b\n"), GraphError);
}

TEST_CASE("validate: examples") {
  AttributedGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge("e", 0, 1);
  CHECK(validate(g).empty());

  AttributedGraph dangling = g;
  dangling.edges.push_back(Edge{"f", 0, 7, {}});
  auto v = validate(dangling);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::dangling_endpoint);

  AttributedGraph dup = g;
  dup.edges.push_back(Edge{"e", 1, 0, {}});
  dup.edges.back().head = 0;
  dup.edges.back().tail = 1;
  v = validate(dup);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::duplicate_edge_id);

  AttributedGraph bad = g;
  bad.vertices[0].attrs["x"] = std::numeric_limits<double>::quiet_NaN();
  bad.vertices[1].attrs["s"] = Symbol{""};
  bad.edges[0].head = 1;
  bad.edges[0].tail = 0;
  v = validate(bad);
  CHECK(v.size() == 3);
  CHECK_THROWS_AS(require_valid(bad), GraphError);
}

TEST_CASE("graph: builders enforce invariants") {
  AttributedGraph g;
  g.add_vertex("a");
  CHECK_THROWS_AS(g.add_vertex("a"), GraphError);
  CHECK_THROWS_AS(g.add_edge("e", 0, 3), GraphError);
  g.add_vertex("b");
  g.add_edge("e", "b", "a");
  CHECK(g.edges[0].head == 0);  // undirected: canonical order
  CHECK_THROWS_AS(g.add_edge("e", 0, 1), GraphError);
  CHECK_FALSE(has_parallel_edges(g));
  g.add_edge("f", 0, 1);
  CHECK(has_parallel_edges(g));
}

TEST_CASE("graph: undirected canonicalization property") {
  std::mt19937_64 rng(3);
  oracle::RandomGraphSpec spec;
  spec.loops = true;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(rng, spec, "g");
    for (const auto& e : g.edges) CHECK(e.head <= e.tail);
  }
}

TEST_CASE("graph: incidence lists") {
  AttributedGraph g;
  g.directed = true;
  for (const char* id : {"a", "b", "c"}) g.add_vertex(id);
  g.add_edge("ab", 0, 1);
  g.add_edge("bb", 1, 1);
  g.add_edge("cb", 2, 1);
  const Incidence inc(g);
  CHECK(inc.out_edges(0) == std::vector<std::size_t>{0});
  CHECK(inc.in_edges(1) == std::vector<std::size_t>{0, 1, 2});
  CHECK(inc.out_edges(1) == std::vector<std::size_t>{1});
  CHECK(inc.incident(1) == std::vector<std::size_t>{0, 1, 2});
}
