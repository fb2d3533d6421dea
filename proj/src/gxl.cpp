#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ged/graph.hpp"
#include "strings.hpp"
#include "xml.hpp"

namespace ged {

namespace {

AttributeValue parse_value(const xml::Element& v) {
  std::string_view text = detail::trim(v.text);
  if (v.name == "float" || v.name == "int") {
    auto d = detail::parse_double(text);
    if (!d) throw GraphError("invalid <" + v.name + "> value '" + std::string(text) + "'", v.line);
    if (v.name == "int" && *d != static_cast<double>(static_cast<long long>(*d))) {
      throw GraphError("invalid <int> value '" + std::string(text) + "'", v.line);
    }
    return *d;
  }
  if (v.name == "string") return v.text;
  if (v.name == "enum" || v.name == "bool") {
    if (text.empty()) throw GraphError("empty <" + v.name + "> value", v.line);
    return Symbol{std::string(text)};
  }
  throw GraphError("unsupported attribute kind <" + v.name + ">", v.line);
}

AttributeMap parse_attrs(const xml::Element& owner) {
  AttributeMap attrs;
  for (const auto& child : owner.children) {
    if (child.name != "attr") continue;
    auto key = child.attribute("name");
    if (!key || key->empty()) throw GraphError("<attr> without name", child.line);
    if (child.children.size() != 1) {
      throw GraphError("<attr name=\"" + std::string(*key) + "\"> must hold exactly one value", child.line);
    }
    if (!attrs.emplace(std::string(*key), parse_value(child.children.front())).second) {
      throw GraphError("duplicate attribute '" + std::string(*key) + "'", child.line);
    }
  }
  return attrs;
}

void write_attrs(std::ostringstream& out, const AttributeMap& attrs, const char* indent) {
  for (const auto& [key, value] : attrs) {
    out << indent << "<attr name=\"" << xml::escape(key) << "\">";
    if (const auto* d = std::get_if<double>(&value)) {
      out << "<float>" << detail::format_double(*d) << "</float>";
    } else if (const auto* s = std::get_if<Symbol>(&value)) {
      out << "<enum>" << xml::escape(s->name) << "</enum>";
    } else {
      out << "<string>" << xml::escape(std::get<std::string>(value)) << "</string>";
    }
    out << "</attr>\n";
  }
}

}  // namespace

AttributedGraph load_gxl(std::string_view content) {
  xml::Element root = xml::parse(content);
  if (root.name != "gxl") throw GraphError("root element must be <gxl>", root.line);

  const xml::Element* graph_el = nullptr;
  for (const auto& child : root.children) {
    if (child.name != "graph") continue;
    if (graph_el) throw GraphError("more than one <graph> element", child.line);
    graph_el = &child;
  }
  if (!graph_el) throw GraphError("no <graph> element", root.line);

  AttributedGraph g;
  g.name = std::string(graph_el->attribute("id").value_or(""));
  auto mode = graph_el->attribute("edgemode").value_or("directed");
  if (mode == "directed" || mode == "defaultdirected") {
    g.directed = true;
  } else if (mode == "undirected" || mode == "defaultundirected") {
    g.directed = false;
  } else {
    throw GraphError("unknown edgemode '" + std::string(mode) + "'", graph_el->line);
  }

  std::unordered_map<std::string, std::size_t> index;
  for (const auto& child : graph_el->children) {
    if (child.name != "node") continue;
    auto id = child.attribute("id");
    if (!id || id->empty()) throw GraphError("<node> without id", child.line);
    if (index.count(std::string(*id))) {
      throw GraphError("duplicate node id '" + std::string(*id) + "'", child.line);
    }
    index.emplace(std::string(*id), g.vertices.size());
    g.vertices.push_back(Vertex{std::string(*id), parse_attrs(child)});
  }

  std::unordered_set<std::string> edge_ids;
  for (const auto& child : graph_el->children) {
    if (child.name != "edge") continue;
    auto from = child.attribute("from");
    auto to = child.attribute("to");
    if (!from || !to) throw GraphError("<edge> requires from and to", child.line);
    auto head = index.find(std::string(*from));
    auto tail = index.find(std::string(*to));
    if (head == index.end() || tail == index.end()) {
      throw GraphError("edge endpoint '" + std::string(head == index.end() ? *from : *to) +
                           "' is not a declared node",
                       child.line);
    }
    std::string id(child.attribute("id").value_or(""));
    if (id.empty()) id = "_e" + std::to_string(g.edges.size());
    if (!edge_ids.insert(id).second) throw GraphError("duplicate edge id '" + id + "'", child.line);
    Edge e{std::move(id), head->second, tail->second, parse_attrs(child)};
    if (!g.directed && e.head > e.tail) std::swap(e.head, e.tail);
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::string save_gxl(const AttributedGraph& g) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<gxl xmlns:xlink=\"http://www.w3.org/1999/xlink\">\n";
  out << "  <graph id=\"" << xml::escape(g.name) << "\" edgeids=\"true\" edgemode=\""
      << (g.directed ? "directed" : "undirected") << "\">\n";
  for (const auto& v : g.vertices) {
    out << "    <node id=\"" << xml::escape(v.id) << "\">\n";
    write_attrs(out, v.attrs, "      ");
    out << "    </node>\n";
  }
  for (const auto& e : g.edges) {
    out << "    <edge id=\"" << xml::escape(e.id) << "\" from=\"" << xml::escape(g.vertices.at(e.head).id)
        << "\" to=\"" << xml::escape(g.vertices.at(e.tail).id) << "\">\n";
    write_attrs(out, e.attrs, "      ");
    out << "    </edge>\n";
  }
  out << "  </graph>\n</gxl>\n";
  return out.str();
}

}  // namespace ged
