#include <sstream>
#include <unordered_map>

#include "ged/graph.hpp"
#include "strings.hpp"

namespace ged {

namespace {

// Splits a line into whitespace-separated tokens; double quotes group text and
// are kept on the token so values can be told apart from symbols.
std::vector<std::string> tokenize(std::string_view line, int lineno) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::string tok;
    bool in_quotes = false;
    while (i < line.size()) {
      char c = line[i];
      if (!in_quotes && (c == ' ' || c == '\t' || c == '\r')) break;
      if (c == '"') in_quotes = !in_quotes;
      if (in_quotes && c == '\\' && i + 1 < line.size()) {
        tok += c;
        tok += line[i + 1];
        i += 2;
        continue;
      }
      tok += c;
      ++i;
    }
    if (in_quotes) throw GraphError("unterminated quoted value", lineno);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

AttributeValue parse_value(std::string_view raw, int lineno) {
  if (!raw.empty() && raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw GraphError("malformed quoted value", lineno);
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) ++i;
      out += raw[i];
    }
    return out;
  }
  if (auto d = detail::parse_double(raw)) return *d;
  if (raw.empty()) throw GraphError("empty attribute value", lineno);
  return Symbol{std::string(raw)};
}

AttributeMap parse_attrs(const std::vector<std::string>& tokens, std::size_t first, int lineno) {
  AttributeMap attrs;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw GraphError("expected key=value, got '" + tokens[i] + "'", lineno);
    }
    std::string key = tokens[i].substr(0, eq);
    if (!attrs.emplace(key, parse_value(std::string_view(tokens[i]).substr(eq + 1), lineno)).second) {
      throw GraphError("duplicate attribute '" + key + "'", lineno);
    }
  }
  return attrs;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_attrs(std::ostringstream& out, const AttributeMap& attrs) {
  for (const auto& [key, value] : attrs) {
    out << ' ' << key << '=';
    if (const auto* d = std::get_if<double>(&value)) {
      out << detail::format_double(*d);
    } else if (const auto* s = std::get_if<Symbol>(&value)) {
      out << s->name;
    } else {
      out << quote(std::get<std::string>(value));
    }
  }
}

}  // namespace

AttributedGraph load_text_graph(std::string_view content) {
  AttributedGraph g;
  bool have_header = false;
  std::unordered_map<std::string, std::size_t> index;
  int lineno = 0;
  for (const auto& raw_line : detail::split(content, '\n')) {
    ++lineno;
    auto tokens = tokenize(raw_line, lineno);
    if (tokens.empty()) continue;
    const std::string& kind = tokens[0];
    if (!have_header) {
      if (kind != "graph" || tokens.size() != 3 || (tokens[2] != "directed" && tokens[2] != "undirected")) {
        throw GraphError("expected 'graph <name> directed|undirected'", lineno);
      }
      g.name = tokens[1];
      g.directed = tokens[2] == "directed";
      have_header = true;
    } else if (kind == "node") {
      if (tokens.size() < 2) throw GraphError("node line needs an id", lineno);
      if (index.count(tokens[1])) throw GraphError("duplicate node id '" + tokens[1] + "'", lineno);
      index.emplace(tokens[1], g.vertices.size());
      g.vertices.push_back(Vertex{tokens[1], parse_attrs(tokens, 2, lineno)});
    } else if (kind == "edge") {
      if (tokens.size() < 4) throw GraphError("edge line needs id, from and to", lineno);
      auto head = index.find(tokens[2]);
      auto tail = index.find(tokens[3]);
      if (head == index.end() || tail == index.end()) {
        throw GraphError("edge endpoint '" + (head == index.end() ? tokens[2] : tokens[3]) +
                             "' is not a declared node",
                         lineno);
      }
      for (const auto& e : g.edges) {
        if (e.id == tokens[1]) throw GraphError("duplicate edge id '" + tokens[1] + "'", lineno);
      }
      Edge e{tokens[1], head->second, tail->second, parse_attrs(tokens, 4, lineno)};
      if (!g.directed && e.head > e.tail) std::swap(e.head, e.tail);
      g.edges.push_back(std::move(e));
    } else {
      throw GraphError("unknown line kind '" + kind + "'", lineno);
    }
  }
  if (!have_header) throw GraphError("missing 'graph' header line");
  return g;
}

std::string save_text_graph(const AttributedGraph& g) {
  std::ostringstream out;
  out << "graph " << (g.name.empty() ? "_" : g.name) << ' ' << (g.directed ? "directed" : "undirected") << '\n';
  for (const auto& v : g.vertices) {
    out << "node " << v.id;
    write_attrs(out, v.attrs);
    out << '\n';
  }
  for (const auto& e : g.edges) {
    out << "edge " << e.id << ' ' << g.vertices.at(e.head).id << ' ' << g.vertices.at(e.tail).id;
    write_attrs(out, e.attrs);
    out << '\n';
  }
  return out.str();
}

}  // namespace ged
