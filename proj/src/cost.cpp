#include <algorithm>
#include <cmath>
#include <limits>

#include "ged/cost.hpp"

namespace ged {

double string_edit_distance(std::string_view s1, std::string_view s2) {
  // Single-row DP.
  std::vector<std::size_t> row(s2.size() + 1);
  for (std::size_t j = 0; j <= s2.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= s1.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= s2.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (s1[i - 1] == s2[j - 1] ? 0u : 1u)});
      diag = up;
    }
  }
  return static_cast<double>(row[s2.size()]);
}

std::string_view to_string(CostModelKind kind) {
  switch (kind) {
    case CostModelKind::grec: return "grec";
    case CostModelKind::muta: return "muta";
    case CostModelKind::prot: return "prot";
    case CostModelKind::ilpiso: return "ilpiso";
    case CostModelKind::custom: return "custom";
  }
  return "custom";
}

CostModelKind parse_cost_model_kind(std::string_view name) {
  for (auto k : {CostModelKind::grec, CostModelKind::muta, CostModelKind::prot, CostModelKind::ilpiso,
                 CostModelKind::custom}) {
    if (to_string(k) == name) return k;
  }
  throw CostError("unknown cost model '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::zero: return "zero";
    case Metric::dirac: return "dirac";
    case Metric::l1: return "l1";
    case Metric::euclidean: return "euclidean";
    case Metric::levenshtein: return "levenshtein";
  }
  return "zero";
}

Metric parse_metric(std::string_view name) {
  for (auto m : {Metric::zero, Metric::dirac, Metric::l1, Metric::euclidean, Metric::levenshtein}) {
    if (to_string(m) == name) return m;
  }
  throw CostError("unknown substitution metric '" + std::string(name) + "'");
}

CostParams default_params(CostModelKind kind) {
  CostParams p;
  p.model = kind;
  switch (kind) {
    case CostModelKind::grec:
      p.tau_vertex = 90;
      p.tau_edge = 15;
      p.alpha = 0.5;
      p.vertex_rule = {Metric::euclidean, {"x", "y"}, "type"};
      p.edge_rule = {Metric::dirac, {"type"}, ""};
      break;
    case CostModelKind::prot:
      p.tau_vertex = 11;
      p.tau_edge = 1;
      p.alpha = 0.75;
      p.vertex_rule = {Metric::levenshtein, {"sequence"}, "type"};
      p.edge_rule = {Metric::dirac, {"type"}, ""};
      break;
    case CostModelKind::muta:
      p.tau_vertex = 11;
      p.tau_edge = 1.1;
      p.alpha = 0.25;
      p.vertex_rule = {Metric::dirac, {"chem"}, ""};
      p.edge_rule = {Metric::zero, {}, ""};
      break;
    case CostModelKind::ilpiso:
      p.tau_vertex = 66.6;
      p.tau_edge = 66.6;
      p.alpha = 0.5;
      p.vertex_rule = {Metric::l1, {"label"}, ""};
      p.edge_rule = {Metric::l1, {"label"}, ""};
      break;
    case CostModelKind::custom:
      break;
  }
  return p;
}

namespace {

const AttributeValue& lookup(const AttributeMap& attrs, const std::string& key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) throw CostError("missing attribute '" + key + "'");
  return it->second;
}

double numeric(const AttributeMap& attrs, const std::string& key) {
  const auto& v = lookup(attrs, key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw CostError("attribute '" + key + "' is not numeric");
}

std::string_view textual(const AttributeMap& attrs, const std::string& key) {
  const auto& v = lookup(attrs, key);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* s = std::get_if<Symbol>(&v)) return s->name;
  throw CostError("attribute '" + key + "' is not textual");
}

double substitution(const SubstitutionRule& rule, double tau, const AttributeMap& a, const AttributeMap& b) {
  const double penalty = 2.0 * tau;
  if (!rule.type_key.empty() && lookup(a, rule.type_key) != lookup(b, rule.type_key)) return penalty;
  switch (rule.metric) {
    case Metric::zero:
      return 0.0;
    case Metric::dirac:
      for (const auto& key : rule.keys) {
        if (lookup(a, key) != lookup(b, key)) return penalty;
      }
      return 0.0;
    case Metric::l1: {
      double sum = 0;
      for (const auto& key : rule.keys) sum += std::abs(numeric(a, key) - numeric(b, key));
      return sum;
    }
    case Metric::euclidean: {
      double sum = 0;
      for (const auto& key : rule.keys) {
        double d = numeric(a, key) - numeric(b, key);
        sum += d * d;
      }
      return std::sqrt(sum);
    }
    case Metric::levenshtein:
      if (rule.keys.size() != 1) throw CostError("levenshtein metric needs exactly one key");
      return string_edit_distance(textual(a, rule.keys[0]), textual(b, rule.keys[0]));
  }
  return 0.0;
}

void check_rule(const SubstitutionRule& rule, const char* what) {
  if ((rule.metric == Metric::l1 || rule.metric == Metric::euclidean || rule.metric == Metric::dirac) &&
      rule.keys.empty()) {
    throw CostError(std::string(what) + " substitution metric '" + std::string(to_string(rule.metric)) +
                    "' needs at least one attribute key");
  }
  if (rule.metric == Metric::levenshtein && rule.keys.size() != 1) {
    throw CostError(std::string(what) + " levenshtein metric needs exactly one attribute key");
  }
}

}  // namespace

CostModel make_cost_model(const CostParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw CostError("alpha must lie in [0, 1]");
  if (!(params.tau_vertex >= 0.0) || !(params.tau_edge >= 0.0) || !std::isfinite(params.tau_vertex) ||
      !std::isfinite(params.tau_edge)) {
    throw CostError("tau_vertex and tau_edge must be finite and nonnegative");
  }
  check_rule(params.vertex_rule, "vertex");
  check_rule(params.edge_rule, "edge");

  const double wv = params.alpha;
  const double we = 1.0 - params.alpha;
  const double tv = params.tau_vertex;
  const double te = params.tau_edge;
  const SubstitutionRule vrule = params.vertex_rule;
  const SubstitutionRule erule = params.edge_rule;

  CostModel m;
  m.name = std::string(to_string(params.model));
  m.vertex_sub = [=](const AttributeMap& a, const AttributeMap& b) { return wv * substitution(vrule, tv, a, b); };
  m.vertex_del = [=](const AttributeMap&) { return wv * tv; };
  m.vertex_ins = [=](const AttributeMap&) { return wv * tv; };
  m.edge_sub = [=](const AttributeMap& a, const AttributeMap& b) { return we * substitution(erule, te, a, b); };
  m.edge_del = [=](const AttributeMap&) { return we * te; };
  m.edge_ins = [=](const AttributeMap&) { return we * te; };
  return m;
}

namespace {

constexpr std::size_t kEps = static_cast<std::size_t>(-1);

void check_family(const std::string& prefix, const CostModel::Sub& sub, const CostModel::Unary& del,
                  const CostModel::Unary& ins, const std::vector<AttributeMap>& s, double tol,
                  std::vector<AxiomViolation>& out) {
  const std::size_t n = s.size();
  auto report = [&](const char* rule, std::size_t a, std::size_t b, std::size_t c, double lhs, double rhs) {
    out.push_back({prefix + rule, a, b, c, lhs, rhs});
  };
  auto exceeds = [&](double lhs, double rhs) { return lhs > rhs + tol * std::max(1.0, std::abs(rhs)); };
  auto differs = [&](double x, double y) { return std::abs(x - y) > tol * std::max(1.0, std::abs(x)); };

  for (std::size_t a = 0; a < n; ++a) {
    const double del_a = del(s[a]);
    const double ins_a = ins(s[a]);
    if (differs(del_a, ins_a)) report("_del_ins_symmetry", a, kEps, a, del_a, ins_a);
    for (std::size_t c = 0; c < n; ++c) {
      const double sub_ac = sub(s[a], s[c]);
      const double sub_ca = sub(s[c], s[a]);
      if (a < c && differs(sub_ac, sub_ca)) report("_sub_symmetry", a, kEps, c, sub_ac, sub_ca);
      // Intermediate epsilon: a -> eps -> c.
      const double via_eps = del_a + ins(s[c]);
      if (exceeds(sub_ac, via_eps)) report("_sub_triangle", a, kEps, c, sub_ac, via_eps);
      for (std::size_t b = 0; b < n; ++b) {
        const double sub_ab = sub(s[a], s[b]);
        const double sub_bc = sub(s[b], s[c]);
        if (exceeds(sub_ac, sub_ab + sub_bc)) report("_sub_triangle", a, b, c, sub_ac, sub_ab + sub_bc);
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      const double via_del = sub(s[a], s[b]) + del(s[b]);
      if (exceeds(del_a, via_del)) report("_del_triangle", a, b, kEps, del_a, via_del);
      const double via_ins = ins(s[b]) + sub(s[b], s[a]);
      if (exceeds(ins_a, via_ins)) report("_ins_triangle", kEps, b, a, ins_a, via_ins);
    }
  }
}

}  // namespace

std::vector<AxiomViolation> check_cost_axioms(const CostModel& m, const std::vector<AttributeMap>& vertex_samples,
                                              const std::vector<AttributeMap>& edge_samples, double tol) {
  std::vector<AxiomViolation> out;
  check_family("vertex", m.vertex_sub, m.vertex_del, m.vertex_ins, vertex_samples, tol, out);
  check_family("edge", m.edge_sub, m.edge_del, m.edge_ins, edge_samples, tol, out);
  return out;
}

CostTables compute_cost_tables(const AttributedGraph& g1, const AttributedGraph& g2, const CostModel& m) {
  CostTables t;
  t.n1 = g1.num_vertices();
  t.n2 = g2.num_vertices();
  t.m1 = g1.num_edges();
  t.m2 = g2.num_edges();
  auto checked = [](double c, const char* what) {
    if (!std::isfinite(c) || c < 0) throw CostError(std::string(what) + " cost is negative or not finite");
    return c;
  };
  t.vertex_sub.resize(t.n1 * t.n2);
  for (std::size_t i = 0; i < t.n1; ++i) {
    for (std::size_t k = 0; k < t.n2; ++k) {
      t.vertex_sub[i * t.n2 + k] = checked(m.vertex_sub(g1.vertices[i].attrs, g2.vertices[k].attrs), "vertex substitution");
    }
  }
  for (const auto& v : g1.vertices) t.vertex_del.push_back(checked(m.vertex_del(v.attrs), "vertex deletion"));
  for (const auto& v : g2.vertices) t.vertex_ins.push_back(checked(m.vertex_ins(v.attrs), "vertex insertion"));
  t.edge_sub.resize(t.m1 * t.m2);
  for (std::size_t a = 0; a < t.m1; ++a) {
    for (std::size_t b = 0; b < t.m2; ++b) {
      t.edge_sub[a * t.m2 + b] = checked(m.edge_sub(g1.edges[a].attrs, g2.edges[b].attrs), "edge substitution");
    }
  }
  for (const auto& e : g1.edges) t.edge_del.push_back(checked(m.edge_del(e.attrs), "edge deletion"));
  for (const auto& e : g2.edges) t.edge_ins.push_back(checked(m.edge_ins(e.attrs), "edge insertion"));
  return t;
}

}  // namespace ged
