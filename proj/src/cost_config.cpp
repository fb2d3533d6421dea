#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ged/cost.hpp"

namespace ged {

namespace {

using nlohmann::json;

void apply_rule(const json& j, SubstitutionRule& rule, const char* what) {
  if (!j.is_object()) throw CostError(std::string(what) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "metric") {
      rule.metric = parse_metric(value.get<std::string>());
    } else if (key == "keys") {
      rule.keys = value.get<std::vector<std::string>>();
    } else if (key == "type_key") {
      rule.type_key = value.get<std::string>();
    } else {
      throw CostError(std::string("unknown key '") + key + "' in " + what);
    }
  }
}

}  // namespace

CostParams parse_cost_params(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CostError(std::string("cost config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("model")) throw CostError("cost config needs a \"model\" key");

  try {
    CostParams p = default_params(parse_cost_model_kind(j.at("model").get<std::string>()));
    if (p.model == CostModelKind::custom) {
      for (const char* required : {"tau_vertex", "tau_edge", "alpha"}) {
        if (!j.contains(required)) throw CostError(std::string("custom cost config needs \"") + required + "\"");
      }
    }
    for (const auto& [key, value] : j.items()) {
      if (key == "model") continue;
      if (key == "tau_vertex") p.tau_vertex = value.get<double>();
      else if (key == "tau_edge") p.tau_edge = value.get<double>();
      else if (key == "alpha") p.alpha = value.get<double>();
      else if (key == "vertex_sub") apply_rule(value, p.vertex_rule, "vertex_sub");
      else if (key == "edge_sub") apply_rule(value, p.edge_rule, "edge_sub");
      else throw CostError("unknown cost config key '" + key + "'");
    }
    // Validates ranges and rule arity.
    (void)make_cost_model(p);
    return p;
  } catch (const json::exception& e) {
    throw CostError(std::string("invalid cost config: ") + e.what());
  }
}

std::string cost_params_to_json(const CostParams& p) {
  auto rule = [](const SubstitutionRule& r) {
    json j{{"metric", std::string(to_string(r.metric))}, {"keys", r.keys}};
    if (!r.type_key.empty()) j["type_key"] = r.type_key;
    return j;
  };
  const json j{{"model", std::string(to_string(p.model))}, {"tau_vertex", p.tau_vertex}, {"tau_edge", p.tau_edge},
               {"alpha", p.alpha}, {"vertex_sub", rule(p.vertex_rule)}, {"edge_sub", rule(p.edge_rule)}};
  return j.dump();
}

CostParams load_cost_params(const std::string& path_or_name) {
  if (!std::filesystem::exists(path_or_name)) {
    for (auto k : {CostModelKind::grec, CostModelKind::muta, CostModelKind::prot, CostModelKind::ilpiso}) {
      if (to_string(k) == path_or_name) return default_params(k);
    }
    throw CostError("cost config '" + path_or_name + "' not found");
  }
  std::ifstream in(path_or_name);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_cost_params(buf.str());
}

}  // namespace ged
