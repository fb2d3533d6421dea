#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ged/blp.hpp"

namespace ged {

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::f1: return "f1";
    case Formulation::f2: return "f2";
    case Formulation::f2_alt: return "f2_alt";
    case Formulation::f2u: return "f2u";
  }
  return "f2";
}

std::size_t BlpModel::add_variable(std::string name, VarDomain domain, VarRole role) {
  variables_.push_back(Variable{std::move(name), domain, role});
  return variables_.size() - 1;
}

void BlpModel::add_constraint(Constraint c) {
  for (const auto& t : c.terms) {
    if (t.var >= variables_.size()) {
      throw std::out_of_range("constraint '" + c.name + "' references undeclared variable");
    }
  }
  constraints_.push_back(std::move(c));
}

void BlpModel::set_objective(Objective obj) {
  if (!std::isfinite(obj.constant)) throw std::invalid_argument("objective constant must be finite");
  for (const auto& t : obj.terms) {
    if (t.var >= variables_.size()) throw std::out_of_range("objective references undeclared variable");
  }
  objective_ = std::move(obj);
}

bool BlpModel::all_binary() const {
  return std::all_of(variables_.begin(), variables_.end(),
                     [](const Variable& v) { return v.domain == VarDomain::binary; });
}

double BlpModel::evaluate(std::span<const double> values) const {
  double z = objective_.constant;
  for (const auto& t : objective_.terms) z += t.coef * values[t.var];
  return z;
}

double BlpModel::max_violation(std::span<const double> values) const {
  double worst = 0;
  for (double v : values) worst = std::max({worst, -v, v - 1.0});
  for (const auto& c : constraints_) {
    double lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    double viol = c.sense == Sense::equal ? std::abs(lhs - c.rhs) : lhs - c.rhs;
    worst = std::max(worst, viol);
  }
  return worst;
}

BlpModel relax(const BlpModel& model) {
  BlpModel out = model;
  for (auto& v : out.variables_) v.domain = VarDomain::unit_interval;
  return out;
}

}  // namespace ged
