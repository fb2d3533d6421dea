#include <ostream>
#include <sstream>

#include "ged/blp.hpp"
#include "strings.hpp"

namespace ged {

namespace {

void write_terms(std::ostream& out, const BlpModel& model, const std::vector<Term>& terms) {
  bool first = true;
  std::size_t on_line = 0;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    double c = t.coef;
    if (first) {
      if (c < 0) out << "- ";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    if (c != 1) out << detail::format_double(c) << ' ';
    out << model.variables()[t.var].name;
    first = false;
    // LP readers limit line length.
    if (++on_line % 8 == 0) out << "\n   ";
  }
  if (first) out << "0 " << (model.num_variables() > 0 ? model.variables()[0].name : "dummy");
}

}  // namespace

void write_lp(const BlpModel& model, std::ostream& out) {
  out << "\\ generated by ged export-lp\n";
  out << "Minimize\n obj: ";
  const auto& obj = model.objective();
  write_terms(out, model, obj.terms);
  if (obj.constant != 0) {
    out << (obj.constant < 0 ? " - " : " + ") << detail::format_double(obj.constant < 0 ? -obj.constant : obj.constant);
  }
  out << "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    out << ' ' << c.name << ": ";
    write_terms(out, model, c.terms);
    out << (c.sense == Sense::equal ? " = " : " <= ") << detail::format_double(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables()) out << " 0 <= " << v.name << " <= 1\n";
  bool any_binary = false;
  for (const auto& v : model.variables()) {
    if (v.domain != VarDomain::binary) continue;
    if (!any_binary) out << "Binaries\n";
    any_binary = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

std::string to_lp_string(const BlpModel& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

}  // namespace ged
