#include "dcflex/model/lp_writer.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "dcflex/core/text.hpp"
#include "dcflex/core/types.hpp"

namespace dcflex::model {
namespace {

void write_terms(std::ostream& out, const LinearModel& m, const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << m.variables().front().name;  // LP format has no empty rows
    return;
  }
  std::size_t on_line = 0;
  for (const auto& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << format_number(std::abs(t.coef)) << ' '
        << m.variables()[static_cast<std::size_t>(t.var)].name;
    if (++on_line % 8 == 0) out << "\n  ";
  }
}

}  // namespace

void write_lp(const LinearModel& m, std::ostream& out) {
  out << "\\ written by dcflex\n";
  out << (m.sense() == Sense::maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<Term> obj;
  for (std::size_t i = 0; i < m.num_variables(); ++i) {
    if (m.variables()[i].objective != 0.0) obj.push_back({static_cast<int>(i), m.variables()[i].objective});
  }
  if (obj.empty() && m.num_variables() > 0) obj.push_back({0, 0.0});
  if (m.num_variables() > 0) write_terms(out, m, obj);
  out << "\nSubject To\n";
  for (const auto& r : m.constraints()) {
    if (m.num_variables() == 0) break;
    auto row = [&](const std::string& name, const char* op, double rhs) {
      out << ' ' << name << ':';
      write_terms(out, m, r.terms);
      out << ' ' << op << ' ' << format_number(rhs) << '\n';
    };
    bool lo = std::isfinite(r.lower), hi = std::isfinite(r.upper);
    if (lo && hi && r.lower == r.upper) row(r.name, "=", r.lower);
    else if (lo && hi) {
      row(r.name + "_lo", ">=", r.lower);
      row(r.name + "_hi", "<=", r.upper);
    } else if (lo) row(r.name, ">=", r.lower);
    else if (hi) row(r.name, "<=", r.upper);
  }
  out << "Bounds\n";
  for (const auto& v : m.variables()) {
    if (v.type == VarType::binary) continue;
    bool lo = std::isfinite(v.lower), hi = std::isfinite(v.upper);
    if (!lo && !hi) out << ' ' << v.name << " free\n";
    else if (lo && hi) out << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << '\n';
    else if (lo) {
      if (v.lower != 0.0) out << ' ' << v.name << " >= " << format_number(v.lower) << '\n';
    } else out << " -inf <= " << v.name << " <= " << format_number(v.upper) << '\n';
  }
  bool any_binary = false;
  for (const auto& v : m.variables()) {
    if (v.type != VarType::binary) continue;
    if (!any_binary) out << "Binaries\n";
    any_binary = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

void write_lp(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_lp(model, out);
}

}  // namespace dcflex::model
