#include "dcflex/model/linear_model.hpp"

#include <algorithm>
#include <cmath>

#include "dcflex/model/schedule_model.hpp"

namespace dcflex::model {

int LinearModel::add_variable(std::string name, double lower, double upper, double objective, VarType type) {
  int index = static_cast<int>(vars_.size());
  if (!var_names_.emplace(name, index).second) throw ModelError("duplicate variable " + name);
  vars_.push_back(Variable{std::move(name), lower, upper, objective, type});
  return index;
}

int LinearModel::add_constraint(std::string name, std::vector<Term> terms, double lower, double upper) {
  int index = static_cast<int>(rows_.size());
  if (!row_names_.emplace(name, index).second) throw ModelError("duplicate constraint " + name);
  rows_.push_back(Constraint{std::move(name), std::move(terms), lower, upper});
  return index;
}

std::size_t LinearModel::num_binaries() const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.type == VarType::binary; }));
}

int LinearModel::variable_index(const std::string& name) const {
  auto it = var_names_.find(name);
  return it == var_names_.end() ? -1 : it->second;
}

int LinearModel::constraint_index(const std::string& name) const {
  auto it = row_names_.find(name);
  return it == row_names_.end() ? -1 : it->second;
}

void LinearModel::validate() const {
  for (const auto& v : vars_) {
    if (!std::isfinite(v.objective)) throw ModelError("non-finite objective coefficient on " + v.name);
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ModelError("invalid bounds on " + v.name);
    }
  }
  const int n = static_cast<int>(vars_.size());
  for (const auto& r : rows_) {
    if (std::isnan(r.lower) || std::isnan(r.upper) || r.lower > r.upper) {
      throw ModelError("invalid bounds on constraint " + r.name);
    }
    for (const auto& t : r.terms) {
      if (t.var < 0 || t.var >= n) throw ModelError("constraint " + r.name + " references an undeclared variable");
      if (!std::isfinite(t.coef)) throw ModelError("non-finite coefficient in " + r.name);
    }
  }
}

}  // namespace dcflex::model
