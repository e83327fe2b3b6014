#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace dcflex::model {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class VarType { continuous, binary };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  VarType type = VarType::continuous;
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

/// lower <= sum(coef * var) <= upper
struct Constraint {
  std::string name;
  std::vector<Term> terms;
  double lower = -kInf;
  double upper = kInf;
};

/// A named linear (or mixed-binary) program.
class LinearModel {
 public:
  int add_variable(std::string name, double lower, double upper, double objective = 0.0,
                   VarType type = VarType::continuous);
  int add_constraint(std::string name, std::vector<Term> terms, double lower, double upper);
  int add_le(std::string name, std::vector<Term> terms, double rhs) { return add_constraint(std::move(name), std::move(terms), -kInf, rhs); }
  int add_ge(std::string name, std::vector<Term> terms, double rhs) { return add_constraint(std::move(name), std::move(terms), rhs, kInf); }
  int add_eq(std::string name, std::vector<Term> terms, double rhs) { return add_constraint(std::move(name), std::move(terms), rhs, rhs); }

  void set_objective_coef(int var, double coef) { vars_.at(static_cast<std::size_t>(var)).objective = coef; }
  void set_sense(Sense sense) { sense_ = sense; }
  Sense sense() const { return sense_; }

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  std::size_t num_binaries() const;
  bool is_mip() const { return num_binaries() > 0; }

  /// Index of a variable or constraint by name, -1 when absent.
  int variable_index(const std::string& name) const;
  int constraint_index(const std::string& name) const;

  /// Throws ModelError when a term references an undeclared variable, a
  /// coefficient or objective entry is not finite, or bounds are inverted.
  void validate() const;

 private:
  Sense sense_ = Sense::minimize;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::unordered_map<std::string, int> var_names_;
  std::unordered_map<std::string, int> row_names_;
};

}  // namespace dcflex::model
