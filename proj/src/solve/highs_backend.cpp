#include "dcflex/solve/backend.hpp"

#include <utility>
#include <vector>

#include "Highs.h"

namespace dcflex::solve {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::limit: return "limit";
    case SolveStatus::error: return "error";
  }
  return "error";
}

LpResult HighsBackend::solve(const model::LinearModel& m, const SolverOptions& options) const {
  m.validate();
  HighsLp lp;
  lp.num_col_ = static_cast<HighsInt>(m.num_variables());
  lp.num_row_ = static_cast<HighsInt>(m.num_constraints());
  lp.sense_ = m.sense() == model::Sense::maximize ? ObjSense::kMaximize : ObjSense::kMinimize;
  for (const auto& v : m.variables()) {
    lp.col_cost_.push_back(v.objective);
    lp.col_lower_.push_back(v.lower);
    lp.col_upper_.push_back(v.upper);
  }
  if (m.is_mip()) {
    for (const auto& v : m.variables()) {
      lp.integrality_.push_back(v.type == model::VarType::binary ? HighsVarType::kInteger
                                                                 : HighsVarType::kContinuous);
    }
  }
  std::vector<std::vector<std::pair<HighsInt, double>>> columns(m.num_variables());
  HighsInt row = 0;
  for (const auto& r : m.constraints()) {
    lp.row_lower_.push_back(r.lower);
    lp.row_upper_.push_back(r.upper);
    for (const auto& t : r.terms) {
      if (t.coef != 0.0) columns[static_cast<std::size_t>(t.var)].emplace_back(row, t.coef);
    }
    ++row;
  }
  lp.a_matrix_.format_ = MatrixFormat::kColwise;
  lp.a_matrix_.num_col_ = lp.num_col_;
  lp.a_matrix_.num_row_ = lp.num_row_;
  lp.a_matrix_.start_.assign(1, 0);
  for (const auto& col : columns) {
    for (const auto& [r, v] : col) {
      lp.a_matrix_.index_.push_back(r);
      lp.a_matrix_.value_.push_back(v);
    }
    lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
  }

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("random_seed", options.random_seed);
  highs.setOptionValue("mip_rel_gap", options.mip_rel_gap);
  highs.setOptionValue("mip_abs_gap", options.mip_abs_gap);
  highs.setOptionValue("time_limit", options.time_limit_s);
  highs.setOptionValue("primal_feasibility_tolerance", options.feasibility_tol);
  highs.setOptionValue("dual_feasibility_tolerance", options.optimality_tol);
  highs.setOptionValue("mip_feasibility_tolerance", options.feasibility_tol);

  LpResult result;
  if (highs.passModel(std::move(lp)) == HighsStatus::kError) {
    result.message = "HiGHS rejected the model";
    return result;
  }
  HighsStatus run = highs.run();
  HighsModelStatus status = highs.getModelStatus();
  const HighsInfo& info = highs.getInfo();
  result.message = highs.modelStatusToString(status);

  switch (status) {
    case HighsModelStatus::kOptimal:
    case HighsModelStatus::kModelEmpty:
      result.status = SolveStatus::optimal;
      break;
    case HighsModelStatus::kInfeasible:
      result.status = SolveStatus::infeasible;
      break;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      result.status = SolveStatus::unbounded;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kObjectiveBound:
    case HighsModelStatus::kObjectiveTarget:
    case HighsModelStatus::kInterrupt:
      result.status = SolveStatus::limit;
      break;
    default:
      result.status = SolveStatus::error;
      break;
  }
  if (run == HighsStatus::kError && result.status == SolveStatus::optimal) result.status = SolveStatus::error;

  bool feasible_point = info.primal_solution_status == kSolutionStatusFeasible;
  if ((result.status == SolveStatus::optimal || result.status == SolveStatus::limit) && feasible_point) {
    result.has_solution = true;
    result.values = highs.getSolution().col_value;
    result.objective = info.objective_function_value;
    if (m.is_mip()) {
      result.dual_bound = info.mip_dual_bound;
      result.mip_gap = info.mip_gap;
    }
  } else if (result.status == SolveStatus::optimal) {
    result.status = SolveStatus::error;
    result.message += " (no feasible point reported)";
  }
  return result;
}

}  // namespace dcflex::solve
