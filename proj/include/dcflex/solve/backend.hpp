#pragma once

#include <string>
#include <vector>

#include "dcflex/model/linear_model.hpp"

namespace dcflex::solve {

enum class SolveStatus { optimal, infeasible, unbounded, limit, error };

std::string to_string(SolveStatus status);

struct SolverOptions {
  double mip_rel_gap = 1e-4;
  double mip_abs_gap = 1e-6;
  double time_limit_s = 600.0;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  int random_seed = 0;
};

struct SolverCapabilities {
  bool lp = false;
  bool milp = false;
};

struct LpResult {
  SolveStatus status = SolveStatus::error;
  bool has_solution = false;  // true for optimal, and for limit with an incumbent
  double objective = 0.0;
  double dual_bound = 0.0;    // MILP only
  double mip_gap = 0.0;       // MILP only
  std::vector<double> values;
  std::string message;
};

/// Solves a LinearModel. Implementations must be safe to call concurrently
/// from several threads on different models.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolverCapabilities capabilities() const = 0;
  virtual LpResult solve(const model::LinearModel& model, const SolverOptions& options) const = 0;
};

/// HiGHS simplex / branch-and-cut, single-threaded per call.
class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }
  SolverCapabilities capabilities() const override { return {true, true}; }
  LpResult solve(const model::LinearModel& model, const SolverOptions& options) const override;
};

}  // namespace dcflex::solve
