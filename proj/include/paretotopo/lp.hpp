#pragma once

#include <string>
#include <vector>

#include "paretotopo/pointset.hpp"

namespace paretotopo {

/// A u = rhs, sum_{i in G} u_i = 1 for every group G, u_i > 0 for the
/// positive variables. Variables outside positive_vars are taken as >= 0.
struct StrictFeasibilityProblem {
  Matrix eq_matrix;                     ///< r x v
  std::vector<double> eq_rhs;           ///< r
  std::vector<int> positive_vars;
  std::vector<std::vector<int>> groups; ///< partition of positive_vars
};

enum class LpStatus { feasible, infeasible, numerical_failure };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double t = 0.0;              ///< optimal min_{i positive} u_i (0 when the system has no u >= 0 solution)
  std::vector<double> witness; ///< u at the optimum (feasible only)
  std::string message;
};

inline constexpr double kDefaultStrictEps = 1e-9;

/// Maximises t subject to the constraints above and u_i >= t on positive
/// variables (two-phase dense simplex). Feasible iff t* > eps.
LpResult solve_strict_feasibility(const StrictFeasibilityProblem& problem, double eps = kDefaultStrictEps);

/// Largest violation of the problem's constraints by u (equalities, group
/// sums) together with min u over positive variables.
struct ConstraintCheck {
  double eq_residual = 0.0;
  double group_residual = 0.0;
  double min_positive = 0.0;
};
ConstraintCheck check_constraints(const StrictFeasibilityProblem& problem, const std::vector<double>& u);

} // namespace paretotopo
