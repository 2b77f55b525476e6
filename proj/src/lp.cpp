#include "paretotopo/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace paretotopo {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;
constexpr double kFeasTol = 1e-9;

enum class RunStatus { optimal, unbounded, stalled };

// Dense tableau for min c^T x, T x = b, x >= 0.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& reduced) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = reduced[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) reduced[j] -= f * at(r, j);
      reduced[c] = 0.0;
    }
    basis_[r] = c;
  }

  // reduced[j] = c_j - c_B^T column j; reduced[cols] = -objective value.
  std::vector<double> reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> z(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) z[j] = cost[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * at(r, j);
    }
    return z;
  }

  // Bland's rule for the entering column; ratio ties go to the largest pivot,
  // then the lowest basic index.
  RunStatus run(std::vector<double>& reduced, const std::vector<bool>& allowed, std::size_t max_iter) {
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && reduced[j] < -kCostTol) {
          enter = j;
          break;
        }
      if (enter == cols_) return RunStatus::optimal;
      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double e = at(r, enter);
        if (e <= kPivotTol) continue;
        const double ratio = std::max(at(r, cols_), 0.0) / e;
        if (leave == rows_ || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const double cur = at(leave, enter);
          if (e > cur * (1 + 1e-9) || (e >= cur * (1 - 1e-9) && basis_[r] < basis_[leave])) leave = r;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == rows_) return RunStatus::unbounded;
      pivot(leave, enter, reduced);
    }
    return RunStatus::stalled;
  }

private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

void validate(const StrictFeasibilityProblem& p) {
  const std::size_t r = p.eq_matrix.rows(), v = p.eq_matrix.cols();
  if (r < 1 || v < 1) throw Error(Errc::invalid_argument, "LP needs at least one equality row and one variable");
  if (p.eq_rhs.size() != r) throw Error(Errc::invalid_argument, "LP right-hand side has the wrong length");
  if (p.positive_vars.empty()) throw Error(Errc::invalid_argument, "LP needs at least one positive variable");
  std::set<int> pos;
  for (int i : p.positive_vars) {
    if (i < 0 || static_cast<std::size_t>(i) >= v) throw Error(Errc::invalid_argument, "positive variable out of range");
    if (!pos.insert(i).second) throw Error(Errc::invalid_argument, "positive variable listed twice");
  }
  std::set<int> grouped;
  for (const auto& g : p.groups) {
    if (g.empty()) throw Error(Errc::invalid_argument, "empty normalization group");
    for (int i : g) {
      if (!pos.contains(i)) throw Error(Errc::invalid_argument, "group member is not a positive variable");
      if (!grouped.insert(i).second) throw Error(Errc::invalid_argument, "variable in more than one group");
    }
  }
  if (grouped.size() != pos.size())
    throw Error(Errc::invalid_argument, "every positive variable must belong to a normalization group");
  for (double x : p.eq_matrix.data())
    if (!std::isfinite(x)) throw Error(Errc::invalid_argument, "non-finite LP coefficient");
  for (double x : p.eq_rhs)
    if (!std::isfinite(x)) throw Error(Errc::invalid_argument, "non-finite LP right-hand side");
}

} // namespace

LpResult solve_strict_feasibility(const StrictFeasibilityProblem& p, double eps) {
  validate(p);
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be > 0");
  const std::size_t v = p.eq_matrix.cols();

  // Columns: 0 = t, then one slack s_i per variable (u_i = t + s_i for
  // positive variables, u_j = s_j otherwise).
  std::vector<bool> positive(v, false);
  for (int i : p.positive_vars) positive[static_cast<std::size_t>(i)] = true;

  struct Row {
    std::vector<double> coef; // over 1 + v structural columns
    double rhs;
  };
  std::vector<Row> rows;
  for (std::size_t r = 0; r < p.eq_matrix.rows(); ++r) {
    double scale = std::abs(p.eq_rhs[r]);
    for (double x : p.eq_matrix.row(r)) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) continue; // 0 = 0
    Row row{std::vector<double>(1 + v, 0.0), p.eq_rhs[r] / scale};
    for (std::size_t j = 0; j < v; ++j) {
      const double a = p.eq_matrix(r, j) / scale;
      row.coef[1 + j] = a;
      if (positive[j]) row.coef[0] += a;
    }
    rows.push_back(std::move(row));
  }
  for (const auto& g : p.groups) {
    Row row{std::vector<double>(1 + v, 0.0), 1.0};
    row.coef[0] = static_cast<double>(g.size());
    for (int i : g) row.coef[1 + static_cast<std::size_t>(i)] = 1.0;
    rows.push_back(std::move(row));
  }

  const std::size_t m = rows.size();
  const std::size_t structural = 1 + v;
  const std::size_t cols = structural + m; // plus one artificial per row
  Tableau T(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = rows[r].rhs < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < structural; ++j) T.at(r, j) = sign * rows[r].coef[j];
    T.at(r, structural + r) = 1.0;
    T.rhs(r) = sign * rows[r].rhs;
    T.basis()[r] = structural + r;
  }
  const std::size_t max_iter = 50 * (m + cols) + 100;

  // Phase 1: minimise the artificial sum.
  std::vector<double> cost1(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) cost1[structural + r] = 1.0;
  std::vector<double> z = T.reduced_costs(cost1);
  std::vector<bool> allowed(cols, true);
  if (T.run(z, allowed, max_iter) != RunStatus::optimal)
    return {LpStatus::numerical_failure, 0.0, {}, "phase 1 did not converge"};
  const double infeasibility = -z[cols];
  if (infeasibility > kFeasTol * static_cast<double>(std::max<std::size_t>(m, 1)))
    return {LpStatus::infeasible, 0.0, {}, "equalities have no nonnegative solution"};

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  std::vector<bool> dead_row(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    if (T.basis()[r] < structural) continue;
    std::size_t best = structural;
    double mag = kPivotTol;
    for (std::size_t j = 0; j < structural; ++j)
      if (std::abs(T.at(r, j)) > mag) {
        mag = std::abs(T.at(r, j));
        best = j;
      }
    if (best == structural)
      dead_row[r] = true;
    else
      T.pivot(r, best, z);
  }

  // Phase 2: maximise t on the structural columns only.
  std::vector<double> cost2(cols, 0.0);
  cost2[0] = -1.0;
  for (std::size_t j = structural; j < cols; ++j) allowed[j] = false;
  z = T.reduced_costs(cost2);
  const RunStatus st = T.run(z, allowed, max_iter);
  if (st == RunStatus::unbounded) return {LpStatus::numerical_failure, 0.0, {}, "phase 2 unbounded"};
  if (st != RunStatus::optimal) return {LpStatus::numerical_failure, 0.0, {}, "phase 2 did not converge"};

  std::vector<double> x(structural, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (dead_row[r]) continue;
    const std::size_t b = T.basis()[r];
    if (b < structural) x[b] = T.rhs(r);
  }
  const double t = std::max(x[0], 0.0);
  std::vector<double> u(v, 0.0);
  for (std::size_t j = 0; j < v; ++j) u[j] = std::max(x[1 + j], 0.0) + (positive[j] ? t : 0.0);

  LpResult res;
  res.t = t;
  if (t > eps) {
    res.status = LpStatus::feasible;
    res.witness = std::move(u);
  } else {
    res.status = LpStatus::infeasible;
    res.message = "strict positivity not attainable (t* <= eps)";
  }
  return res;
}

ConstraintCheck check_constraints(const StrictFeasibilityProblem& p, const std::vector<double>& u) {
  ConstraintCheck c;
  for (std::size_t r = 0; r < p.eq_matrix.rows(); ++r) {
    double s = -p.eq_rhs[r];
    for (std::size_t j = 0; j < p.eq_matrix.cols(); ++j) s += p.eq_matrix(r, j) * u[j];
    c.eq_residual = std::max(c.eq_residual, std::abs(s));
  }
  for (const auto& g : p.groups) {
    double s = 0.0;
    for (int i : g) s += u[static_cast<std::size_t>(i)];
    c.group_residual = std::max(c.group_residual, std::abs(s - 1.0));
  }
  c.min_positive = std::numeric_limits<double>::infinity();
  for (int i : p.positive_vars) c.min_positive = std::min(c.min_positive, u[static_cast<std::size_t>(i)]);
  return c;
}

} // namespace paretotopo
