#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lpstcn {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

struct ModelVariable {
  double lb = 0.0;
  double ub = kLpInfinity;
  double obj = 0.0;
  bool integer = false;
};

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct ModelRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable id, coefficient)
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// Minimization model over bounded variables. Rows reference variables by id.
struct LinearModel {
  std::vector<ModelVariable> vars;
  std::vector<ModelRow> rows;

  int add_variable(double lb, double ub, double obj, bool integer = false) {
    vars.push_back(ModelVariable{lb, ub, obj, integer});
    return static_cast<int>(vars.size()) - 1;
  }
  int add_row(RowSense sense, double rhs, std::vector<std::pair<int, double>> coeffs) {
    rows.push_back(ModelRow{std::move(coeffs), sense, rhs});
    return static_cast<int>(rows.size()) - 1;
  }

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// Throws std::invalid_argument on inconsistent bounds, dangling variable
  /// references or non-finite objective coefficients.
  void check_valid() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus s);

/// Dual sign convention (minimization): duals of >= rows are nonnegative,
/// duals of <= rows are nonpositive, equality rows unrestricted. Reduced
/// costs of nonbasic-at-lower variables are nonnegative at the optimum,
/// nonbasic-at-upper nonpositive, basic zero.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;         // per variable
  std::vector<double> duals;          // per row
  std::vector<double> reduced_costs;  // per variable
  long iterations = 0;
};

/// Two-phase bounded-variable revised simplex. Integrality flags are
/// ignored. Deterministic: identical models yield identical results.
LpResult solve_lp(const LinearModel& model);

/// Gomory mixed-integer cuts separated at the LP optimum: one candidate row
/// per basic integer variable with a fractional value, expressed over the
/// model's variables and globally valid. Returns nothing when the LP is not
/// Optimal or every integer variable is integral.
std::vector<ModelRow> gomory_cuts(const LinearModel& model, int max_cuts);

/// Optimal basis snapshot over structural variables and row slacks,
/// reusable as a warm start for a model with identical shape and modified
/// variable bounds (the branch-and-bound reoptimization pattern).
struct SimplexBasis {
  std::vector<int> basic;           // one variable per row slot
  std::vector<unsigned char> stat;  // per variable, matches the solver's codes
  std::uint64_t generation = 0;     // factorization reuse hint, solver internal
  bool empty() const { return basic.empty() && stat.empty(); }
};

/// solve_lp with an optional warm start. A usable `warm_in` basis enters a
/// dual reoptimization instead of the two-phase cold start; `warm_out`, when
/// non-null, receives the final basis (left empty if unusable). Results are
/// identical to solve_lp up to degenerate alternate optima.
LpResult solve_lp_warm(const LinearModel& model, const SimplexBasis* warm_in,
                       SimplexBasis* warm_out);

struct MipLimits {
  double time_limit_s = kLpInfinity;
  long node_cap = std::numeric_limits<long>::max();
  /// Known valid upper bound on the optimum; prunes but is never reported as
  /// an incumbent. kLpInfinity disables it.
  double upper_cutoff = kLpInfinity;
};

enum class MipStatus { Optimal, Feasible, Infeasible, TimeLimit };
const char* to_string(MipStatus s);

struct MipResult {
  MipStatus status = MipStatus::Infeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;  // per variable, empty when none found
  double objective = kLpInfinity;
  double best_bound = -kLpInfinity;
  double gap = kLpInfinity;  // (objective - best_bound) / max(1, |objective|)
  long nodes_explored = 0;
};

/// Best-bound branch and bound over LP relaxations. Branches on the integer
/// variable farthest from integrality, ties by lowest variable id.
MipResult solve_mip(const LinearModel& model, const MipLimits& limits = {});

/// Writes the model in LP text format for cross-checking with other solvers.
void write_lp_format(const LinearModel& model, std::ostream& os);

}  // namespace lpstcn
