#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpstcn/generator.hpp"
#include "lpstcn/solver.hpp"

namespace lpstcn {

/// One row of the benchmark CSV. Rerunning with the same seed and config
/// reproduces every field except the timings.
struct RunRecord {
  std::string instance;
  std::uint64_t seed = 0;
  int arc_limit = 3;
  bool use_cuts = true;
  bool use_bounds = true;
  bool use_enumeration = true;
  double time_limit_s = 0.0;
  std::string status;
  double objective = 0.0;
  double lb = 0.0;
  double ub = 0.0;
  double gap = 0.0;
  double first_layer_cost = 0.0;
  double outsourcing_cost = 0.0;
  long cg_iterations = 0;
  long columns_generated = 0;
  long columns_enumerated = 0;
  long nodes_explored = 0;
  double step1_s = 0.0, step2_s = 0.0, step3_s = 0.0, step4_s = 0.0, step5_s = 0.0;
  double wall_s = 0.0;
};

RunRecord make_run_record(const std::string& instance_id, std::uint64_t seed,
                          const SolveConfig& config, const Instance& inst,
                          const Solution& solution);

std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& record);

/// Formats a double at full round-trip precision, locale independent.
std::string csv_number(double v);

// ---------------------------------------------------------------------------
// Theta sweep: one solve per threshold over a shared geometry.

struct SweepRow {
  double theta = 0.0;
  std::string status;  // solver status, or an error description
  double objective = 0.0;
  double first_layer_cost = 0.0;
  double outsourcing_cost = 0.0;
};

/// Partitions the seeded geometry at each theta, assembles the instance and
/// solves it. A failing theta produces an error row; the sweep continues.
std::vector<SweepRow> sweep_theta(const SeededGeometry& geom, const GenParams& params,
                                  const std::vector<double>& thetas,
                                  const SolveConfig& config);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace lpstcn
