#include "lpstcn/harness.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace lpstcn {

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunRecord make_run_record(const std::string& instance_id, std::uint64_t seed,
                          const SolveConfig& config, const Instance& inst,
                          const Solution& solution) {
  RunRecord r;
  r.instance = instance_id;
  r.seed = seed;
  r.arc_limit = config.arc_limit_override.value_or(inst.arc_limit);
  r.use_cuts = config.use_cuts;
  r.use_bounds = config.use_bounds;
  r.use_enumeration = config.use_enumeration;
  r.time_limit_s = config.time_limit_s;
  r.status = to_string(solution.stats.status);
  r.objective = solution.objective;
  r.lb = solution.stats.lb;
  r.ub = solution.stats.ub;
  r.gap = solution.stats.gap;
  r.first_layer_cost = solution.first_layer_cost;
  r.outsourcing_cost = solution.outsourcing_cost;
  r.cg_iterations = solution.stats.cg_iterations;
  r.columns_generated = solution.stats.columns_generated;
  r.columns_enumerated = solution.stats.columns_enumerated;
  r.nodes_explored = solution.stats.nodes_explored;
  r.step1_s = solution.stats.step_seconds[0];
  r.step2_s = solution.stats.step_seconds[1];
  r.step3_s = solution.stats.step_seconds[2];
  r.step4_s = solution.stats.step_seconds[3];
  r.step5_s = solution.stats.step_seconds[4];
  r.wall_s = solution.stats.wall_seconds;
  return r;
}

std::string run_record_csv_header() {
  return "instance,seed,arc_limit,use_cuts,use_bounds,use_enumeration,"
         "time_limit_s,status,objective,lb,ub,gap,first_layer_cost,"
         "outsourcing_cost,cg_iterations,columns_generated,columns_enumerated,"
         "nodes_explored,step1_s,step2_s,step3_s,step4_s,step5_s,wall_s";
}

std::string run_record_csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.instance << ',' << r.seed << ',' << r.arc_limit << ','
     << (r.use_cuts ? 1 : 0) << ',' << (r.use_bounds ? 1 : 0) << ','
     << (r.use_enumeration ? 1 : 0) << ',' << csv_number(r.time_limit_s) << ','
     << r.status << ',' << csv_number(r.objective) << ',' << csv_number(r.lb) << ','
     << csv_number(r.ub) << ',' << csv_number(r.gap) << ','
     << csv_number(r.first_layer_cost) << ',' << csv_number(r.outsourcing_cost)
     << ',' << r.cg_iterations << ',' << r.columns_generated << ','
     << r.columns_enumerated << ',' << r.nodes_explored << ','
     << csv_number(r.step1_s) << ',' << csv_number(r.step2_s) << ','
     << csv_number(r.step3_s) << ',' << csv_number(r.step4_s) << ','
     << csv_number(r.step5_s) << ',' << csv_number(r.wall_s);
  return os.str();
}

std::vector<SweepRow> sweep_theta(const SeededGeometry& geom, const GenParams& params,
                                  const std::vector<double>& thetas,
                                  const SolveConfig& config) {
  std::vector<SweepRow> rows;
  for (double theta : thetas) {
    SweepRow row;
    row.theta = theta;
    try {
      if (theta < 0.0 || theta >= 1.0) {
        throw std::invalid_argument("theta must be in [0, 1)");
      }
      PartitionOutcome part = partition_layers(geom.od_records(), theta);
      if (!part.ok) throw std::invalid_argument(part.error);
      std::set<std::string> second(part.second_layer.begin(), part.second_layer.end());
      std::vector<bool> in_second(geom.names.size(), false);
      for (std::size_t i = 0; i < geom.names.size(); ++i) {
        in_second[i] = second.count(geom.names[i]) > 0;
      }
      Instance inst = assemble_instance(geom, in_second, params);
      Solution solution = solve(inst, config);
      row.status = to_string(solution.stats.status);
      row.objective = solution.objective;
      row.first_layer_cost = solution.first_layer_cost;
      row.outsourcing_cost = solution.outsourcing_cost;
    } catch (const std::exception& e) {
      row.status = std::string("Error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "theta,status,objective,first_layer_cost,outsourcing_cost\n";
  for (const SweepRow& r : rows) {
    os << csv_number(r.theta) << ',' << r.status << ',' << csv_number(r.objective)
       << ',' << csv_number(r.first_layer_cost) << ','
       << csv_number(r.outsourcing_cost) << '\n';
  }
  return os.str();
}

}  // namespace lpstcn
