// Command line for the two-layer shipment solver: solve/oracle/compare on
// instance files, seeded instance generation, the theta sweep and a batch
// benchmark, all emitting CSV for downstream plotting.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpstcn/harness.hpp"
#include "lpstcn/instance_io.hpp"
#include "lpstcn/oracle.hpp"
#include "lpstcn/solver.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInstance = 2,
  kMismatch = 3,
  kTimeLimit = 4,
};

struct SolveFlags {
  double time_limit_s = 1800.0;
  double eps = 1e-6;
  bool no_cuts = false;
  bool no_bounds = false;
  bool no_enumeration = false;
  std::optional<int> arc_limit;

  lpstcn::SolveConfig to_config() const {
    lpstcn::SolveConfig config;
    config.time_limit_s = time_limit_s;
    config.eps = eps;
    config.use_cuts = !no_cuts;
    config.use_bounds = !no_bounds;
    config.use_enumeration = !no_enumeration;
    config.arc_limit_override = arc_limit;
    return config;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--time-limit", flags.time_limit_s, "Time budget in seconds");
  cmd->add_option("--eps", flags.eps, "Reduced-cost tolerance");
  cmd->add_flag("--no-cuts", flags.no_cuts, "Skip capacity cuts");
  cmd->add_flag("--no-bounds", flags.no_bounds, "Skip vehicle-count bounds");
  cmd->add_flag("--no-enumeration", flags.no_enumeration,
                "Skip gap enumeration (heuristic result)");
  cmd->add_option("--arc-limit", flags.arc_limit, "Override the instance arc limit");
}

struct GenFlags {
  std::uint64_t seed = 1;
  lpstcn::GenParams params;
};

void add_gen_flags(CLI::App* cmd, GenFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Generator seed");
  cmd->add_option("--n1", flags.params.n1, "First-layer destination count");
  cmd->add_option("--n2", flags.params.n2, "Second-layer destination count");
  cmd->add_option("--area-km", flags.params.area_km, "Placement square side");
  cmd->add_option("--theta", flags.params.theta,
                  "Layer partition ratio (overrides --n1/--n2 split)");
  cmd->add_option("--radius-km", flags.params.first_layer_radius_km,
                  "First-layer connection radius");
  cmd->add_option("--fanin", flags.params.second_layer_fanin,
                  "Cross arcs per second-layer node");
  cmd->add_option("--outsource-rate", flags.params.outsource_rate,
                  "Outsourcing rate CNY/(km*m^3)");
  cmd->add_option("--demand-min", flags.params.demand_min, "Demand lower bound");
  cmd->add_option("--demand-max", flags.params.demand_max, "Demand upper bound");
  cmd->add_option("--arc-limit", flags.params.arc_limit, "Max arcs per path");
}

lpstcn::Instance load_instance(const std::string& path) {
  return lpstcn::parse_instance(lpstcn::read_file(path));
}

void print_solution(const lpstcn::Instance& inst, const lpstcn::Solution& s) {
  const auto& st = s.stats;
  std::cout << "status " << to_string(st.status) << (st.exact ? " (exact)" : "")
            << "\nobjective " << s.objective << "  =  first_layer "
            << s.first_layer_cost << " + outsourcing " << s.outsourcing_cost
            << "\nlb " << st.lb << "  ub " << st.ub << "  gap " << st.gap
            << "\ncg_iterations " << st.cg_iterations << "  columns "
            << st.columns_generated << "+" << st.columns_enumerated
            << "  nodes " << st.nodes_explored << "  wall_s " << st.wall_seconds
            << "\n";
  for (const auto& [col, count] : s.vehicle_plan) {
    std::cout << "  " << count << " x type" << col.vehicle << " o";
    for (int v : col.path.node_seq) std::cout << "->" << inst.nodes[v].name;
    std::cout << "  (" << col.path.length << " km)\n";
  }
  for (int a = 0; a < inst.num_arcs(); ++a) {
    if (inst.arcs[a].kind == lpstcn::ArcKind::CrossLayer && s.flows[a] > 1e-9) {
      std::cout << "  outsource " << s.flows[a] << " m3 "
                << inst.nodes[inst.arcs[a].tail].name << "->"
                << inst.nodes[inst.arcs[a].head].name << "\n";
    }
  }
}

std::vector<double> parse_thetas(const std::string& csv) {
  std::vector<double> thetas;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) thetas.push_back(std::stod(item));
  }
  return thetas;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer package shipment solver"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_path;
  std::string solve_csv_out;
  SolveFlags solve_flags;
  solve_cmd->add_option("instance", solve_path, "Instance JSON path")->required();
  solve_cmd->add_option("--csv", solve_csv_out, "Append a run record to this CSV");
  add_solve_flags(solve_cmd, solve_flags);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded synthetic instance");
  GenFlags gen_flags;
  std::string gen_out = "instance.json";
  gen_cmd->add_option("-o,--output", gen_out, "Output path");
  add_gen_flags(gen_cmd, gen_flags);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force solve an instance file");
  std::string oracle_path;
  long oracle_cap = 1000000;
  oracle_cmd->add_option("instance", oracle_path, "Instance JSON path")->required();
  oracle_cmd->add_option("--path-cap", oracle_cap, "Enumeration size guard");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "Solve both ways and compare objectives");
  std::string compare_path;
  SolveFlags compare_flags;
  compare_cmd->add_option("instance", compare_path, "Instance JSON path")->required();
  add_solve_flags(compare_cmd, compare_flags);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Theta sweep over a seeded geometry");
  GenFlags sweep_gen;
  SolveFlags sweep_solve;
  std::string sweep_thetas = "0.9,0.8,0.7,0.6,0.5,0.4";
  std::string sweep_out;
  int sweep_n = 30;
  sweep_cmd->add_option("--n", sweep_n, "Destination count");
  sweep_cmd->add_option("--thetas", sweep_thetas, "Comma separated thresholds");
  sweep_cmd->add_option("-o,--output", sweep_out, "CSV output path (default stdout)");
  add_gen_flags(sweep_cmd, sweep_gen);
  add_solve_flags(sweep_cmd, sweep_solve);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Batch of seeded solves, CSV out");
  GenFlags bench_gen;
  SolveFlags bench_solve;
  int bench_batch = 10;
  std::string bench_out;
  bench_cmd->add_option("--batch", bench_batch, "Number of instances");
  bench_cmd->add_option("-o,--output", bench_out, "CSV output path (default stdout)");
  add_gen_flags(bench_cmd, bench_gen);
  add_solve_flags(bench_cmd, bench_solve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      lpstcn::Instance inst = load_instance(solve_path);
      lpstcn::Solution s = lpstcn::solve(inst, solve_flags.to_config());
      print_solution(inst, s);
      if (!solve_csv_out.empty()) {
        lpstcn::RunRecord r = lpstcn::make_run_record(solve_path, 0,
                                                      solve_flags.to_config(), inst, s);
        lpstcn::write_file(solve_csv_out, lpstcn::run_record_csv_header() + "\n" +
                                              lpstcn::run_record_csv_row(r) + "\n");
      }
      return s.stats.status == lpstcn::SolveStatus::TimeLimit ? kTimeLimit : kOk;
    }

    if (gen_cmd->parsed()) {
      lpstcn::Instance inst = lpstcn::generate_instance(gen_flags.seed, gen_flags.params);
      lpstcn::write_file(gen_out, lpstcn::instance_to_json(inst));
      std::cout << gen_out << ": |V1| " << inst.num_first_layer() << ", |V2| "
                << inst.second_layer.size() << ", arcs " << inst.num_arcs() << "\n";
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      lpstcn::Instance inst = load_instance(oracle_path);
      lpstcn::OracleLimits limits;
      limits.path_cap = oracle_cap;
      lpstcn::Solution s = lpstcn::solve_exact(inst, limits);
      print_solution(inst, s);
      return s.stats.status == lpstcn::SolveStatus::TimeLimit ? kTimeLimit : kOk;
    }

    if (compare_cmd->parsed()) {
      lpstcn::Instance inst = load_instance(compare_path);
      lpstcn::Solution staged = lpstcn::solve(inst, compare_flags.to_config());
      lpstcn::Solution exact = lpstcn::solve_exact(inst);
      double rel = std::abs(staged.objective - exact.objective) /
                   std::max(1.0, std::abs(exact.objective));
      std::cout << "solver " << staged.objective << "\noracle " << exact.objective
                << "\nrelative difference " << rel << "\n";
      if (rel > 1e-6) {
        std::cerr << "MISMATCH beyond 1e-6\n";
        return kMismatch;
      }
      return kOk;
    }

    if (sweep_cmd->parsed()) {
      lpstcn::SeededGeometry geom =
          lpstcn::sample_geometry(sweep_gen.seed, sweep_n, sweep_gen.params);
      std::vector<lpstcn::SweepRow> rows = lpstcn::sweep_theta(
          geom, sweep_gen.params, parse_thetas(sweep_thetas), sweep_solve.to_config());
      std::string csv = lpstcn::sweep_csv(rows);
      if (sweep_out.empty()) {
        std::cout << csv;
      } else {
        lpstcn::write_file(sweep_out, csv);
      }
      return kOk;
    }

    if (bench_cmd->parsed()) {
      std::ostringstream csv;
      csv << lpstcn::run_record_csv_header() << "\n";
      for (int i = 0; i < bench_batch; ++i) {
        std::uint64_t seed = bench_gen.seed + static_cast<std::uint64_t>(i);
        lpstcn::Instance inst = lpstcn::generate_instance(seed, bench_gen.params);
        lpstcn::Solution s = lpstcn::solve(inst, bench_solve.to_config());
        csv << lpstcn::run_record_csv_row(lpstcn::make_run_record(
                   "gen-" + std::to_string(seed), seed, bench_solve.to_config(),
                   inst, s))
            << "\n";
      }
      if (bench_out.empty()) {
        std::cout << csv.str();
      } else {
        lpstcn::write_file(bench_out, csv.str());
      }
      return kOk;
    }
  } catch (const lpstcn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalidInstance;
  } catch (const lpstcn::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kInvalidInstance;
  } catch (const lpstcn::SizeGuardError& e) {
    std::cerr << e.what() << "\n";
    return kInvalidInstance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
