#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "lpstcn/linear_model.hpp"

namespace lpstcn {

namespace {

constexpr double kIntTol = 1e-6;

struct BoundChange {
  int var;
  double lb;
  double ub;
};

// One entry per variable, tightest bounds win; keeps inherited change lists
// from growing with tree depth.
void compress_changes(std::vector<BoundChange>& changes) {
  std::sort(changes.begin(), changes.end(),
            [](const BoundChange& a, const BoundChange& b) { return a.var < b.var; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < changes.size(); ++i) {
    if (out > 0 && changes[out - 1].var == changes[i].var) {
      changes[out - 1].lb = std::max(changes[out - 1].lb, changes[i].lb);
      changes[out - 1].ub = std::min(changes[out - 1].ub, changes[i].ub);
    } else {
      changes[out++] = changes[i];
    }
  }
  changes.resize(out);
}

struct Node {
  double bound;  // parent LP objective, a valid lower bound for the subtree
  long id;
  std::vector<BoundChange> changes;  // accumulated from the root
  std::shared_ptr<const SimplexBasis> warm;  // parent optimal basis
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id < b.id;  // LIFO among ties keeps the factorization handoff hot
  }
};

// Fractional branching: the integer variable farthest from an integer value,
// ties by lowest variable id.
int pick_branch_var(const LinearModel& model, const std::vector<double>& primal) {
  int best = -1;
  double best_dist = kIntTol;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.vars[j].integer) continue;
    double v = primal[j];
    double dist = std::abs(v - std::round(v));
    if (dist > best_dist + 1e-12) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

void reset_bounds(LinearModel& scratch, const LinearModel& model,
                  const std::vector<BoundChange>& changes, bool& conflict) {
  for (int j = 0; j < scratch.num_vars(); ++j) {
    scratch.vars[j].lb = model.vars[j].lb;
    scratch.vars[j].ub = model.vars[j].ub;
  }
  conflict = false;
  for (const BoundChange& ch : changes) {
    scratch.vars[ch.var].lb = std::max(scratch.vars[ch.var].lb, ch.lb);
    scratch.vars[ch.var].ub = std::min(scratch.vars[ch.var].ub, ch.ub);
    if (scratch.vars[ch.var].lb > scratch.vars[ch.var].ub) conflict = true;
  }
}

// Reduced-cost bound propagation: with the node LP value z and a pruning
// threshold, an integer variable nonbasic at a bound can move away from it
// by at most (threshold - z) / |reduced cost| before the subtree prunes
// itself, so its opposite bound tightens for all descendants.
void reduced_cost_fixing(const LinearModel& scratch, const LpResult& lp,
                         double threshold, std::vector<BoundChange>& changes) {
  double slack = threshold - lp.objective;
  if (!(slack >= 0) || !std::isfinite(slack)) return;
  for (int j = 0; j < scratch.num_vars(); ++j) {
    if (!scratch.vars[j].integer) continue;
    double d = lp.reduced_costs[j];
    double lb = scratch.vars[j].lb;
    double ub = scratch.vars[j].ub;
    if (lb == ub) continue;
    if (d > 1e-9 && lp.primal[j] <= lb + 1e-7) {
      double cap = std::floor(lb + slack / d + 1e-9);
      if (cap < ub - 1e-9) changes.push_back(BoundChange{j, -kLpInfinity, cap});
    } else if (d < -1e-9 && lp.primal[j] >= ub - 1e-7) {
      double cap = std::ceil(ub - slack / (-d) - 1e-9);
      if (cap > lb + 1e-9) changes.push_back(BoundChange{j, cap, kLpInfinity});
    }
  }
}

bool is_integral(const LinearModel& model, const std::vector<double>& primal) {
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.vars[j].integer) continue;
    if (std::abs(primal[j] - std::round(primal[j])) > kIntTol) return false;
  }
  return true;
}

std::vector<double> rounded_incumbent(const LinearModel& model,
                                      const std::vector<double>& primal) {
  std::vector<double> values = primal;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.vars[j].integer) values[j] = std::round(values[j]);
  }
  return values;
}

}  // namespace

MipResult solve_mip(const LinearModel& input, const MipLimits& limits) {
  input.check_valid();
  const auto started = std::chrono::steady_clock::now();
  auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
        .count();
  };

  MipResult result;
  result.best_bound = -kLpInfinity;

  LinearModel model = input;
  // Root strengthening: rounds of Gomory mixed-integer cuts until the
  // relaxation stops moving. Globally valid rows, so the tree inherits them.
  const int original_rows_before_gmi = model.num_rows();
  if (!std::getenv("LPSTCN_NO_GMI")) {
    // Strengthening pays for itself only while it is cheap relative to the
    // search; bound its wall share.
    const double cut_budget_s =
        std::min(5.0, std::isfinite(limits.time_limit_s)
                          ? 0.25 * std::max(limits.time_limit_s, 0.2)
                          : 5.0);
    double previous = -kLpInfinity;
    auto near_parallel = [](const ModelRow& a, const ModelRow& b) {
      if (a.coeffs.size() != b.coeffs.size()) return false;
      double dot = 0.0, na = 0.0, nb = 0.0;
      std::size_t i = 0, k = 0;
      for (const auto& [j, c] : a.coeffs) na += c * c, (void)j;
      for (const auto& [j, c] : b.coeffs) nb += c * c, (void)j;
      while (i < a.coeffs.size() && k < b.coeffs.size()) {
        if (a.coeffs[i].first < b.coeffs[k].first) return false;
        if (a.coeffs[i].first > b.coeffs[k].first) return false;
        dot += a.coeffs[i].second * b.coeffs[k].second;
        ++i, ++k;
      }
      return dot * dot > 0.9999 * na * nb;
    };
    std::vector<ModelRow> added_cuts;
    int flat_rounds = 0;
    for (int round = 0; round < 40; ++round) {
      if (elapsed_s() > cut_budget_s) break;
      std::vector<ModelRow> cuts = gomory_cuts(model, 64);
      if (cuts.empty()) break;
      std::size_t kept = 0;
      for (ModelRow& cut : cuts) {
        bool dup = false;
        for (const ModelRow& prev : added_cuts) {
          if (near_parallel(cut, prev)) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        added_cuts.push_back(cut);
        model.rows.push_back(std::move(cut));
        ++kept;
      }
      if (kept == 0) break;
      LpResult check = solve_lp(model);
      if (check.status != LpStatus::Optimal) break;
      if (check.objective <= previous + 1e-7 * std::max(1.0, std::abs(previous))) {
        if (++flat_rounds >= 3) break;  // tailing off
      } else {
        flat_rounds = 0;
      }
      previous = check.objective;
      if (std::getenv("LPSTCN_DEBUG_ROOT")) {
        std::fprintf(stderr, "root round %d: lp %.6f rows %d\n", round,
                     check.objective, model.num_rows());
      }
    }
    // Purge cut rows that ended far from binding: they bloat every node LP
    // and rarely bind deeper in the tree.
    if (model.num_rows() > input.num_rows()) {
      LpResult last = solve_lp(model);
      if (last.status == LpStatus::Optimal) {
        LinearModel pruned = model;
        pruned.rows.resize(original_rows_before_gmi);
        for (int r = original_rows_before_gmi; r < model.num_rows(); ++r) {
          double activity = 0.0;
          for (const auto& [j, a] : model.rows[r].coeffs) activity += a * last.primal[j];
          double slack = activity - model.rows[r].rhs;
          if (slack < 0.05 * std::max(1.0, std::abs(model.rows[r].rhs))) {
            pruned.rows.push_back(model.rows[r]);
          }
        }
        if (std::getenv("LPSTCN_DEBUG_ROOT")) {
          std::fprintf(stderr, "purged %d of %d cut rows\n",
                       model.num_rows() - pruned.num_rows(),
                       model.num_rows() - original_rows_before_gmi);
        }
        model = std::move(pruned);
      }
    }
  }
  LinearModel scratch = model;
  double cutoff = limits.upper_cutoff;  // prune at bound >= cutoff - ptol
  // A fifth of the declared 1e-6 optimality gap: both of a pair of
  // independent solves stay well inside the comparison tolerance.
  auto prune_tol = [&] { return 2e-7 * std::max(1.0, std::abs(cutoff)); };

  // Root LP; an integral root needs no search at all.
  bool conflict = false;
  reset_bounds(scratch, model, {}, conflict);
  auto root_basis = std::make_shared<SimplexBasis>();
  LpResult root = solve_lp_warm(scratch, nullptr, root_basis.get());
  ++result.nodes_explored;
  if (root.status == LpStatus::Infeasible) {
    result.status = MipStatus::Infeasible;
    result.best_bound = kLpInfinity;
    return result;
  }
  if (root.status == LpStatus::Unbounded) {
    // The models this kernel serves are always bounded below.
    throw std::runtime_error("solve_mip: unbounded LP relaxation");
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 1;

  auto accept_incumbent = [&](const LinearModel& at, const LpResult& lp) {
    if (lp.objective >= cutoff - prune_tol()) return;
    result.has_incumbent = true;
    result.objective = lp.objective;
    result.incumbent = rounded_incumbent(at, lp.primal);
    cutoff = std::min(cutoff, lp.objective);
  };

  if (is_integral(scratch, root.primal)) {
    accept_incumbent(scratch, root);
    if (result.has_incumbent || root.objective >= cutoff - prune_tol()) {
      result.status = result.has_incumbent ? MipStatus::Optimal : MipStatus::Infeasible;
      result.best_bound = result.has_incumbent ? result.objective : kLpInfinity;
      result.gap = result.has_incumbent ? 0.0 : kLpInfinity;
      return result;
    }
  }

  // Dive heuristic: walk the fractional root solution toward integrality by
  // fixing the branch variable to its nearest integer. A found solution
  // seeds the incumbent; the best-bound search below is unchanged.
  {
    std::vector<BoundChange> dive_changes;
    LpResult lp = root;
    SimplexBasis dive_basis = *root_basis;
    for (int depth = 0; depth < 4 * scratch.num_vars() + 16; ++depth) {
      if (lp.status != LpStatus::Optimal) break;
      if (lp.objective >= cutoff - prune_tol()) break;
      if (is_integral(scratch, lp.primal)) {
        accept_incumbent(scratch, lp);
        break;
      }
      int j = pick_branch_var(scratch, lp.primal);
      if (j < 0) break;
      double r = std::round(lp.primal[j]);
      dive_changes.push_back(BoundChange{j, r, r});
      reset_bounds(scratch, model, dive_changes, conflict);
      if (conflict) break;
      SimplexBasis next_basis;
      lp = solve_lp_warm(scratch, &dive_basis, &next_basis);
      dive_basis = std::move(next_basis);
    }
  }

  open.push(Node{root.objective, 0, {}, root_basis});
  bool stopped_early = false;
  bool hit_time = false;
  double open_floor = kLpInfinity;  // min bound over unexplored nodes at stop

  // Plunging: the down child runs immediately after its parent while its
  // bound stays near the best-bound frontier. Factorization handoffs then
  // hit on most nodes; the explored set only grows by the margin.
  std::optional<Node> pending;
  auto plunge_margin = [&](double frontier) {
    return cutoff < kLpInfinity ? 0.2 * std::max(0.0, cutoff - frontier)
                                : 0.02 * std::max(1.0, std::abs(frontier));
  };

  while (!open.empty() || pending.has_value()) {
    if (result.nodes_explored >= limits.node_cap) {
      stopped_early = true;
      break;
    }
    // The root was processed above, so even a zero budget leaves a bound.
    if (elapsed_s() > limits.time_limit_s) {
      stopped_early = true;
      hit_time = true;
      break;
    }

    Node node{0.0, 0, {}, nullptr};
    if (pending.has_value() &&
        (open.empty() ||
         pending->bound <= open.top().bound + plunge_margin(open.top().bound))) {
      node = std::move(*pending);
      pending.reset();
    } else {
      node = open.top();
      open.pop();
    }
    if (node.bound >= cutoff - prune_tol()) continue;

    reset_bounds(scratch, model, node.changes, conflict);
    if (conflict) continue;

    SimplexBasis node_basis;
    static const bool debug_nodes = std::getenv("LPSTCN_DEBUG_NODES") != nullptr;
    static const bool no_warm = std::getenv("LPSTCN_NO_WARM") != nullptr;
    auto lp_t0 = std::chrono::steady_clock::now();
    LpResult lp = node.id == 0
                      ? root  // the root LP is already solved
                      : solve_lp_warm(scratch, no_warm ? nullptr : node.warm.get(),
                                      &node_basis);
    if (debug_nodes && node.id != 0) {
      double lp_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - lp_t0)
                         .count();
      std::fprintf(stderr, "node %ld: lp %s %.6g iters %ld %.3fms changes %zu\n",
                   node.id, to_string(lp.status), lp.objective, lp.iterations,
                   lp_ms, node.changes.size());
    }
    if (node.id != 0) ++result.nodes_explored;
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      throw std::runtime_error("solve_mip: unbounded LP relaxation");
    }
    if (lp.objective >= cutoff - prune_tol()) continue;

    int branch = pick_branch_var(scratch, lp.primal);
    if (branch < 0) {
      accept_incumbent(scratch, lp);
      continue;
    }

    reduced_cost_fixing(scratch, lp, cutoff - prune_tol(), node.changes);

    compress_changes(node.changes);
    double v = lp.primal[branch];
    std::shared_ptr<const SimplexBasis> warm =
        node.id == 0 ? std::move(node.warm)
                     : std::make_shared<const SimplexBasis>(std::move(node_basis));
    Node down{lp.objective, next_id++, node.changes, warm};
    down.changes.push_back(BoundChange{branch, -kLpInfinity, std::floor(v)});
    Node up{lp.objective, next_id++, std::move(node.changes), std::move(warm)};
    up.changes.push_back(BoundChange{branch, std::ceil(v), kLpInfinity});
    if (pending.has_value()) open.push(std::move(*pending));
    pending = std::move(down);
    open.push(std::move(up));
  }

  if (stopped_early) {
    if (pending.has_value()) open_floor = pending->bound;
    while (!open.empty()) {
      open_floor = std::min(open_floor, open.top().bound);
      open.pop();
    }
  }

  if (!stopped_early) {
    // Exhausted: the incumbent (if any) is optimal.
    if (result.has_incumbent) {
      result.status = MipStatus::Optimal;
      result.best_bound = result.objective;
      result.gap = 0.0;
    } else {
      result.status = MipStatus::Infeasible;
      result.best_bound = kLpInfinity;
    }
    return result;
  }

  result.best_bound = std::min(open_floor, result.objective);
  if (hit_time) {
    result.status = MipStatus::TimeLimit;
  } else {
    result.status = result.has_incumbent ? MipStatus::Feasible : MipStatus::TimeLimit;
  }
  if (result.has_incumbent) {
    result.gap = (result.objective - result.best_bound) /
                 std::max(1.0, std::abs(result.objective));
  }
  return result;
}

}  // namespace lpstcn
