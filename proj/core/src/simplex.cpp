#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "lpstcn/linear_model.hpp"

namespace lpstcn {

namespace {

constexpr double kDjTol = 1e-9;          // entering eligibility
constexpr double kPivotHardTol = 1e-10;  // reject pivots below this
constexpr double kRatioTieTol = 1e-9;
constexpr double kDegenerateStep = 1e-10;
constexpr int kBlandTrigger = 200;  // degenerate pivots before Bland's rule
constexpr int kRefactorInterval = 300;

enum class VStat : unsigned char { Basic, AtLower, AtUpper, FreeNB };

// Small factorization handoff cache: a warm start whose basis was recently
// exported reuses the stored inverse instead of refactorizing. Both children
// of a branch-and-bound node hit their parent's entry this way.
struct InverseCacheEntry {
  std::uint64_t generation = 0;
  int m = 0;
  std::vector<double> binv;
};
struct InverseCache {
  static constexpr int kSlots = 16;
  InverseCacheEntry slots[kSlots];
  int next = 0;

  const InverseCacheEntry* find(std::uint64_t generation, int m) const {
    if (generation == 0) return nullptr;
    for (const auto& e : slots) {
      if (e.generation == generation && e.m == m) return &e;
    }
    return nullptr;
  }
  void store(std::uint64_t generation, int m, const std::vector<double>& binv) {
    slots[next].generation = generation;
    slots[next].m = m;
    slots[next].binv = binv;
    next = (next + 1) % kSlots;
  }
};
thread_local InverseCache g_inverse_cache;
thread_local std::uint64_t g_basis_generation = 0;

struct SingularBasis {};

struct WarmStats {
  long attempts = 0, adopted = 0, cache_hits = 0, dual_ok = 0, dual_stall = 0,
       dual_infeas = 0;
  ~WarmStats() {
    if (attempts && std::getenv("LPSTCN_DEBUG_WARM")) {
      std::fprintf(stderr,
                   "warm: attempts %ld adopted %ld cache %ld ok %ld stall %ld "
                   "infeas %ld\n",
                   attempts, adopted, cache_hits, dual_ok, dual_stall, dual_infeas);
    }
  }
};
thread_local WarmStats g_warm_stats;

// Bounded-variable primal simplex over the equality system A x = b obtained
// by adding one slack per row. The basis inverse is kept explicitly and
// refactorized periodically. Entering variable by Dantzig pricing, switching
// to Bland's rule while a degenerate streak lasts.
class Simplex {
 public:
  explicit Simplex(const LinearModel& model) { build(model); }

  LpResult run() { return run_impl(nullptr, nullptr); }

  LpResult run_impl(const SimplexBasis* warm_in, SimplexBasis* warm_out) {
    LpResult result;
    if (bounds_conflict_) {
      result.status = LpStatus::Infeasible;
      return result;
    }

    if (warm_in) {
      ++g_warm_stats.attempts;
      try {
        if (try_warm(*warm_in)) {
          ++g_warm_stats.adopted;
          switch (dual_phase(cost_)) {
            case DualOutcome::Feasible: {
              ++g_warm_stats.dual_ok;
              Phase outcome = iterate(cost_);
              if (outcome == Phase::IterationLimit) throw_iteration_limit();
              if (outcome == Phase::Unbounded) {
                result.status = LpStatus::Unbounded;
                result.iterations = iterations_;
                return result;
              }
              return finish(warm_out);
            }
            case DualOutcome::Infeasible:
              // Re-verify from a cold start: a numerically borderline dual
              // ray must never prune a feasible subproblem.
              ++g_warm_stats.dual_infeas;
              break;
            case DualOutcome::Stall:
              ++g_warm_stats.dual_stall;
              break;
          }
        }
      } catch (const SingularBasis&) {
        // fall through to the cold start
      }
      reset_cold_start();
    }

    // An ill-conditioned pivot chain can leave the factorization singular;
    // one conservative restart under Bland's rule resolves those.
    try {
      return run_cold(warm_out);
    } catch (const SingularBasis&) {
      reset_cold_start();
      conservative_ = true;
    }
    return run_cold(warm_out);
  }

  LpResult run_cold(SimplexBasis* warm_out) {
    LpResult result;
    if (has_artificials_) {
      Phase outcome = iterate(phase1_cost_);
      if (outcome == Phase::IterationLimit) throw_iteration_limit();
      double infeas = 0.0;
      for (int j = n_real_; j < n_total_; ++j) infeas += phase1_cost_[j] * x_[j];
      if (infeas > feas_tol_) {
        result.status = LpStatus::Infeasible;
        result.iterations = iterations_;
        return result;
      }
      // Pin artificials at zero for phase 2.
      for (int j = n_real_; j < n_total_; ++j) {
        lb_[j] = ub_[j] = 0.0;
        if (stat_[j] != VStat::Basic) {
          x_[j] = 0.0;
          stat_[j] = VStat::AtLower;
        }
      }
      purge_artificial_basics();
    }

    Phase outcome = iterate(cost_);
    if (outcome == Phase::IterationLimit) throw_iteration_limit();
    if (outcome == Phase::Unbounded) {
      result.status = LpStatus::Unbounded;
      result.iterations = iterations_;
      return result;
    }
    return finish(warm_out);
  }

  LpResult finish(SimplexBasis* warm_out) {
    LpResult result;
    // One accuracy pass: if the basic solution drifted, refactorize and
    // reoptimize from the current basis.
    for (int attempt = 0; attempt < 2 && residual() > feas_tol_; ++attempt) {
      refactor_fix(cost_);
      Phase outcome = iterate(cost_);
      if (outcome == Phase::Unbounded) {
        result.status = LpStatus::Unbounded;
        result.iterations = iterations_;
        return result;
      }
    }

    result.status = LpStatus::Optimal;
    result.iterations = iterations_;
    result.objective = 0.0;
    for (int j = 0; j < n_total_; ++j) result.objective += cost_[j] * x_[j];
    result.primal.assign(x_.begin(), x_.begin() + n_struct_);
    std::vector<double> y = duals(cost_);
    result.duals.resize(m_);
    for (int r = 0; r < m_; ++r) result.duals[r] = y[r] * row_scale_[r];
    result.reduced_costs.assign(n_struct_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      if (stat_[j] == VStat::Basic) continue;
      double d = cost_[j];
      for (const auto& [r, a] : cols_[j]) d -= y[r] * a;
      result.reduced_costs[j] = d;
    }
    if (warm_out) export_basis(*warm_out);
    return result;
  }

  // Gomory mixed-integer cuts read off the optimal tableau. One candidate
  // per fractional basic integer variable; every returned row is globally
  // valid for the mixed-integer set and violated by the current LP point.
  std::vector<ModelRow> extract_gomory(const LinearModel& model, int max_cuts) {
    std::vector<ModelRow> cuts;
    int n_frac = 0, n_free = 0, n_dirty = 0, n_mag = 0, n_viol = 0;
    for (int slot = 0; slot < m_ && static_cast<int>(cuts.size()) < max_cuts; ++slot) {
      int basic = basis_[slot];
      if (basic >= n_struct_ || !model.vars[basic].integer) continue;
      double value = x_[basic];
      double f0 = value - std::floor(value);
      if (f0 < 0.01 || f0 > 0.99) continue;
      ++n_frac;

      // Tableau row in displacement space: basic = value - sum(alpha_j t_j)
      // with every nonbasic t_j >= 0 measured away from its current bound.
      bool clean = true;
      std::vector<double> gamma(n_real_, 0.0);
      for (int j = 0; j < n_real_ && clean; ++j) {
        if (stat_[j] == VStat::Basic || lb_[j] == ub_[j]) continue;
        double alpha = 0.0;
        for (const auto& [r, a] : cols_[j]) alpha += B(slot, r) * a;
        if (stat_[j] == VStat::FreeNB) {
          clean = std::abs(alpha) <= 1e-7;
          continue;
        }
        double tilde = stat_[j] == VStat::AtUpper ? -alpha : alpha;
        bool integral_disp = j < n_struct_ && model.vars[j].integer &&
                             std::floor(lb_[j]) == lb_[j] &&
                             (ub_[j] == kLpInfinity || std::floor(ub_[j]) == ub_[j]);
        double g;
        if (integral_disp) {
          double fj = tilde - std::floor(tilde);
          g = fj <= f0 + 1e-12 ? fj / f0 : (1.0 - fj) / (1.0 - f0);
        } else {
          g = tilde > 0 ? tilde / f0 : -tilde / (1.0 - f0);
        }
        gamma[j] = g;  // nonnegative by construction; tiny terms are
                       // handled in the variable-space cleanup below
      }
      if (!clean) { ++n_free; continue; }

      // Back to variable space: t = x - lb or ub - x, then substitute the
      // slack definitions so the cut mentions structural variables only.
      std::vector<double> coeff(n_struct_, 0.0);
      double rhs = 1.0;
      auto add_term = [&](int j, double g) {
        if (stat_[j] == VStat::AtUpper) {
          rhs -= g * ub_[j];
          return -g;
        }
        rhs += g * lb_[j];
        return g;
      };
      for (int j = 0; j < n_struct_; ++j) {
        if (gamma[j] != 0.0) coeff[j] += add_term(j, gamma[j]);
      }
      for (int r = 0; r < m_; ++r) {
        int s = n_struct_ + r;
        if (gamma[s] == 0.0) continue;
        double w = add_term(s, gamma[s]);  // coefficient on the slack
        // slack = scaled rhs_r - scaled row_r . x
        rhs -= w * rhs_[r];
        for (const auto& [var, a] : model.rows[r].coeffs) {
          coeff[var] -= w * a * row_scale_[r];
        }
      }

      double max_mag = 0.0;
      for (int j = 0; j < n_struct_; ++j) max_mag = std::max(max_mag, std::abs(coeff[j]));
      if (max_mag < 1e-9) continue;

      // Normalize to unit magnitude and reject numerically wide cuts; basis
      // conditioning degrades quickly once cut coefficients span many orders.
      ModelRow cut;
      cut.sense = RowSense::GreaterEqual;
      cut.rhs = rhs / max_mag;
      for (int j = 0; j < n_struct_; ++j) {
        double scaled = coeff[j] / max_mag;
        if (std::abs(scaled) > 1e-6) {
          cut.coeffs.push_back({j, scaled});
        } else if (std::abs(scaled) > 1e-12) {
          // Tiny terms are numerics hazards. On a >= row a coefficient may
          // grow freely over a nonnegative variable, a negative one may drop
          // over the same, and otherwise a finite bound compensates.
          if (scaled > 0 && lb_[j] >= 0) {
            cut.coeffs.push_back({j, 1e-6});
          } else if (scaled < 0 && lb_[j] >= 0) {
            // dropped
          } else {
            double extreme = scaled > 0 ? ub_[j] : lb_[j];
            if (std::isfinite(extreme)) {
              cut.rhs -= scaled * extreme;
            } else {
              clean = false;
            }
          }
        }
      }
      if (!clean || cut.coeffs.empty()) { ++n_dirty; continue; }
      if (std::abs(cut.rhs) > 1e7) { ++n_mag; continue; }
      double activity = 0.0;
      for (const auto& [j, a] : cut.coeffs) activity += a * x_[j];
      if (activity > cut.rhs - 1e-7 * std::max(1.0, std::abs(cut.rhs))) {
        ++n_viol;
        continue;
      }
      cuts.push_back(std::move(cut));
    }
    if (std::getenv("LPSTCN_DEBUG_GMI")) {
      std::fprintf(stderr, "gmi: frac %d free %d dirty %d mag %d notviol %d kept %zu\n",
                   n_frac, n_free, n_dirty, n_mag, n_viol, cuts.size());
    }
    return cuts;
  }

 private:
  enum class Phase { Optimal, Unbounded, IterationLimit };
  enum class DualOutcome { Feasible, Infeasible, Stall };

  // Adopts a caller basis: statuses normalized against the current bounds,
  // artificials pinned to zero, the inverse refactorized from scratch.
  bool try_warm(const SimplexBasis& warm) {
    if (static_cast<int>(warm.basic.size()) != m_ ||
        static_cast<int>(warm.stat.size()) != n_real_) {
      return false;
    }
    std::vector<char> used(n_real_, 0);
    for (int b : warm.basic) {
      if (b < 0 || b >= n_real_ || used[b]) return false;
      used[b] = 1;
    }

    for (int j = 0; j < n_real_; ++j) {
      VStat s = static_cast<VStat>(warm.stat[j]);
      if (used[j]) s = VStat::Basic;
      if (s != VStat::Basic) {
        if (lb_[j] == ub_[j]) {
          s = VStat::AtLower;
        } else if (s == VStat::AtLower && lb_[j] == -kLpInfinity) {
          s = ub_[j] < kLpInfinity ? VStat::AtUpper : VStat::FreeNB;
        } else if (s == VStat::AtUpper && ub_[j] == kLpInfinity) {
          s = lb_[j] > -kLpInfinity ? VStat::AtLower : VStat::FreeNB;
        } else if (s == VStat::FreeNB &&
                   (lb_[j] > -kLpInfinity || ub_[j] < kLpInfinity)) {
          s = lb_[j] > -kLpInfinity ? VStat::AtLower : VStat::AtUpper;
        }
      }
      stat_[j] = s;
      switch (s) {
        case VStat::Basic: break;
        case VStat::AtLower: x_[j] = lb_[j]; break;
        case VStat::AtUpper: x_[j] = ub_[j]; break;
        case VStat::FreeNB: x_[j] = 0.0; break;
      }
    }
    for (int j = n_real_; j < n_total_; ++j) {
      lb_[j] = ub_[j] = 0.0;
      x_[j] = 0.0;
      stat_[j] = VStat::AtLower;
    }
    basis_ = warm.basic;
    static const bool no_cache = std::getenv("LPSTCN_NO_INVCACHE") != nullptr;
    const InverseCacheEntry* hit =
        no_cache ? nullptr : g_inverse_cache.find(warm.generation, m_);
    if (hit) {
      ++g_warm_stats.cache_hits;
      binv_ = hit->binv;
      pivots_since_refactor_ = 0;
    } else if (!try_refactor()) {
      return false;
    }
    recompute_basics();
    return true;
  }

  // Swaps zero-level basic artificials for real variables by degenerate
  // pivots so the final basis is transferable. Rows whose artificial cannot
  // leave are linearly dependent; those bases simply stay untransferable.
  void purge_artificial_basics() {
    for (int slot = 0; slot < m_; ++slot) {
      if (basis_[slot] < n_real_) continue;
      const double* brow = &binv_[static_cast<std::size_t>(slot) * m_];
      int enter = -1;
      double best = 1e-7;
      for (int j = 0; j < n_real_; ++j) {
        if (stat_[j] == VStat::Basic || lb_[j] == ub_[j]) continue;
        double alpha = 0.0;
        for (const auto& [r, a] : cols_[j]) alpha += brow[r] * a;
        if (std::abs(alpha) > best) {
          best = std::abs(alpha);
          enter = j;
        }
      }
      if (enter < 0) {
        // Dependent row: its artificial and its slack are the same unit
        // column, so swapping them is exact and always possible.
        int row = cols_[basis_[slot]][0].first;
        int slack = n_struct_ + row;
        if (stat_[slack] == VStat::Basic) continue;
        x_[basis_[slot]] = 0.0;
        stat_[basis_[slot]] = VStat::AtLower;
        stat_[slack] = VStat::Basic;
        x_[slack] = 0.0;
        basis_[slot] = slack;
        continue;
      }
      std::vector<double> w = ftran(enter);
      int leaving = basis_[slot];
      x_[leaving] = 0.0;
      stat_[leaving] = VStat::AtLower;
      stat_[enter] = VStat::Basic;
      basis_[slot] = enter;
      double piv = w[slot];
      double* prow = &binv_[static_cast<std::size_t>(slot) * m_];
      for (int i = 0; i < m_; ++i) prow[i] /= piv;
      for (int r = 0; r < m_; ++r) {
        if (r == slot || w[r] == 0.0) continue;
        double f = w[r];
        double* row = &binv_[static_cast<std::size_t>(r) * m_];
        for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
      }
      ++pivots_since_refactor_;
    }
    recompute_basics();
    if (std::getenv("LPSTCN_DEBUG_PURGE")) {
      int left = 0;
      for (int b : basis_) left += b >= n_real_;
      std::fprintf(stderr, "purge: %d artificial basics left of %d rows\n", left, m_);
    }
  }

  void reset_cold_start() {
    x_ = x0_;
    stat_ = stat0_;
    basis_ = basis0_;
    lb_ = lb0_;
    ub_ = ub0_;
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    pivots_since_refactor_ = 0;
  }

  void export_basis(SimplexBasis& out) const {
    out.basic.clear();
    out.stat.clear();
    for (int b : basis_) {
      if (b >= n_real_) return;  // a basic artificial is not transferable
    }
    out.basic = basis_;
    out.stat.resize(n_real_);
    for (int j = 0; j < n_real_; ++j) out.stat[j] = static_cast<unsigned char>(stat_[j]);
    out.generation = ++g_basis_generation;
    g_inverse_cache.store(out.generation, m_, binv_);
  }

  // Dual reoptimization: restore primal feasibility bound by bound while the
  // ratio rule keeps the (warm) duals feasible. Degenerate stretches switch
  // to lowest-index selection.
  DualOutcome dual_phase(const std::vector<double>& c) {
    const long cap = 20000 + 50L * (m_ + n_total_);
    int degenerate_streak = 0;
    for (long iter = 0; iter < cap; ++iter, ++iterations_) {
      if (pivots_since_refactor_ >= kRefactorInterval) {
        if (!try_refactor()) return DualOutcome::Stall;
        recompute_basics();
      }
      int slot = -1;
      double worst = 1e-9;
      bool below = false;
      for (int r = 0; r < m_; ++r) {
        int b = basis_[r];
        double lo = lb_[b] - x_[b];
        double hi = x_[b] - ub_[b];
        if (lo > worst) {
          worst = lo;
          slot = r;
          below = true;
        }
        if (hi > worst) {
          worst = hi;
          slot = r;
          below = false;
        }
      }
      if (slot < 0) return DualOutcome::Feasible;

      std::vector<double> y = duals(c);
      const bool bland = degenerate_streak >= kBlandTrigger;
      const double* brow = &binv_[static_cast<std::size_t>(slot) * m_];

      int enter = -1;
      double enter_sigma = 0.0, enter_alpha = 0.0;
      double best_ratio = kLpInfinity, best_mag = 0.0;
      for (int j = 0; j < n_total_; ++j) {
        if (stat_[j] == VStat::Basic || lb_[j] == ub_[j]) continue;
        double alpha = 0.0;
        for (const auto& [r, a] : cols_[j]) alpha += brow[r] * a;
        if (std::abs(alpha) < 1e-9) continue;
        // Displacement direction that moves the leaving variable back
        // toward its violated bound.
        double sigma;
        if (stat_[j] == VStat::AtLower) {
          sigma = 1.0;
        } else if (stat_[j] == VStat::AtUpper) {
          sigma = -1.0;
        } else {
          sigma = (below ? -alpha : alpha) > 0 ? 1.0 : -1.0;
        }
        double effect = -sigma * alpha;  // d x_B(slot) per unit step
        if (below ? effect <= 1e-9 : effect >= -1e-9) continue;
        double d = c[j];
        for (const auto& [r, a] : cols_[j]) d -= y[r] * a;
        double dtilde = std::max(sigma * d, 0.0);
        double ratio = dtilde / std::abs(alpha);
        bool take;
        if (bland) {
          take = enter < 0;
        } else {
          take = enter < 0 || ratio < best_ratio - 1e-10 ||
                 (ratio <= best_ratio + 1e-10 && std::abs(alpha) > best_mag + 1e-12);
        }
        if (take) {
          enter = j;
          enter_sigma = sigma;
          enter_alpha = alpha;
          best_ratio = ratio;
          best_mag = std::abs(alpha);
          if (bland) break;
        }
      }
      if (enter < 0) return DualOutcome::Infeasible;

      std::vector<double> w = ftran(enter);
      if (std::abs(w[slot]) < kPivotHardTol) {
        if (!try_refactor()) return DualOutcome::Stall;
        recompute_basics();
        continue;
      }
      int leaving = basis_[slot];
      double target = below ? lb_[leaving] : ub_[leaving];
      double step = (target - x_[leaving]) / (-enter_sigma * w[slot]);
      if (step < 0) step = 0;

      for (int r = 0; r < m_; ++r) {
        if (w[r] != 0.0) x_[basis_[r]] -= enter_sigma * step * w[r];
      }
      x_[leaving] = target;
      stat_[leaving] = below ? VStat::AtLower : VStat::AtUpper;
      x_[enter] += enter_sigma * step;
      stat_[enter] = VStat::Basic;
      basis_[slot] = enter;

      double piv = w[slot];
      double* prow = &binv_[static_cast<std::size_t>(slot) * m_];
      for (int i = 0; i < m_; ++i) prow[i] /= piv;
      for (int r = 0; r < m_; ++r) {
        if (r == slot || w[r] == 0.0) continue;
        double f = w[r];
        double* row = &binv_[static_cast<std::size_t>(r) * m_];
        for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
      }
      ++pivots_since_refactor_;
      (void)enter_alpha;

      if (best_ratio < 1e-10) {
        ++degenerate_streak;
      } else {
        degenerate_streak = 0;
      }
    }
    return DualOutcome::Stall;
  }

  void build(const LinearModel& model) {
    m_ = model.num_rows();
    n_struct_ = model.num_vars();
    n_real_ = n_struct_ + m_;  // structural + slack
    cols_.assign(n_real_, {});
    lb_.assign(n_real_, 0.0);
    ub_.assign(n_real_, 0.0);
    cost_.assign(n_real_, 0.0);
    rhs_.assign(m_, 0.0);

    double b_scale = 1.0;
    for (int j = 0; j < n_struct_; ++j) {
      lb_[j] = model.vars[j].lb;
      ub_[j] = model.vars[j].ub;
      cost_[j] = model.vars[j].obj;
      if (lb_[j] > ub_[j] + 1e-12) bounds_conflict_ = true;
    }
    // Row equilibration: mixed-magnitude rows (capacity rows in the
    // hundreds, cut rows near one) otherwise degrade the factorization.
    row_scale_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      double mag = 0.0;
      for (const auto& [j, a] : model.rows[i].coeffs) mag = std::max(mag, std::abs(a));
      if (mag > 0) row_scale_[i] = 1.0 / mag;
    }
    for (int i = 0; i < m_; ++i) {
      const ModelRow& row = model.rows[i];
      for (const auto& [j, a] : row.coeffs) {
        if (a != 0.0) cols_[j].push_back({i, a * row_scale_[i]});
      }
      rhs_[i] = row.rhs * row_scale_[i];
      b_scale = std::max(b_scale, std::abs(rhs_[i]));
      int s = n_struct_ + i;
      cols_[s].push_back({i, 1.0});
      switch (row.sense) {
        case RowSense::LessEqual:
          lb_[s] = 0.0;
          ub_[s] = kLpInfinity;
          break;
        case RowSense::GreaterEqual:
          lb_[s] = -kLpInfinity;
          ub_[s] = 0.0;
          break;
        case RowSense::Equal:
          lb_[s] = ub_[s] = 0.0;
          break;
      }
    }
    feas_tol_ = 1e-7 * b_scale;
    if (bounds_conflict_) return;

    // Nonbasic start: nearest finite bound, free variables at zero.
    x_.assign(n_real_, 0.0);
    stat_.assign(n_real_, VStat::AtLower);
    for (int j = 0; j < n_struct_; ++j) {
      if (lb_[j] > -kLpInfinity) {
        x_[j] = lb_[j];
        stat_[j] = VStat::AtLower;
      } else if (ub_[j] < kLpInfinity) {
        x_[j] = ub_[j];
        stat_[j] = VStat::AtUpper;
      } else {
        x_[j] = 0.0;
        stat_[j] = VStat::FreeNB;
      }
    }

    // Row residuals decide the starting basis: the slack when it can absorb
    // the residual, otherwise a signed artificial.
    std::vector<double> activity(m_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& [r, a] : cols_[j]) activity[r] += a * x_[j];
    }
    basis_.assign(m_, -1);
    phase1_cost_.assign(n_real_, 0.0);
    for (int i = 0; i < m_; ++i) {
      int s = n_struct_ + i;
      double resid = rhs_[i] - activity[i];
      if (resid >= lb_[s] - 1e-12 && resid <= ub_[s] + 1e-12) {
        basis_[i] = s;
        stat_[s] = VStat::Basic;
        x_[s] = std::clamp(resid, lb_[s], ub_[s]);
        continue;
      }
      double slack_at = resid < lb_[s] ? lb_[s] : ub_[s];
      x_[s] = slack_at;
      stat_[s] = slack_at == lb_[s] ? VStat::AtLower : VStat::AtUpper;
      double leftover = resid - slack_at;

      int art = static_cast<int>(cols_.size());
      cols_.push_back({{i, 1.0}});
      if (leftover >= 0) {
        lb_.push_back(0.0);
        ub_.push_back(kLpInfinity);
        phase1_cost_.push_back(1.0);
      } else {
        lb_.push_back(-kLpInfinity);
        ub_.push_back(0.0);
        phase1_cost_.push_back(-1.0);
      }
      cost_.push_back(0.0);
      x_.push_back(leftover);
      stat_.push_back(VStat::Basic);
      basis_[i] = art;
      has_artificials_ = true;
    }
    n_total_ = static_cast<int>(cols_.size());
    if (!has_artificials_) phase1_cost_.assign(n_total_, 0.0);

    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;

    // Cold-start snapshot, restored when a warm attempt is abandoned.
    x0_ = x_;
    stat0_ = stat_;
    basis0_ = basis_;
    lb0_ = lb_;
    ub0_ = ub_;
  }

  double& B(int r, int c) { return binv_[static_cast<std::size_t>(r) * m_ + c]; }
  const double& B(int r, int c) const {
    return binv_[static_cast<std::size_t>(r) * m_ + c];
  }

  std::vector<double> duals(const std::vector<double>& c) const {
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int i = 0; i < m_; ++i) y[i] += cb * row[i];
    }
    return y;
  }

  std::vector<double> ftran(int j) const {
    // w = B^{-1} A_j from the sparse column.
    std::vector<double> w(m_, 0.0);
    for (const auto& [row, a] : cols_[j]) {
      for (int r = 0; r < m_; ++r) w[r] += a * B(r, row);
    }
    return w;
  }

  bool try_refactor() {
    // Rebuild B^{-1} by Gauss-Jordan elimination. A numerically dependent
    // basis column is repaired in place: the offender leaves for its nearest
    // bound and the slack of an unpivoted row takes the slot.
    for (int repairs = 0; repairs <= m_; ++repairs) {
      std::vector<double> mat(static_cast<std::size_t>(m_) * m_, 0.0);
      for (int slot = 0; slot < m_; ++slot) {
        for (const auto& [row, a] : cols_[basis_[slot]]) {
          mat[static_cast<std::size_t>(row) * m_ + slot] = a;
        }
      }
      std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
      for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
      std::vector<int> rowperm(m_);
      for (int i = 0; i < m_; ++i) rowperm[i] = i;

      int failed_col = -1;
      for (int col = 0; col < m_ && failed_col < 0; ++col) {
        int piv_row = -1;
        double piv_mag = 0.0;
        for (int r = col; r < m_; ++r) {
          double v = std::abs(mat[static_cast<std::size_t>(r) * m_ + col]);
          if (v > piv_mag) {
            piv_mag = v;
            piv_row = r;
          }
        }
        if (piv_row < 0 || piv_mag < 1e-11) {
          failed_col = col;
          break;
        }
        if (piv_row != col) {
          for (int c2 = 0; c2 < m_; ++c2) {
            std::swap(mat[static_cast<std::size_t>(piv_row) * m_ + c2],
                      mat[static_cast<std::size_t>(col) * m_ + c2]);
            std::swap(inv[static_cast<std::size_t>(piv_row) * m_ + c2],
                      inv[static_cast<std::size_t>(col) * m_ + c2]);
          }
          std::swap(rowperm[piv_row], rowperm[col]);
        }
        double piv = mat[static_cast<std::size_t>(col) * m_ + col];
        for (int c2 = 0; c2 < m_; ++c2) {
          mat[static_cast<std::size_t>(col) * m_ + c2] /= piv;
          inv[static_cast<std::size_t>(col) * m_ + c2] /= piv;
        }
        for (int r = 0; r < m_; ++r) {
          if (r == col) continue;
          double f = mat[static_cast<std::size_t>(r) * m_ + col];
          if (f == 0.0) continue;
          for (int c2 = 0; c2 < m_; ++c2) {
            mat[static_cast<std::size_t>(r) * m_ + c2] -=
                f * mat[static_cast<std::size_t>(col) * m_ + c2];
            inv[static_cast<std::size_t>(r) * m_ + c2] -=
                f * inv[static_cast<std::size_t>(col) * m_ + c2];
          }
        }
      }
      if (failed_col < 0) {
        binv_ = std::move(inv);
        pivots_since_refactor_ = 0;
        return true;
      }

      int slack = -1;
      for (int r = failed_col; r < m_ && slack < 0; ++r) {
        int candidate = n_struct_ + rowperm[r];
        if (stat_[candidate] != VStat::Basic) slack = candidate;
      }
      if (slack < 0) return false;
      int ejected = basis_[failed_col];
      if (lb_[ejected] > -kLpInfinity) {
        x_[ejected] = lb_[ejected];
        stat_[ejected] = VStat::AtLower;
      } else if (ub_[ejected] < kLpInfinity) {
        x_[ejected] = ub_[ejected];
        stat_[ejected] = VStat::AtUpper;
      } else {
        x_[ejected] = 0.0;
        stat_[ejected] = VStat::FreeNB;
      }
      stat_[slack] = VStat::Basic;
      basis_[failed_col] = slack;
    }
    return false;
  }

  bool primal_feasible() const {
    for (int r = 0; r < m_; ++r) {
      int b = basis_[r];
      if (x_[b] < lb_[b] - 1e-7 || x_[b] > ub_[b] + 1e-7) return false;
    }
    return true;
  }

  // Refactorizes and, when a repair disturbed feasibility, restores it with
  // dual pivots under the active cost vector.
  void refactor_fix(const std::vector<double>& c) {
    if (!try_refactor()) throw SingularBasis{};
    recompute_basics();
    if (!primal_feasible()) {
      if (dual_phase(c) != DualOutcome::Feasible) throw SingularBasis{};
    }
  }

  void recompute_basics() {
    std::vector<double> beff = rhs_;
    for (int j = 0; j < n_total_; ++j) {
      if (stat_[j] == VStat::Basic || x_[j] == 0.0) continue;
      for (const auto& [r, a] : cols_[j]) beff[r] -= a * x_[j];
    }
    for (int slot = 0; slot < m_; ++slot) {
      double v = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(slot) * m_];
      for (int i = 0; i < m_; ++i) v += row[i] * beff[i];
      x_[basis_[slot]] = v;
    }
  }

  double residual() const {
    double worst = 0.0;
    std::vector<double> activity(m_, 0.0);
    for (int j = 0; j < n_total_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& [r, a] : cols_[j]) activity[r] += a * x_[j];
    }
    for (int i = 0; i < m_; ++i) worst = std::max(worst, std::abs(activity[i] - rhs_[i]));
    for (int j = 0; j < n_total_; ++j) {
      if (lb_[j] > -kLpInfinity) worst = std::max(worst, lb_[j] - x_[j]);
      if (ub_[j] < kLpInfinity) worst = std::max(worst, x_[j] - ub_[j]);
    }
    return worst;
  }

  Phase iterate(const std::vector<double>& c) {
    const long iteration_cap =
        20000 + 200L * (m_ + n_total_);  // safety net, never binding in practice
    int degenerate_streak = 0;

    for (long iter = 0; iter < iteration_cap; ++iter, ++iterations_) {
      if (pivots_since_refactor_ >= kRefactorInterval) {
        refactor_fix(c);
      }
      std::vector<double> y = duals(c);

      const bool bland = conservative_ || degenerate_streak >= kBlandTrigger;
      int enter = -1;
      double best_score = kDjTol;
      double enter_dj = 0.0;
      for (int j = 0; j < n_total_; ++j) {
        if (stat_[j] == VStat::Basic) continue;
        if (lb_[j] == ub_[j]) continue;  // fixed
        double d = c[j];
        for (const auto& [r, a] : cols_[j]) d -= y[r] * a;
        bool eligible = false;
        if (stat_[j] == VStat::AtLower && d < -kDjTol) eligible = true;
        else if (stat_[j] == VStat::AtUpper && d > kDjTol) eligible = true;
        else if (stat_[j] == VStat::FreeNB && std::abs(d) > kDjTol) eligible = true;
        if (!eligible) continue;
        if (bland) {
          enter = j;
          enter_dj = d;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          enter = j;
          enter_dj = d;
        }
      }
      if (enter < 0) return Phase::Optimal;

      const double sigma = (stat_[enter] == VStat::AtUpper ||
                            (stat_[enter] == VStat::FreeNB && enter_dj > 0))
                               ? -1.0
                               : 1.0;
      std::vector<double> w = ftran(enter);

      // Ratio test: smallest step at which a basic variable or the entering
      // variable's opposite bound blocks.
      double t_best = kLpInfinity;
      int leave_slot = -1;  // -1 = bound flip
      double leave_pivot = 0.0;
      if (stat_[enter] != VStat::FreeNB && lb_[enter] > -kLpInfinity &&
          ub_[enter] < kLpInfinity) {
        t_best = ub_[enter] - lb_[enter];
      }
      for (int r = 0; r < m_; ++r) {
        double rate = -sigma * w[r];
        if (std::abs(rate) < kPivotHardTol) continue;
        int b = basis_[r];
        double t;
        if (rate < 0) {
          if (lb_[b] == -kLpInfinity) continue;
          t = (x_[b] - lb_[b]) / (-rate);
        } else {
          if (ub_[b] == kLpInfinity) continue;
          t = (ub_[b] - x_[b]) / rate;
        }
        if (t < 0) t = 0;
        bool take = false;
        if (t < t_best - kRatioTieTol) {
          take = true;
        } else if (t <= t_best + kRatioTieTol && leave_slot >= 0) {
          // Near-tie: prefer the numerically safer pivot; Bland breaks ties
          // by the smallest variable index for finiteness.
          if (bland) {
            take = basis_[r] < basis_[leave_slot];
          } else {
            take = std::abs(w[r]) > std::abs(leave_pivot) + 1e-12;
          }
        } else if (t <= t_best + kRatioTieTol && leave_slot < 0 && t < t_best) {
          take = true;
        }
        if (take) {
          t_best = t;
          leave_slot = r;
          leave_pivot = w[r];
        }
      }

      if (t_best == kLpInfinity) return Phase::Unbounded;

      if (leave_slot < 0) {
        // Bound flip: the entering variable traverses to its other bound.
        for (int r = 0; r < m_; ++r) {
          if (w[r] != 0.0) x_[basis_[r]] -= sigma * t_best * w[r];
        }
        x_[enter] = sigma > 0 ? ub_[enter] : lb_[enter];
        stat_[enter] = sigma > 0 ? VStat::AtUpper : VStat::AtLower;
        degenerate_streak = 0;  // flips always make progress (lb < ub)
        continue;
      }

      if (std::abs(leave_pivot) < kPivotHardTol) {
        refactor_fix(c);
        continue;
      }

      // Pivot: update values, statuses and the inverse.
      for (int r = 0; r < m_; ++r) {
        if (w[r] != 0.0) x_[basis_[r]] -= sigma * t_best * w[r];
      }
      int leaving = basis_[leave_slot];
      double rate = -sigma * leave_pivot;
      if (rate < 0) {
        x_[leaving] = lb_[leaving];
        stat_[leaving] = VStat::AtLower;
      } else {
        x_[leaving] = ub_[leaving];
        stat_[leaving] = VStat::AtUpper;
      }
      x_[enter] = x_[enter] + sigma * t_best;
      stat_[enter] = VStat::Basic;
      basis_[leave_slot] = enter;

      double piv = leave_pivot;
      double* prow = &binv_[static_cast<std::size_t>(leave_slot) * m_];
      for (int i = 0; i < m_; ++i) prow[i] /= piv;
      for (int r = 0; r < m_; ++r) {
        if (r == leave_slot || w[r] == 0.0) continue;
        double f = w[r];
        double* row = &binv_[static_cast<std::size_t>(r) * m_];
        for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
      }
      ++pivots_since_refactor_;

      if (t_best < kDegenerateStep) {
        ++degenerate_streak;
      } else {
        degenerate_streak = 0;
      }
    }
    return Phase::IterationLimit;
  }

  [[noreturn]] void throw_iteration_limit() {
    throw std::runtime_error("simplex: iteration limit exceeded");
  }

  int m_ = 0;
  int n_struct_ = 0;
  int n_real_ = 0;   // structural + slack
  int n_total_ = 0;  // + artificials
  bool has_artificials_ = false;
  bool bounds_conflict_ = false;
  bool conservative_ = false;
  double feas_tol_ = 1e-7;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lb_, ub_, cost_, phase1_cost_, rhs_, x_;
  std::vector<double> row_scale_;
  std::vector<double> x0_, lb0_, ub0_;
  std::vector<VStat> stat_;
  std::vector<VStat> stat0_;
  std::vector<int> basis_;
  std::vector<int> basis0_;
  std::vector<double> binv_;
  long iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearModel& model) {
  model.check_valid();
  Simplex simplex(model);
  return simplex.run();
}

LpResult solve_lp_warm(const LinearModel& model, const SimplexBasis* warm_in,
                       SimplexBasis* warm_out) {
  model.check_valid();
  if (warm_out) {
    warm_out->basic.clear();
    warm_out->stat.clear();
  }
  Simplex simplex(model);
  return simplex.run_impl(warm_in && !warm_in->empty() ? warm_in : nullptr, warm_out);
}

std::vector<ModelRow> gomory_cuts(const LinearModel& model, int max_cuts) {
  model.check_valid();
  Simplex simplex(model);
  LpResult result = simplex.run();
  if (result.status != LpStatus::Optimal) return {};
  return simplex.extract_gomory(model, max_cuts);
}

}  // namespace lpstcn
