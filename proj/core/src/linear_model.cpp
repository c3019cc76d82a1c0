#include "lpstcn/linear_model.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace lpstcn {

void LinearModel::check_valid() const {
  for (int j = 0; j < num_vars(); ++j) {
    const ModelVariable& v = vars[j];
    if (v.lb > v.ub) {
      throw std::invalid_argument("variable " + std::to_string(j) +
                                  " has lb > ub");
    }
    if (!std::isfinite(v.obj)) {
      throw std::invalid_argument("variable " + std::to_string(j) +
                                  " has non-finite objective coefficient");
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    for (const auto& [j, c] : rows[i].coeffs) {
      if (j < 0 || j >= num_vars()) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " references undeclared variable");
      }
      if (!std::isfinite(c)) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " has non-finite coefficient");
      }
    }
    if (!std::isfinite(rows[i].rhs)) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " has non-finite rhs");
    }
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::Feasible: return "Feasible";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::TimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

void write_lp_format(const LinearModel& model, std::ostream& os) {
  os << "Minimize\n obj:";
  for (int j = 0; j < model.num_vars(); ++j) {
    double c = model.vars[j].obj;
    if (c == 0.0) continue;
    os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << j;
  }
  os << "\nSubject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const ModelRow& row = model.rows[i];
    os << " c" << i << ":";
    for (const auto& [j, c] : row.coeffs) {
      os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << j;
    }
    switch (row.sense) {
      case RowSense::LessEqual: os << " <= "; break;
      case RowSense::GreaterEqual: os << " >= "; break;
      case RowSense::Equal: os << " = "; break;
    }
    os << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const ModelVariable& v = model.vars[j];
    if (v.lb == -kLpInfinity && v.ub == kLpInfinity) {
      os << " x" << j << " free\n";
    } else if (v.ub == kLpInfinity) {
      os << " " << v.lb << " <= x" << j << "\n";
    } else {
      os << " " << v.lb << " <= x" << j << " <= " << v.ub << "\n";
    }
  }
  os << "General\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.vars[j].integer) os << " x" << j << "\n";
  }
  os << "End\n";
}

}  // namespace lpstcn
