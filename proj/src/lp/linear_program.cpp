#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ldes/lp.hpp"

namespace ldes::lp {

LinearProgram::LinearProgram(std::string name) : name_(std::move(name)) {}

VarId LinearProgram::add_variable(std::string name, double lower, double upper) {
  if (name.empty()) throw std::invalid_argument("variable name must not be empty");
  if (std::isnan(lower) || std::isnan(upper)) {
    throw std::invalid_argument("NaN bound on variable " + name);
  }
  const VarId id{static_cast<std::int32_t>(variables_.size())};
  if (!var_index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate variable name " + name);
  }
  variables_.push_back({std::move(name), lower, upper});
  return id;
}

RowId LinearProgram::add_constraint(std::string name, SparseRow row, Relation relation,
                                    double rhs) {
  if (name.empty()) throw std::invalid_argument("constraint name must not be empty");
  if (name == objective_.name) {
    throw std::invalid_argument("constraint name " + name + " collides with the objective row");
  }
  if (std::isnan(rhs)) throw std::invalid_argument("NaN rhs on constraint " + name);
  for (const auto& term : row) {
    check_var(term.var);
    if (std::isnan(term.coef)) throw std::invalid_argument("NaN coefficient in constraint " + name);
  }
  const RowId id{static_cast<std::int32_t>(constraints_.size())};
  if (!row_index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate constraint name " + name);
  }
  constraints_.push_back({std::move(name), merged(std::move(row)), relation, rhs});
  return id;
}

void LinearProgram::set_bounds(VarId var, double lower, double upper) {
  check_var(var);
  if (std::isnan(lower) || std::isnan(upper)) throw std::invalid_argument("NaN bound");
  auto& v = variables_[static_cast<std::size_t>(var.index)];
  v.lower = lower;
  v.upper = upper;
}

void LinearProgram::set_objective_name(std::string name) {
  if (row_index_.contains(name)) {
    throw std::invalid_argument("objective name " + name + " collides with a constraint");
  }
  objective_.name = std::move(name);
}

void LinearProgram::add_objective_term(VarId var, double coef) {
  check_var(var);
  if (std::isnan(coef)) throw std::invalid_argument("NaN objective coefficient");
  for (auto& term : objective_.coefficients) {
    if (term.var == var) {
      term.coef += coef;
      return;
    }
  }
  objective_.coefficients.push_back({var, coef});
}

std::optional<VarId> LinearProgram::find_variable(std::string_view name) const {
  const auto it = var_index_.find(std::string(name));
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<RowId> LinearProgram::find_constraint(std::string_view name) const {
  const auto it = row_index_.find(std::string(name));
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> LinearProgram::validate() const {
  std::vector<std::string> issues;
  const auto n = static_cast<std::int32_t>(variables_.size());
  auto check_row = [&](const std::string& row_name, const SparseRow& row) {
    for (const auto& t : row) {
      if (t.var.index < 0 || t.var.index >= n) {
        issues.push_back(row_name + ": reference to undeclared variable " +
                         std::to_string(t.var.index));
      }
      if (std::isnan(t.coef)) issues.push_back(row_name + ": NaN coefficient");
    }
  };
  std::set<std::string> names;
  for (const auto& v : variables_) {
    if (!names.insert(v.name).second) issues.push_back("duplicate variable " + v.name);
    if (std::isnan(v.lower) || std::isnan(v.upper)) issues.push_back(v.name + ": NaN bound");
  }
  names.clear();
  names.insert(objective_.name);
  for (const auto& c : constraints_) {
    if (!names.insert(c.name).second) issues.push_back("duplicate row " + c.name);
    if (std::isnan(c.rhs)) issues.push_back(c.name + ": NaN rhs");
    check_row(c.name, c.row);
  }
  check_row(objective_.name, objective_.coefficients);
  if (std::isnan(objective_.constant)) issues.push_back("NaN objective constant");
  return issues;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> LinearProgram::constraint_matrix() const {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    for (const auto& t : constraints_[i].row) {
      triplets.emplace_back(static_cast<int>(i), t.var.index, t.coef);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(num_constraints(), num_variables());
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Eigen::VectorXd LinearProgram::objective_vector() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(num_variables());
  for (const auto& t : objective_.coefficients) c[t.var.index] += t.coef;
  return c;
}

Eigen::VectorXd LinearProgram::lower_bounds() const {
  Eigen::VectorXd l(num_variables());
  for (Eigen::Index j = 0; j < l.size(); ++j) l[j] = variables_[static_cast<std::size_t>(j)].lower;
  return l;
}

Eigen::VectorXd LinearProgram::upper_bounds() const {
  Eigen::VectorXd u(num_variables());
  for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = variables_[static_cast<std::size_t>(j)].upper;
  return u;
}

double LinearProgram::evaluate_objective(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double value = objective_.constant;
  for (const auto& t : objective_.coefficients) value += t.coef * x[t.var.index];
  return value;
}

void LinearProgram::check_var(VarId var) const {
  if (var.index < 0 || static_cast<std::size_t>(var.index) >= variables_.size()) {
    throw std::invalid_argument("reference to undeclared variable index " +
                                std::to_string(var.index));
  }
}

SparseRow LinearProgram::merged(SparseRow row) const {
  // Keep first-occurrence order so emitted artifacts stay stable.
  SparseRow out;
  out.reserve(row.size());
  std::unordered_map<std::int32_t, std::size_t> slot;
  for (const auto& t : row) {
    const auto [it, fresh] = slot.emplace(t.var.index, out.size());
    if (fresh) {
      out.push_back(t);
    } else {
      out[it->second].coef += t.coef;
    }
  }
  return out;
}

namespace {

bool close(double a, double b, double rel_tol) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::map<std::string, double> named_row(const LinearProgram& lp, const SparseRow& row) {
  std::map<std::string, double> out;
  for (const auto& t : row) {
    if (t.coef != 0.0) out[lp.variable(t.var).name] += t.coef;
  }
  return out;
}

bool rows_equal(const std::map<std::string, double>& a, const std::map<std::string, double>& b,
                double rel_tol) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !close(ia->second, ib->second, rel_tol)) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const LinearProgram& a, const LinearProgram& b, double rel_tol) {
  if (a.num_variables() != b.num_variables() || a.num_constraints() != b.num_constraints()) {
    return false;
  }
  for (const auto& va : a.variables()) {
    const auto jb = b.find_variable(va.name);
    if (!jb) return false;
    const auto& vb = b.variable(*jb);
    if (!close(va.lower, vb.lower, rel_tol) || !close(va.upper, vb.upper, rel_tol)) return false;
  }
  const auto& oa = a.objective();
  const auto& ob = b.objective();
  if (oa.sense != ob.sense || !close(oa.constant, ob.constant, rel_tol)) return false;
  if (!rows_equal(named_row(a, oa.coefficients), named_row(b, ob.coefficients), rel_tol)) {
    return false;
  }
  for (const auto& ca : a.constraints()) {
    const auto ib = b.find_constraint(ca.name);
    if (!ib) return false;
    const auto& cb = b.constraint(*ib);
    if (ca.relation != cb.relation || !close(ca.rhs, cb.rhs, rel_tol)) return false;
    if (!rows_equal(named_row(a, ca.row), named_row(b, cb.row), rel_tol)) return false;
  }
  return true;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::limit: return "limit";
  }
  return "limit";
}

ResidualReport check_solution(const LinearProgram& lp, const SolveOutcome& outcome, double tol) {
  if (outcome.primal.size() != lp.num_variables()) {
    throw std::invalid_argument("primal vector size does not match the LP");
  }
  ResidualReport report;
  report.tolerance = tol;
  const Eigen::VectorXd& x = outcome.primal;

  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto& v = lp.variables()[static_cast<std::size_t>(j)];
    const double violation = std::max({0.0, v.lower - x[j], x[j] - v.upper});
    if (violation > report.max_bound_violation) {
      report.max_bound_violation = violation;
      report.worst_variable = VarId{static_cast<std::int32_t>(j)};
    }
  }

  const Eigen::VectorXd activity = lp.constraint_matrix() * x;
  report.row_residual.resize(activity.size());
  for (Eigen::Index i = 0; i < activity.size(); ++i) {
    const auto& c = lp.constraints()[static_cast<std::size_t>(i)];
    double violation = 0.0;
    switch (c.relation) {
      case Relation::less_equal:
        report.row_residual[i] = activity[i] - c.rhs;
        violation = std::max(0.0, report.row_residual[i]);
        break;
      case Relation::greater_equal:
        report.row_residual[i] = c.rhs - activity[i];
        violation = std::max(0.0, report.row_residual[i]);
        break;
      case Relation::equal:
        report.row_residual[i] = activity[i] - c.rhs;
        violation = std::abs(report.row_residual[i]);
        break;
    }
    if (violation > report.max_constraint_violation) {
      report.max_constraint_violation = violation;
      report.worst_constraint = RowId{static_cast<std::int32_t>(i)};
    }
  }

  const double recomputed = lp.evaluate_objective(x);
  report.objective_delta =
      std::abs(recomputed - outcome.objective) / std::max(1.0, std::abs(outcome.objective));
  return report;
}

}  // namespace ldes::lp
