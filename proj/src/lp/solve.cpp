#include <chrono>
#include <cmath>

#include "Highs.h"
#include "ldes/lp.hpp"

namespace ldes::lp {

namespace {

HighsLp to_highs(const LinearProgram& lp) {
  HighsLp model;
  const auto n = static_cast<HighsInt>(lp.num_variables());
  const auto m = static_cast<HighsInt>(lp.num_constraints());
  model.num_col_ = n;
  model.num_row_ = m;
  model.sense_ = lp.objective().sense == Sense::maximize ? ObjSense::kMaximize : ObjSense::kMinimize;
  model.offset_ = lp.objective().constant;

  const Eigen::VectorXd c = lp.objective_vector();
  model.col_cost_.assign(c.data(), c.data() + c.size());
  for (const auto& v : lp.variables()) {
    model.col_lower_.push_back(v.lower);
    model.col_upper_.push_back(v.upper);
  }
  for (const auto& row : lp.constraints()) {
    switch (row.relation) {
      case Relation::less_equal:
        model.row_lower_.push_back(-kHighsInf);
        model.row_upper_.push_back(row.rhs);
        break;
      case Relation::greater_equal:
        model.row_lower_.push_back(row.rhs);
        model.row_upper_.push_back(kHighsInf);
        break;
      case Relation::equal:
        model.row_lower_.push_back(row.rhs);
        model.row_upper_.push_back(row.rhs);
        break;
    }
  }

  Eigen::SparseMatrix<double, Eigen::ColMajor> a = lp.constraint_matrix();
  a.makeCompressed();
  model.a_matrix_.format_ = MatrixFormat::kColwise;
  model.a_matrix_.num_col_ = n;
  model.a_matrix_.num_row_ = m;
  model.a_matrix_.start_.assign(a.outerIndexPtr(), a.outerIndexPtr() + n + 1);
  model.a_matrix_.index_.assign(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros());
  model.a_matrix_.value_.assign(a.valuePtr(), a.valuePtr() + a.nonZeros());
  return model;
}

SolveStatus map_status(HighsModelStatus status) {
  switch (status) {
    case HighsModelStatus::kOptimal:
      return SolveStatus::optimal;
    case HighsModelStatus::kInfeasible:
      return SolveStatus::infeasible;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      return SolveStatus::unbounded;
    default:
      return SolveStatus::limit;
  }
}

SolveOutcome solve_with_highs(const LinearProgram& lp, const SolverConfig& config,
                              const std::string& method) {
  const auto started = std::chrono::steady_clock::now();
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("solver", method);
  if (method == "ipm") highs.setOptionValue("run_crossover", "on");
  highs.setOptionValue("primal_feasibility_tolerance", config.feasibility_tol);
  highs.setOptionValue("dual_feasibility_tolerance", config.optimality_tol);
  highs.setOptionValue("random_seed", static_cast<HighsInt>(config.seed % 2147483647ULL));
  if (std::isfinite(config.time_limit_s)) highs.setOptionValue("time_limit", config.time_limit_s);
  if (config.threads > 0) highs.setOptionValue("threads", static_cast<HighsInt>(config.threads));

  SolveOutcome outcome;
  if (highs.passModel(to_highs(lp)) == HighsStatus::kError) {
    outcome.status = SolveStatus::limit;
    outcome.diagnostics = "HiGHS rejected the model";
    return outcome;
  }
  const HighsStatus run_status = highs.run();
  const HighsModelStatus model_status = highs.getModelStatus();
  outcome.status = run_status == HighsStatus::kError ? SolveStatus::limit : map_status(model_status);
  outcome.diagnostics = "highs/" + method + ": " + highs.modelStatusToString(model_status);

  const HighsSolution& solution = highs.getSolution();
  if (solution.value_valid) {
    outcome.primal = Eigen::Map<const Eigen::VectorXd>(
        solution.col_value.data(), static_cast<Eigen::Index>(solution.col_value.size()));
  } else {
    outcome.primal = Eigen::VectorXd::Zero(lp.num_variables());
  }
  if (solution.dual_valid) {
    outcome.duals = Eigen::Map<const Eigen::VectorXd>(
        solution.row_dual.data(), static_cast<Eigen::Index>(solution.row_dual.size()));
  }
  outcome.objective = outcome.optimal() ? highs.getInfo().objective_function_value
                                        : lp.evaluate_objective(outcome.primal);
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return outcome;
}

}  // namespace

std::vector<std::string> available_backends() { return {"highs", "highs-ipm"}; }

SolveOutcome solve(const LinearProgram& lp, const SolverConfig& config) {
  if (const auto issues = lp.validate(); !issues.empty()) {
    throw std::invalid_argument("malformed LP: " + issues.front());
  }
  if (config.backend == "highs") return solve_with_highs(lp, config, "simplex");
  if (config.backend == "highs-ipm") return solve_with_highs(lp, config, "ipm");
  throw SolverUnavailable("unknown LP backend '" + config.backend + "'");
}

}  // namespace ldes::lp
