#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "ldes/scenario.hpp"

namespace ldes::scenario {

PolicyOverrides baseline_overrides(const SystemInstance& instance) {
  PolicyOverrides o;
  for (const auto& g : instance.generators) {
    if (g.is_candidate()) {
      o.generation_invest_cap_mw[g.id] = 0.0;
    } else if (g.is_firm()) {
      o.retirement[g.id] = {0.0, 0.0};
    }
  }
  for (const auto& s : instance.storages) {
    if (s.is_candidate()) o.storage_invest_cap[s.id] = {0.0, 0.0};
  }
  return o;
}

PolicyOverrides opportunity_overrides(const SystemInstance& instance, double ldes_power_mw,
                                      std::optional<double> overrun_penalty) {
  PolicyOverrides o;
  o.overrun_penalty = overrun_penalty;
  for (const auto& g : instance.generators) {
    if (g.is_candidate()) {
      if (g.is_firm()) o.generation_invest_cap_mw[g.id] = 0.0;
    } else if (g.is_firm()) {
      o.retirement[g.id] = g.is_gas ? RetirementWindow{1.0, 1.0} : RetirementWindow{0.0, 0.0};
    }
  }
  std::vector<const StorageSpec*> long_candidates;
  for (const auto& s : instance.storages) {
    if (s.is_candidate() && s.is_long()) long_candidates.push_back(&s);
  }
  for (const auto* s : long_candidates) {
    o.ldes_fixed_power_mw[s->id] = ldes_power_mw / static_cast<double>(long_candidates.size());
  }
  return o;
}

namespace {

lp::SolveOutcome solve_or_throw(const capacity::ModelArtifacts& model, const EngineOptions& options,
                                const char* what) {
  lp::SolveOutcome outcome = lp::solve(model.lp, options.solver);
  if (outcome.status != lp::SolveStatus::optimal) {
    std::ostringstream msg;
    msg << what << " model not solved: " << lp::to_string(outcome.status);
    if (!outcome.diagnostics.empty()) msg << " (" << outcome.diagnostics << ")";
    throw SolverFailure(msg.str());
  }
  return outcome;
}

std::vector<InvestmentItem> investment_plan(const capacity::ModelArtifacts& model,
                                            const SystemInstance& instance,
                                            const Eigen::VectorXd& x) {
  std::vector<InvestmentItem> plan;
  for (const auto g : model.sets.gen_candidate) {
    const auto& gen = instance.generators[g];
    plan.push_back({gen.id, gen.technology, "generator", x[model.catalog.x_inv_gen[g].index], 0.0});
  }
  for (const auto h : model.sets.storage_candidate) {
    const auto& s = instance.storages[h];
    plan.push_back({s.id, s.technology, s.is_long() ? "ldes" : "sdes",
                    x[model.catalog.x_st_power[h].index], x[model.catalog.x_st_energy[h].index]});
  }
  return plan;
}

std::vector<StorageTrajectory> soc_trajectories(const capacity::ModelArtifacts& model,
                                                const SystemInstance& instance,
                                                const Eigen::VectorXd& x) {
  std::vector<StorageTrajectory> out;
  for (std::size_t h = 0; h < instance.storages.size(); ++h) {
    Series soc(model.hours);
    for (int t = 0; t < model.hours; ++t) soc[t] = x[model.catalog.v(h, t).index];
    out.push_back({instance.storages[h].id, instance.storages[h].is_long(), std::move(soc)});
  }
  return out;
}

void check_capacities(const std::vector<double>& capacities) {
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (!(capacities[i] > 0.0) || !std::isfinite(capacities[i])) {
      throw std::invalid_argument("LDES capacities must be finite and > 0");
    }
    if (i > 0 && capacities[i] < capacities[i - 1]) {
      throw std::invalid_argument("LDES capacities must be sorted ascending");
    }
  }
}

}  // namespace

BaselineResult run_baseline(const SystemInstance& instance, const EngineOptions& options) {
  auto model = capacity::build_baseline_model(instance, baseline_overrides(instance));
  auto outcome = solve_or_throw(model, options, "baseline");
  BaselineResult result;
  result.q_star = outcome.objective;
  result.breakdown = decompose_costs(model, instance, outcome.primal);
  result.solution = std::make_shared<const Solution>(Solution{std::move(model), std::move(outcome)});
  return result;
}

BoundaryCurvePoint run_opportunity(const SystemInstance& instance, double q_star,
                                   double ldes_power_mw, const EngineOptions& options) {
  const auto overrides = opportunity_overrides(instance, ldes_power_mw, options.overrun_penalty);
  auto model = capacity::build_opportunity_model(instance, overrides, q_star);
  auto outcome = solve_or_throw(model, options, "opportunity");
  const Eigen::VectorXd& x = outcome.primal;

  BoundaryCurvePoint point;
  point.ldes_power_mw = ldes_power_mw;
  point.status = PointStatus::solved;
  point.diagnostics = outcome.diagnostics;
  point.q_star = q_star;
  point.boundary_cost_per_mw = x[model.catalog.c_bc->index];
  point.budget_overrun = std::max(0.0, x[model.catalog.q_over->index]);
  point.viable = point.budget_overrun <= options.solver.feasibility_tol &&
                 point.boundary_cost_per_mw > 0.0;
  point.breakdown = decompose_costs(model, instance, x);
  point.budget_lhs = point.breakdown.total();
  point.net_cost_reduction =
      q_star - (point.budget_lhs - point.breakdown.category_total("ldes_opportunity_value"));
  point.investment_plan = investment_plan(model, instance, x);
  point.storage_soc = soc_trajectories(model, instance, x);
  if (options.keep_dispatch) {
    point.solution = std::make_shared<const Solution>(Solution{std::move(model), std::move(outcome)});
  }
  return point;
}

std::vector<BoundaryCurvePoint> sweep_boundary_curve(const SystemInstance& instance, double q_star,
                                                     const std::vector<double>& capacities_mw,
                                                     const EngineOptions& options) {
  check_capacities(capacities_mw);
  require_valid(instance);
  std::vector<BoundaryCurvePoint> points(capacities_mw.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < capacities_mw.size(); i = next++) {
      try {
        points[i] = run_opportunity(instance, q_star, capacities_mw[i], options);
      } catch (const std::exception& e) {
        BoundaryCurvePoint failed;
        failed.ldes_power_mw = capacities_mw[i];
        failed.q_star = q_star;
        failed.status = PointStatus::failed;
        failed.diagnostics = e.what();
        points[i] = std::move(failed);
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, options.workers));
  const auto count = std::min(workers, capacities_mw.size());
  if (count <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(work);
  }
  return points;
}

std::vector<BoundaryCurvePoint> sweep_boundary_curve(const SystemInstance& instance,
                                                     const std::vector<double>& capacities_mw,
                                                     const EngineOptions& options) {
  check_capacities(capacities_mw);
  const auto baseline = run_baseline(instance, options);
  return sweep_boundary_curve(instance, baseline.q_star, capacities_mw, options);
}

std::optional<double> minimum_viable_capacity(const std::vector<BoundaryCurvePoint>& points) {
  for (const auto& p : points) {
    if (p.status == PointStatus::solved && p.viable) return p.ldes_power_mw;
  }
  return std::nullopt;
}

std::optional<double> refine_minimum_viable_capacity(const SystemInstance& instance, double q_star,
                                                     const std::vector<BoundaryCurvePoint>& points,
                                                     double tolerance_mw,
                                                     const EngineOptions& options) {
  if (!(tolerance_mw > 0.0)) throw std::invalid_argument("bisection tolerance must be > 0");
  double lo = 0.0;
  std::optional<double> hi;
  for (const auto& p : points) {
    if (p.status != PointStatus::solved) continue;
    if (p.viable) {
      hi = p.ldes_power_mw;
      break;
    }
    lo = p.ldes_power_mw;
  }
  if (!hi) return std::nullopt;
  double upper = *hi;
  while (upper - lo > tolerance_mw) {
    const double mid = 0.5 * (lo + upper);
    const auto point = run_opportunity(instance, q_star, mid, options);
    if (point.viable) {
      upper = mid;
    } else {
      lo = mid;
    }
  }
  return upper;
}

}  // namespace ldes::scenario
