#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldes/capacity_model.hpp"
#include "ldes/domain.hpp"
#include "ldes/lp.hpp"

namespace ldes::scenario {

struct CostItem {
  std::string category;
  std::string label;  // technology or asset id; empty for system-wide items
  double value = 0.0;
};

/// Ordered cost items. Category names:
///   generation, reserve, imbalance, reserve_shortage,
///   fom_fixed_generators, fom_candidate_generators, fom_fixed_storage,
///   fom_candidate_storage, investment_generators, investment_sdes_energy,
///   investment_sdes_power, ldes_opportunity_value
struct CostBreakdown {
  std::vector<CostItem> items;

  double total() const;
  double category_total(std::string_view category) const;
  double value(std::string_view category, std::string_view label) const;
};

CostBreakdown decompose_costs(const capacity::ModelArtifacts& model, const SystemInstance& instance,
                              const Eigen::VectorXd& primal);

struct EngineOptions {
  lp::SolverConfig solver;
  std::optional<double> overrun_penalty;  // default: 1e6 x largest cost coefficient
  int workers = 1;
  bool keep_dispatch = false;  // retain model + primal on each point
};

/// A solved model kept for dispatch/state-of-charge reporting.
struct Solution {
  capacity::ModelArtifacts model;
  lp::SolveOutcome outcome;
};

struct BaselineResult {
  double q_star = 0.0;
  CostBreakdown breakdown;
  std::shared_ptr<const Solution> solution;
};

struct InvestmentItem {
  std::string asset_id;
  std::string technology;
  std::string asset_class;  // "generator", "sdes" or "ldes"
  double power_mw = 0.0;
  double energy_mwh = 0.0;
};

struct StorageTrajectory {
  std::string storage_id;
  bool long_duration = false;
  Series soc_mwh;
};

enum class PointStatus { solved, failed };

struct BoundaryCurvePoint {
  double ldes_power_mw = 0.0;
  PointStatus status = PointStatus::failed;
  std::string diagnostics;

  double q_star = 0.0;
  double boundary_cost_per_mw = 0.0;
  double budget_overrun = 0.0;
  bool viable = false;
  /// q* minus every budget term except the boundary-cost term.
  double net_cost_reduction = 0.0;
  /// Left side of the cost budget row at the optimum.
  double budget_lhs = 0.0;

  std::vector<InvestmentItem> investment_plan;
  CostBreakdown breakdown;
  std::vector<StorageTrajectory> storage_soc;
  std::shared_ptr<const Solution> solution;  // only with keep_dispatch

  double boundary_cost_per_kw() const { return boundary_cost_per_mw / 1000.0; }
  double ldes_power_gw() const { return ldes_power_mw / 1000.0; }
};

/// No investments and no retirements.
PolicyOverrides baseline_overrides(const SystemInstance& instance);

/// Gas fully retired, other firm units kept, renewable and short-duration
/// candidates open, firm candidates closed, LDES fixed at `ldes_power_mw`
/// split evenly across long-duration candidates.
PolicyOverrides opportunity_overrides(const SystemInstance& instance, double ldes_power_mw,
                                      std::optional<double> overrun_penalty = std::nullopt);

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws SolverFailure when the baseline LP does not solve to optimality.
BaselineResult run_baseline(const SystemInstance& instance, const EngineOptions& options = {});

/// Throws SolverFailure or capacity::UnboundedBoundaryCost.
BoundaryCurvePoint run_opportunity(const SystemInstance& instance, double q_star,
                                   double ldes_power_mw, const EngineOptions& options = {});

/// One point per capacity, in input order; a failed solve is recorded on its
/// point and does not abort the sweep. Capacities must be positive and
/// non-decreasing.
std::vector<BoundaryCurvePoint> sweep_boundary_curve(const SystemInstance& instance, double q_star,
                                                     const std::vector<double>& capacities_mw,
                                                     const EngineOptions& options = {});

std::vector<BoundaryCurvePoint> sweep_boundary_curve(const SystemInstance& instance,
                                                     const std::vector<double>& capacities_mw,
                                                     const EngineOptions& options = {});

/// Smallest swept capacity whose point is viable.
std::optional<double> minimum_viable_capacity(const std::vector<BoundaryCurvePoint>& points);

/// Bisects between the last non-viable capacity below the first viable one
/// (or zero) and that viable capacity until the bracket is narrower than
/// `tolerance_mw`. Returns the viable end of the final bracket.
std::optional<double> refine_minimum_viable_capacity(const SystemInstance& instance, double q_star,
                                                     const std::vector<BoundaryCurvePoint>& points,
                                                     double tolerance_mw,
                                                     const EngineOptions& options = {});

}  // namespace ldes::scenario
