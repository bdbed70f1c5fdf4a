#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldes/domain.hpp"
#include "ldes/lp.hpp"

namespace ldes::capacity {

using lp::RowId;
using lp::VarId;

/// Handles of one asset-by-hour variable family. Assets outside the family's
/// index set have no row.
class VarGrid {
 public:
  VarGrid() = default;
  VarGrid(std::size_t assets, int hours);

  bool contains(std::size_t asset) const { return asset < rows_.size() && !rows_[asset].empty(); }
  VarId operator()(std::size_t asset, int t) const;  // t is 0-based
  const std::vector<VarId>& row(std::size_t asset) const { return rows_.at(asset); }
  void assign(std::size_t asset, std::vector<VarId> handles);
  std::size_t size() const;
  int hours() const { return hours_; }

 private:
  std::vector<std::vector<VarId>> rows_;
  int hours_ = 0;
};

/// Meaning of one LP column, for tables and audit files. `hour` is 1-based,
/// 0 for time-invariant variables.
struct ColumnInfo {
  std::string family;
  std::string asset;
  int hour = 0;
};

/// Per-asset vectors hold an invalid VarId for assets outside the family.
struct VariableCatalog {
  VarGrid p;
  VarGrid r_up;
  VarGrid p_ch;
  VarGrid p_dis;
  VarGrid r_st_up;
  VarGrid v;
  std::vector<VarId> v_ini;
  std::vector<VarId> delta_neg;
  std::vector<VarId> delta_pos;
  std::vector<VarId> delta_res_short;
  std::vector<VarId> p_rem;
  std::vector<VarId> x_inv_gen;
  std::vector<VarId> x_ret_gen;
  std::vector<VarId> x_st_energy;
  std::vector<VarId> x_st_power;
  std::optional<VarId> c_bc;
  std::optional<VarId> q_over;

  std::vector<ColumnInfo> columns;  // indexed by VarId
};

enum class ConstraintTag {
  power_balance,
  reserve_margin,
  soc_first_period,
  soc_recursion,
  soc_cyclic,
  soc_capacity_candidate,
  storage_discharge_fixed,
  storage_charge_candidate,
  storage_discharge_candidate,
  storage_reserve_headroom,
  storage_duration,
  firm_fixed_output,
  renewable_fixed_output,
  firm_fixed_reserve,
  firm_candidate_output,
  renewable_candidate_output,
  firm_candidate_reserve,
  renewable_candidate_reserve,
  ramp_up_fixed,
  ramp_down_fixed,
  ramp_up_candidate,
  ramp_down_candidate,
  remaining_capacity,
  cost_budget,
};

std::string to_string(ConstraintTag tag);
std::optional<ConstraintTag> parse_constraint_tag(const std::string& text);

struct RegistryEntry {
  ConstraintTag tag;
  std::string description;
};

class ConstraintRegistry {
 public:
  void record(RowId row, ConstraintTag tag, std::string description);
  const RegistryEntry& at(RowId row) const { return entries_.at(static_cast<std::size_t>(row.index)); }
  std::size_t size() const { return entries_.size(); }
  /// True when every LP row has exactly one entry.
  bool covers(const lp::LinearProgram& lp) const { return entries_.size() == static_cast<std::size_t>(lp.num_constraints()); }
  std::vector<RowId> rows_with(ConstraintTag tag) const;

 private:
  std::vector<RegistryEntry> entries_;
};

enum class ModelKind { baseline, opportunity };

struct ModelArtifacts {
  ModelKind kind = ModelKind::baseline;
  lp::LinearProgram lp;
  VariableCatalog catalog;
  ConstraintRegistry registry;
  IndexSets sets;
  int hours = 0;

  // Opportunity model only.
  double q_star = 0.0;
  double overrun_penalty = 0.0;
  double ldes_power_mw = 0.0;  // sum of fixed LDES power
  std::optional<RowId> budget_row;
};

struct LinearExpression {
  lp::SparseRow terms;
  double constant = 0.0;

  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Thrown when the opportunity model would have no LDES quantity to price.
class UnboundedBoundaryCost : public std::invalid_argument {
 public:
  UnboundedBoundaryCost() : std::invalid_argument("unbounded boundary cost: zero LDES quantity") {}
};

// Model blocks. Each appends rows (and sets the bounds of the variables it
// governs) and returns the rows it created.
void create_variables(ModelArtifacts& model, const SystemInstance& instance);
std::vector<RowId> add_balance_block(ModelArtifacts& model, const SystemInstance& instance);
std::vector<RowId> add_reserve_block(ModelArtifacts& model, const SystemInstance& instance);
std::vector<RowId> add_storage_block(ModelArtifacts& model, const SystemInstance& instance,
                                     const PolicyOverrides& overrides);
std::vector<RowId> add_generator_block(ModelArtifacts& model, const SystemInstance& instance,
                                       const PolicyOverrides& overrides);

/// Total annual system cost (investment, operation, FO&M) on the model's
/// variables. Fixed-capacity FO&M lands in the constant.
LinearExpression system_cost_expression(const ModelArtifacts& model, const SystemInstance& instance);

/// Largest cost coefficient appearing in the instance (at least 1).
double max_cost_coefficient(const SystemInstance& instance);

inline constexpr double kDefaultOverrunPenaltyFactor = 1e6;

ModelArtifacts build_baseline_model(const SystemInstance& instance, const PolicyOverrides& overrides);

/// Maximizes the boundary cost subject to the cost budget `q_star`.
/// Throws UnboundedBoundaryCost when no long-duration candidate has a
/// positive fixed power in `overrides`.
ModelArtifacts build_opportunity_model(const SystemInstance& instance,
                                       const PolicyOverrides& overrides, double q_star);

/// Hours in which storage `h` both charges and discharges above `tol`.
struct SimultaneousFlow {
  std::string storage_id;
  int hour = 0;  // 1-based
  double charge = 0.0;
  double discharge = 0.0;
};
std::vector<SimultaneousFlow> find_simultaneous_charge(const ModelArtifacts& model,
                                                       const SystemInstance& instance,
                                                       const Eigen::VectorXd& primal, double tol);

}  // namespace ldes::capacity
