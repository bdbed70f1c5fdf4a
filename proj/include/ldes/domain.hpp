#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace ldes {

/// Hourly series indexed 0..T-1 (hour 1 of the horizon is element 0).
using Series = Eigen::VectorXd;

inline Series constant_series(Eigen::Index hours, double value) {
  return Series::Constant(hours, value);
}

enum class GeneratorKind { firm, renewable };
enum class AssetStatus { fixed, candidate };
enum class DurationClass { short_duration, long_duration };

struct GeneratorSpec {
  std::string id;
  std::string technology;
  std::string region;
  GeneratorKind kind = GeneratorKind::firm;
  AssetStatus status = AssetStatus::fixed;
  bool is_gas = false;
  bool provides_reserve = false;

  double capacity_mw = 0.0;
  double invest_cost_per_mw_yr = 0.0;
  double fom_cost_per_mw_yr = 0.0;
  Series gen_cost_per_mwh;      // length T
  Series reserve_cost_per_mw;   // length T
  Series availability;          // length T, all ones for firm units

  double reserve_factor = 0.0;
  double ramp_up_factor = 1.0;
  double ramp_down_factor = 1.0;

  double invest_limit_mw = 0.0;
  double retire_min_frac = 0.0;
  double retire_max_frac = 0.0;

  bool is_firm() const { return kind == GeneratorKind::firm; }
  bool is_candidate() const { return status == AssetStatus::candidate; }
};

/// For candidates, `power_mw` and `soc_max_mwh` hold the pre-investment
/// (initial) power and energy ceilings.
struct StorageSpec {
  std::string id;
  std::string technology;
  std::string region;
  DurationClass duration_class = DurationClass::short_duration;
  AssetStatus status = AssetStatus::fixed;

  double power_mw = 0.0;
  double duration_h = 1.0;
  double rte = 1.0;
  double soc_min_mwh = 0.0;
  double soc_max_mwh = 0.0;

  double fom_cost_per_mw_yr = 0.0;
  double invest_cost_energy_per_mwh_yr = 0.0;
  double invest_cost_power_per_mw_yr = 0.0;
  double invest_limit_power_mw = 0.0;
  double invest_limit_energy_mwh = 0.0;

  bool is_long() const { return duration_class == DurationClass::long_duration; }
  bool is_candidate() const { return status == AssetStatus::candidate; }
};

struct SystemInstance {
  int horizon_hours = 0;
  Series demand_mw;
  Series reserve_req_mw;
  double imbalance_cost = 0.0;
  double reserve_short_cost = 0.0;
  std::vector<GeneratorSpec> generators;
  std::vector<StorageSpec> storages;
};

struct RetirementWindow {
  double min_frac = 0.0;
  double max_frac = 0.0;
};

struct StorageInvestmentCap {
  std::optional<double> power_mw;
  std::optional<double> energy_mwh;
};

/// Per-asset overrides keyed by asset id. Anything absent falls back to the
/// value carried by the spec record.
struct PolicyOverrides {
  std::map<std::string, double> generation_invest_cap_mw;
  std::map<std::string, StorageInvestmentCap> storage_invest_cap;
  std::map<std::string, RetirementWindow> retirement;
  std::map<std::string, double> ldes_fixed_power_mw;
  std::optional<double> overrun_penalty;
};

struct Violation {
  std::string asset_id;  // empty for system-level fields
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_instance(const SystemInstance& instance);

/// Throws std::invalid_argument with the report summary when invalid.
void require_valid(const SystemInstance& instance);

/// Positions into SystemInstance::generators / ::storages.
struct IndexSets {
  std::vector<std::size_t> gen_candidate;
  std::vector<std::size_t> gen_fixed;
  std::vector<std::size_t> gen_firm_fixed;
  std::vector<std::size_t> gen_renew_fixed;
  std::vector<std::size_t> gen_renew_candidate;
  std::vector<std::size_t> gen_firm_candidate;
  std::vector<std::size_t> gen_gas_fixed;
  std::vector<std::size_t> gen_reserve_providers;

  std::vector<std::size_t> storage_fixed;
  std::vector<std::size_t> storage_candidate;
  std::vector<std::size_t> storage_short_fixed;
  std::vector<std::size_t> storage_long_fixed;
  std::vector<std::size_t> storage_short_candidate;
  std::vector<std::size_t> storage_long_candidate;

  friend bool operator==(const IndexSets&, const IndexSets&) = default;
};

IndexSets classify_assets(const SystemInstance& instance);

std::string to_string(GeneratorKind kind);
std::string to_string(AssetStatus status);
std::string to_string(DurationClass duration_class);
std::optional<GeneratorKind> parse_generator_kind(const std::string& text);
std::optional<AssetStatus> parse_asset_status(const std::string& text);
std::optional<DurationClass> parse_duration_class(const std::string& text);

}  // namespace ldes
