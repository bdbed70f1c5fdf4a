#include "ldes/domain.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ldes {

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(ValidationReport& report) : report_(report) {}

  void add(const std::string& asset, const std::string& field, const std::string& message) {
    report_.violations.push_back({asset, field, message});
  }

  void finite_nonneg(const std::string& asset, const std::string& field, double value) {
    if (!std::isfinite(value)) {
      add(asset, field, "must be finite");
    } else if (value < 0.0) {
      add(asset, field, "must be >= 0");
    }
  }

  void unit_interval(const std::string& asset, const std::string& field, double value) {
    if (!(value >= 0.0 && value <= 1.0)) add(asset, field, "must lie in [0,1]");
  }

  // Length check first; range checks only make sense on a well-sized series.
  bool series_length(const std::string& asset, const std::string& field, const Series& s,
                     int hours) {
    if (s.size() != hours) {
      std::ostringstream msg;
      msg << "series length " << s.size() << " does not match horizon " << hours;
      add(asset, field, msg.str());
      return false;
    }
    return true;
  }

  void series_nonneg(const std::string& asset, const std::string& field, const Series& s) {
    if (!s.allFinite()) {
      add(asset, field, "series contains non-finite values");
    } else if (s.size() > 0 && s.minCoeff() < 0.0) {
      add(asset, field, "series contains negative values");
    }
  }

  void series_unit(const std::string& asset, const std::string& field, const Series& s) {
    if (!s.allFinite() || (s.size() > 0 && (s.minCoeff() < 0.0 || s.maxCoeff() > 1.0))) {
      add(asset, field, "series values must lie in [0,1]");
    }
  }

 private:
  ValidationReport& report_;
};

void validate_generator(ReportBuilder& rb, const GeneratorSpec& g, int hours) {
  const auto& id = g.id;
  if (id.empty()) rb.add(id, "id", "must not be empty");
  rb.finite_nonneg(id, "capacity_mw", g.capacity_mw);
  rb.finite_nonneg(id, "invest_cost_per_mw_yr", g.invest_cost_per_mw_yr);
  rb.finite_nonneg(id, "fom_cost_per_mw_yr", g.fom_cost_per_mw_yr);
  rb.finite_nonneg(id, "invest_limit_mw", g.invest_limit_mw);
  rb.unit_interval(id, "reserve_factor", g.reserve_factor);
  rb.unit_interval(id, "ramp_up_factor", g.ramp_up_factor);
  rb.unit_interval(id, "ramp_down_factor", g.ramp_down_factor);
  rb.unit_interval(id, "retire_min_frac", g.retire_min_frac);
  rb.unit_interval(id, "retire_max_frac", g.retire_max_frac);
  if (g.retire_min_frac > g.retire_max_frac) {
    rb.add(id, "retire_min_frac", "must not exceed retire_max_frac");
  }
  if (rb.series_length(id, "gen_cost_per_mwh", g.gen_cost_per_mwh, hours)) {
    rb.series_nonneg(id, "gen_cost_per_mwh", g.gen_cost_per_mwh);
  }
  if (rb.series_length(id, "reserve_cost_per_mw", g.reserve_cost_per_mw, hours)) {
    rb.series_nonneg(id, "reserve_cost_per_mw", g.reserve_cost_per_mw);
  }
  if (rb.series_length(id, "availability", g.availability, hours)) {
    rb.series_unit(id, "availability", g.availability);
  }
  if (g.is_gas && !(g.kind == GeneratorKind::firm && g.status == AssetStatus::fixed)) {
    rb.add(id, "is_gas", "gas units must be firm and fixed");
  }
}

void validate_storage(ReportBuilder& rb, const StorageSpec& s) {
  const auto& id = s.id;
  if (id.empty()) rb.add(id, "id", "must not be empty");
  rb.finite_nonneg(id, "power_mw", s.power_mw);
  rb.finite_nonneg(id, "soc_min_mwh", s.soc_min_mwh);
  rb.finite_nonneg(id, "soc_max_mwh", s.soc_max_mwh);
  if (s.soc_min_mwh > s.soc_max_mwh) rb.add(id, "soc_min_mwh", "must not exceed soc_max_mwh");
  if (!(s.rte > 0.0 && s.rte <= 1.0)) rb.add(id, "rte", "rte out of (0,1]");
  if (!(s.duration_h > 0.0) || !std::isfinite(s.duration_h)) {
    rb.add(id, "duration_h", "must be > 0");
  }
  rb.finite_nonneg(id, "fom_cost_per_mw_yr", s.fom_cost_per_mw_yr);
  rb.finite_nonneg(id, "invest_cost_energy_per_mwh_yr", s.invest_cost_energy_per_mwh_yr);
  rb.finite_nonneg(id, "invest_cost_power_per_mw_yr", s.invest_cost_power_per_mw_yr);
  rb.finite_nonneg(id, "invest_limit_power_mw", s.invest_limit_power_mw);
  rb.finite_nonneg(id, "invest_limit_energy_mwh", s.invest_limit_energy_mwh);
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    out << "; " << (v.asset_id.empty() ? "<system>" : v.asset_id) << "." << v.field << ": "
        << v.message;
  }
  return out.str();
}

ValidationReport validate_instance(const SystemInstance& instance) {
  ValidationReport report;
  ReportBuilder rb(report);
  const int hours = instance.horizon_hours;

  if (hours < 1) rb.add("", "horizon_hours", "at least one time period required");
  if (rb.series_length("", "demand_mw", instance.demand_mw, hours)) {
    rb.series_nonneg("", "demand_mw", instance.demand_mw);
  }
  if (rb.series_length("", "reserve_req_mw", instance.reserve_req_mw, hours)) {
    rb.series_nonneg("", "reserve_req_mw", instance.reserve_req_mw);
  }
  rb.finite_nonneg("", "imbalance_cost", instance.imbalance_cost);
  rb.finite_nonneg("", "reserve_short_cost", instance.reserve_short_cost);

  std::set<std::string> ids;
  for (const auto& g : instance.generators) {
    if (!ids.insert(g.id).second) rb.add(g.id, "id", "duplicate asset id");
    validate_generator(rb, g, hours);
  }
  for (const auto& s : instance.storages) {
    if (!ids.insert(s.id).second) rb.add(s.id, "id", "duplicate asset id");
    validate_storage(rb, s);
  }
  return report;
}

void require_valid(const SystemInstance& instance) {
  const auto report = validate_instance(instance);
  if (!report.ok()) throw std::invalid_argument("invalid system instance: " + report.summary());
}

IndexSets classify_assets(const SystemInstance& instance) {
  IndexSets sets;
  for (std::size_t i = 0; i < instance.generators.size(); ++i) {
    const auto& g = instance.generators[i];
    const bool cand = g.is_candidate();
    (cand ? sets.gen_candidate : sets.gen_fixed).push_back(i);
    if (g.is_firm()) {
      (cand ? sets.gen_firm_candidate : sets.gen_firm_fixed).push_back(i);
    } else {
      (cand ? sets.gen_renew_candidate : sets.gen_renew_fixed).push_back(i);
    }
    if (g.is_gas) sets.gen_gas_fixed.push_back(i);
    if (g.provides_reserve) sets.gen_reserve_providers.push_back(i);
  }
  for (std::size_t i = 0; i < instance.storages.size(); ++i) {
    const auto& s = instance.storages[i];
    const bool cand = s.is_candidate();
    (cand ? sets.storage_candidate : sets.storage_fixed).push_back(i);
    if (s.is_long()) {
      (cand ? sets.storage_long_candidate : sets.storage_long_fixed).push_back(i);
    } else {
      (cand ? sets.storage_short_candidate : sets.storage_short_fixed).push_back(i);
    }
  }
  return sets;
}

std::string to_string(GeneratorKind kind) {
  return kind == GeneratorKind::firm ? "firm" : "renewable";
}

std::string to_string(AssetStatus status) {
  return status == AssetStatus::fixed ? "fixed" : "candidate";
}

std::string to_string(DurationClass duration_class) {
  return duration_class == DurationClass::short_duration ? "short" : "long";
}

std::optional<GeneratorKind> parse_generator_kind(const std::string& text) {
  if (text == "firm") return GeneratorKind::firm;
  if (text == "renewable") return GeneratorKind::renewable;
  return std::nullopt;
}

std::optional<AssetStatus> parse_asset_status(const std::string& text) {
  if (text == "fixed") return AssetStatus::fixed;
  if (text == "candidate") return AssetStatus::candidate;
  return std::nullopt;
}

std::optional<DurationClass> parse_duration_class(const std::string& text) {
  if (text == "short") return DurationClass::short_duration;
  if (text == "long") return DurationClass::long_duration;
  return std::nullopt;
}

}  // namespace ldes
