#include "ldes/data_pipeline.hpp"

namespace ldes::data {

AssemblyOptions AssemblyOptions::full_system_defaults() {
  AssemblyOptions o;
  o.reserve_fraction = 0.15;
  o.cluster = true;
  o.k_per_group = 3;
  o.mirror_renewables = true;

  CandidateStorageOptions sdes;
  sdes.id = "sdes_cand";
  sdes.technology = "battery_4h";
  sdes.duration_h = 4.0;
  sdes.rte = 0.85;
  sdes.invest_limit_power_mw = 43000.0;
  o.sdes_candidate = sdes;

  CandidateStorageOptions ldes;
  ldes.id = "ldes_cand";
  ldes.technology = "ldes_100h";
  ldes.duration_h = 100.0;
  ldes.rte = 0.425;
  ldes.invest_limit_power_mw = 75000.0;
  o.ldes_candidate = ldes;
  return o;
}

namespace {

StorageSpec candidate_storage(const CandidateStorageOptions& c, DurationClass duration_class) {
  StorageSpec s;
  s.id = c.id;
  s.technology = c.technology;
  s.region = c.region;
  s.duration_class = duration_class;
  s.status = AssetStatus::candidate;
  s.power_mw = 0.0;
  s.soc_max_mwh = 0.0;
  s.duration_h = c.duration_h;
  s.rte = c.rte;
  s.fom_cost_per_mw_yr = c.fom_cost_per_mw_yr;
  s.invest_cost_energy_per_mwh_yr = c.invest_cost_energy_per_mwh_yr;
  s.invest_cost_power_per_mw_yr = c.invest_cost_power_per_mw_yr;
  s.invest_limit_power_mw = c.invest_limit_power_mw;
  s.invest_limit_energy_mwh = c.invest_limit_energy_mwh.value_or(c.duration_h * c.invest_limit_power_mw);
  return s;
}

}  // namespace

SystemInstance assemble_instance(const RawTables& raw, const AssemblyOptions& options) {
  const Eigen::Index T = raw.hours;
  SystemInstance inst;
  inst.horizon_hours = raw.hours;
  inst.demand_mw = raw.demand_mw;
  inst.reserve_req_mw = derive_reserve_requirement(raw.demand_mw, options.reserve_fraction);
  inst.imbalance_cost = raw.imbalance_cost;
  inst.reserve_short_cost = raw.reserve_short_cost;

  std::vector<GeneratorSpec> gens;
  gens.reserve(raw.generators.size());
  for (const auto& rg : raw.generators) {
    GeneratorSpec g = rg.spec;
    if (const auto it = raw.hourly_costs.find(g.id); it != raw.hourly_costs.end()) {
      g.gen_cost_per_mwh = it->second.gen_cost_per_mwh;
      g.reserve_cost_per_mw = it->second.reserve_cost_per_mw;
    } else {
      g.gen_cost_per_mwh = constant_series(T, rg.gen_cost_per_mwh);
      g.reserve_cost_per_mw = constant_series(T, rg.reserve_cost_per_mw);
    }
    g.availability = rg.availability_id.empty() ? constant_series(T, 1.0)
                                                : raw.availability.at(rg.availability_id);
    gens.push_back(std::move(g));
  }

  if (options.cluster) gens = cluster_generators(gens, options.k_per_group);
  if (options.mirror_renewables) {
    auto mirrored = mirror_candidates(gens, options.renewable_limit_mw);
    gens.insert(gens.end(), mirrored.begin(), mirrored.end());
  }
  inst.generators = std::move(gens);

  for (const auto& rs : raw.storages) inst.storages.push_back(rs.spec);
  if (options.sdes_candidate) {
    inst.storages.push_back(candidate_storage(*options.sdes_candidate, DurationClass::short_duration));
  }
  if (options.ldes_candidate) {
    inst.storages.push_back(candidate_storage(*options.ldes_candidate, DurationClass::long_duration));
  }

  require_valid(inst);
  return inst;
}

}  // namespace ldes::data
