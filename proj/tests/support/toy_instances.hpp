#pragma once

#include "ldes/domain.hpp"

namespace ldes::testing {

// Three hours of 10 MW demand served by one 20 MW gas unit.
inline SystemInstance toy_a() {
  SystemInstance s;
  s.horizon_hours = 3;
  s.demand_mw = constant_series(3, 10.0);
  s.reserve_req_mw = constant_series(3, 1.5);
  s.imbalance_cost = 1000.0;
  s.reserve_short_cost = 500.0;

  GeneratorSpec gas;
  gas.id = "gas";
  gas.technology = "gas_cc";
  gas.kind = GeneratorKind::firm;
  gas.status = AssetStatus::fixed;
  gas.is_gas = true;
  gas.provides_reserve = true;
  gas.capacity_mw = 20.0;
  gas.gen_cost_per_mwh = constant_series(3, 5.0);
  gas.reserve_cost_per_mw = constant_series(3, 1.0);
  gas.availability = constant_series(3, 1.0);
  gas.reserve_factor = 0.5;
  gas.ramp_up_factor = 1.0;
  gas.ramp_down_factor = 1.0;
  s.generators.push_back(gas);
  return s;
}

// TOY-A without a reserve requirement, plus a solar candidate available in
// hours 1-2 and a 2-hour lossless LDES candidate.
inline SystemInstance toy_b() {
  SystemInstance s = toy_a();
  s.reserve_req_mw = constant_series(3, 0.0);

  GeneratorSpec solar;
  solar.id = "solar_cand";
  solar.technology = "solar";
  solar.kind = GeneratorKind::renewable;
  solar.status = AssetStatus::candidate;
  solar.capacity_mw = 0.0;
  solar.invest_cost_per_mw_yr = 2.0;
  solar.invest_limit_mw = 100.0;
  solar.gen_cost_per_mwh = constant_series(3, 0.0);
  solar.reserve_cost_per_mw = constant_series(3, 0.0);
  solar.availability = Series(3);
  solar.availability << 1.0, 1.0, 0.0;
  s.generators.push_back(solar);

  StorageSpec ldes;
  ldes.id = "ldes_cand";
  ldes.technology = "ldes";
  ldes.duration_class = DurationClass::long_duration;
  ldes.status = AssetStatus::candidate;
  ldes.duration_h = 2.0;
  ldes.rte = 1.0;
  s.storages.push_back(ldes);
  return s;
}

/// Multiplies every cost field by `alpha`.
inline SystemInstance scale_costs(SystemInstance s, double alpha) {
  s.imbalance_cost *= alpha;
  s.reserve_short_cost *= alpha;
  for (auto& g : s.generators) {
    g.invest_cost_per_mw_yr *= alpha;
    g.fom_cost_per_mw_yr *= alpha;
    g.gen_cost_per_mwh *= alpha;
    g.reserve_cost_per_mw *= alpha;
  }
  for (auto& h : s.storages) {
    h.fom_cost_per_mw_yr *= alpha;
    h.invest_cost_energy_per_mwh_yr *= alpha;
    h.invest_cost_power_per_mw_yr *= alpha;
  }
  return s;
}

}  // namespace ldes::testing
