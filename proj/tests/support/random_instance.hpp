#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ldes/domain.hpp"

namespace ldes::testing {

struct RandomInstanceLimits {
  int max_generators = 5;
  int max_storages = 2;
  int min_hours = 2;
  int max_hours = 24;
};

/// Small seeded system: a fixed gas unit plus up to four other generators
/// of random class, an LDES candidate and optionally one more storage.
inline SystemInstance random_instance(std::uint64_t seed, const RandomInstanceLimits& lim = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&rng](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&rng](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

  const int T = pick(lim.min_hours, lim.max_hours);
  SystemInstance s;
  s.horizon_hours = T;
  s.demand_mw = Series(T);
  const double phase = uni(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < T; ++t) {
    s.demand_mw[t] = 50.0 + 20.0 * std::sin(phase + 2.0 * std::numbers::pi * t / std::max(T, 4)) + uni(-5.0, 5.0);
  }
  s.reserve_req_mw = uni(0.0, 0.15) * s.demand_mw;
  s.imbalance_cost = uni(500.0, 1500.0);
  s.reserve_short_cost = uni(100.0, 600.0);
  const double peak = s.demand_mw.maxCoeff();

  auto base = [&](const std::string& id, GeneratorKind kind, AssetStatus status) {
    GeneratorSpec g;
    g.id = id;
    g.technology = kind == GeneratorKind::firm ? "firm" : "wind";
    g.kind = kind;
    g.status = status;
    g.gen_cost_per_mwh = Series::Constant(T, 0.0);
    g.reserve_cost_per_mw = Series::Constant(T, uni(0.5, 5.0));
    g.availability = Series::Constant(T, 1.0);
    g.ramp_up_factor = uni(0.3, 1.0);
    g.ramp_down_factor = uni(0.3, 1.0);
    g.reserve_factor = uni(0.1, 0.6);
    return g;
  };
  auto profile = [&] {
    Series a(T);
    const double shift = uni(0.0, 2.0 * std::numbers::pi);
    for (int t = 0; t < T; ++t) a[t] = std::clamp(0.5 + 0.5 * std::sin(shift + 1.3 * t) + uni(-0.2, 0.2), 0.0, 1.0);
    return a;
  };

  GeneratorSpec gas = base("gas", GeneratorKind::firm, AssetStatus::fixed);
  gas.technology = "gas";
  gas.is_gas = true;
  gas.provides_reserve = true;
  gas.capacity_mw = peak * uni(1.1, 1.5);
  gas.gen_cost_per_mwh = Series::Constant(T, uni(40.0, 90.0));
  gas.fom_cost_per_mw_yr = uni(0.0, 20.0);
  s.generators.push_back(gas);

  const int extra = pick(1, lim.max_generators - 1);
  for (int i = 0; i < extra; ++i) {
    const std::string id = "g" + std::to_string(i + 1);
    switch (pick(0, 3)) {
      case 0: {  // fixed renewable
        auto g = base(id, GeneratorKind::renewable, AssetStatus::fixed);
        g.capacity_mw = peak * uni(0.1, 0.6);
        g.availability = profile();
        g.fom_cost_per_mw_yr = uni(0.0, 10.0);
        g.provides_reserve = pick(0, 1) == 1;
        s.generators.push_back(g);
        break;
      }
      case 1: {  // candidate renewable
        auto g = base(id, GeneratorKind::renewable, AssetStatus::candidate);
        g.availability = profile();
        g.invest_cost_per_mw_yr = uni(1.0, 15.0) * T;
        g.fom_cost_per_mw_yr = uni(0.0, 5.0);
        g.invest_limit_mw = peak * uni(1.0, 4.0);
        g.gen_cost_per_mwh = Series::Constant(T, uni(0.0, 2.0));
        s.generators.push_back(g);
        break;
      }
      case 2: {  // fixed firm, not gas
        auto g = base(id, GeneratorKind::firm, AssetStatus::fixed);
        g.technology = "hydro";
        g.capacity_mw = peak * uni(0.05, 0.4);
        g.gen_cost_per_mwh = Series::Constant(T, uni(5.0, 60.0));
        g.fom_cost_per_mw_yr = uni(0.0, 10.0);
        g.provides_reserve = pick(0, 1) == 1;
        s.generators.push_back(g);
        break;
      }
      default: {  // candidate firm
        auto g = base(id, GeneratorKind::firm, AssetStatus::candidate);
        g.technology = "geothermal";
        g.invest_cost_per_mw_yr = uni(5.0, 40.0) * T;
        g.invest_limit_mw = peak * uni(0.1, 0.5);
        g.gen_cost_per_mwh = Series::Constant(T, uni(10.0, 50.0));
        g.provides_reserve = pick(0, 1) == 1;
        s.generators.push_back(g);
        break;
      }
    }
  }

  StorageSpec ldes;
  ldes.id = "ldes";
  ldes.technology = "ldes";
  ldes.duration_class = DurationClass::long_duration;
  ldes.status = AssetStatus::candidate;
  ldes.duration_h = uni(2.0, 12.0);
  ldes.rte = uni(0.4, 0.95);
  ldes.fom_cost_per_mw_yr = uni(0.0, 2.0);
  s.storages.push_back(ldes);

  if (lim.max_storages > 1 && pick(0, 1) == 1) {
    StorageSpec st;
    st.id = "sdes";
    st.technology = "battery";
    st.duration_class = DurationClass::short_duration;
    st.duration_h = uni(1.0, 4.0);
    st.rte = uni(0.75, 0.95);
    if (pick(0, 1) == 1) {
      st.status = AssetStatus::fixed;
      st.power_mw = peak * uni(0.05, 0.3);
      st.soc_max_mwh = st.power_mw * st.duration_h;
      st.soc_min_mwh = st.soc_max_mwh * uni(0.0, 0.1);
      st.fom_cost_per_mw_yr = uni(0.0, 3.0);
    } else {
      st.status = AssetStatus::candidate;
      st.invest_cost_energy_per_mwh_yr = uni(0.5, 3.0) * T;
      st.invest_cost_power_per_mw_yr = uni(0.5, 3.0) * T;
      st.invest_limit_power_mw = peak * uni(0.2, 1.0);
      st.invest_limit_energy_mwh = st.invest_limit_power_mw * st.duration_h;
    }
    s.storages.push_back(st);
  }
  return s;
}

}  // namespace ldes::testing
