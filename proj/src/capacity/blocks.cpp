#include <string>

#include "ldes/capacity_model.hpp"
#include "naming.hpp"

namespace ldes::capacity {

using lp::Relation;
using lp::SparseRow;

namespace {

std::string at_hour(int t) { return "t=" + std::to_string(t + 1); }

std::string at_asset(const std::string& id, int t) { return id + ",t=" + std::to_string(t + 1); }

double effective_invest_cap(const GeneratorSpec& g, const PolicyOverrides& overrides) {
  const auto it = overrides.generation_invest_cap_mw.find(g.id);
  return it != overrides.generation_invest_cap_mw.end() ? it->second : g.invest_limit_mw;
}

RetirementWindow effective_retirement(const GeneratorSpec& g, const PolicyOverrides& overrides) {
  const auto it = overrides.retirement.find(g.id);
  return it != overrides.retirement.end() ? it->second
                                          : RetirementWindow{g.retire_min_frac, g.retire_max_frac};
}

}  // namespace

std::vector<RowId> add_balance_block(ModelArtifacts& model, const SystemInstance& instance) {
  RowFactory rows(model);
  const auto& cat = model.catalog;
  std::vector<RowId> created;
  // sum_g p - sum_h (ch - dis) + delta_neg - delta_pos = D
  for (int t = 0; t < model.hours; ++t) {
    SparseRow row;
    for (std::size_t g = 0; g < instance.generators.size(); ++g) row.push_back({cat.p(g, t), 1.0});
    for (std::size_t h = 0; h < instance.storages.size(); ++h) {
      row.push_back({cat.p_ch(h, t), -1.0});
      row.push_back({cat.p_dis(h, t), 1.0});
    }
    row.push_back({cat.delta_neg[static_cast<std::size_t>(t)], 1.0});
    row.push_back({cat.delta_pos[static_cast<std::size_t>(t)], -1.0});
    created.push_back(rows.make("BAL", ConstraintTag::power_balance, at_hour(t), std::move(row),
                                Relation::equal, instance.demand_mw[t]));
  }
  return created;
}

std::vector<RowId> add_reserve_block(ModelArtifacts& model, const SystemInstance& instance) {
  RowFactory rows(model);
  const auto& cat = model.catalog;
  std::vector<RowId> created;
  for (int t = 0; t < model.hours; ++t) {
    SparseRow row;
    for (const auto g : model.sets.gen_reserve_providers) row.push_back({cat.r_up(g, t), 1.0});
    for (std::size_t h = 0; h < instance.storages.size(); ++h) {
      row.push_back({cat.r_st_up(h, t), 1.0});
    }
    row.push_back({cat.delta_res_short[static_cast<std::size_t>(t)], 1.0});
    created.push_back(rows.make("RES", ConstraintTag::reserve_margin, at_hour(t), std::move(row),
                                Relation::greater_equal, instance.reserve_req_mw[t]));
  }
  return created;
}

std::vector<RowId> add_storage_block(ModelArtifacts& model, const SystemInstance& instance,
                                     const PolicyOverrides& overrides) {
  RowFactory rows(model);
  auto& lp = model.lp;
  const auto& cat = model.catalog;
  const int hours = model.hours;
  std::vector<RowId> created;

  for (std::size_t h = 0; h < instance.storages.size(); ++h) {
    const auto& s = instance.storages[h];
    const bool candidate = s.is_candidate();
    const VarId x_e = cat.x_st_energy[h];
    const VarId x_p = cat.x_st_power[h];

    // State of charge: charge efficiency applies on the way in.
    for (int t = 0; t < hours; ++t) {
      const VarId previous = t == 0 ? cat.v_ini[h] : cat.v(h, t - 1);
      SparseRow row{{cat.v(h, t), 1.0},
                    {previous, -1.0},
                    {cat.p_ch(h, t), -s.rte},
                    {cat.p_dis(h, t), 1.0}};
      created.push_back(rows.make(t == 0 ? "SO1" : "SOC",
                                  t == 0 ? ConstraintTag::soc_first_period
                                         : ConstraintTag::soc_recursion,
                                  at_asset(s.id, t), std::move(row), Relation::equal, 0.0));
    }
    created.push_back(rows.make("CYC", ConstraintTag::soc_cyclic, s.id,
                                {{cat.v_ini[h], 1.0}, {cat.v(h, hours - 1), -1.0}},
                                Relation::equal, 0.0));

    if (!candidate) {
      lp.set_bounds(cat.v_ini[h], s.soc_min_mwh, s.soc_max_mwh);
      for (int t = 0; t < hours; ++t) {
        lp.set_bounds(cat.v(h, t), s.soc_min_mwh, s.soc_max_mwh);
        lp.set_bounds(cat.p_ch(h, t), 0.0, s.power_mw);
        created.push_back(rows.make("SDF", ConstraintTag::storage_discharge_fixed,
                                    at_asset(s.id, t),
                                    {{cat.p_dis(h, t), 1.0}, {cat.r_st_up(h, t), 1.0}},
                                    Relation::less_equal, s.power_mw));
      }
    } else {
      lp.set_bounds(cat.v_ini[h], s.soc_min_mwh, lp::kInfinity);
      for (int t = 0; t < hours; ++t) {
        lp.set_bounds(cat.v(h, t), s.soc_min_mwh, lp::kInfinity);
        created.push_back(rows.make("SCP", ConstraintTag::soc_capacity_candidate,
                                    at_asset(s.id, t), {{cat.v(h, t), 1.0}, {x_e, -1.0}},
                                    Relation::less_equal, s.soc_max_mwh));
        created.push_back(rows.make("SCC", ConstraintTag::storage_charge_candidate,
                                    at_asset(s.id, t), {{cat.p_ch(h, t), 1.0}, {x_p, -1.0}},
                                    Relation::less_equal, s.power_mw));
        created.push_back(rows.make(
            "SDC", ConstraintTag::storage_discharge_candidate, at_asset(s.id, t),
            {{cat.p_dis(h, t), 1.0}, {cat.r_st_up(h, t), 1.0}, {x_p, -1.0}},
            Relation::less_equal, s.power_mw));
      }
    }

    for (int t = 0; t < hours; ++t) {
      created.push_back(rows.make("SRH", ConstraintTag::storage_reserve_headroom,
                                  at_asset(s.id, t),
                                  {{cat.v(h, t), 1.0}, {cat.r_st_up(h, t), -1.0}},
                                  Relation::greater_equal, s.soc_min_mwh));
    }

    if (candidate) {
      created.push_back(rows.make("DUR", ConstraintTag::storage_duration, s.id,
                                  {{x_e, 1.0}, {x_p, -s.duration_h}}, Relation::equal, 0.0));
      if (const auto fixed = overrides.ldes_fixed_power_mw.find(s.id);
          fixed != overrides.ldes_fixed_power_mw.end()) {
        lp.set_bounds(x_p, fixed->second, fixed->second);
        lp.set_bounds(x_e, fixed->second * s.duration_h, fixed->second * s.duration_h);
      } else {
        double power_cap = s.invest_limit_power_mw;
        double energy_cap = s.invest_limit_energy_mwh;
        if (const auto cap = overrides.storage_invest_cap.find(s.id);
            cap != overrides.storage_invest_cap.end()) {
          power_cap = cap->second.power_mw.value_or(power_cap);
          energy_cap = cap->second.energy_mwh.value_or(energy_cap);
        }
        lp.set_bounds(x_p, 0.0, power_cap);
        lp.set_bounds(x_e, 0.0, energy_cap);
      }
    }
  }
  return created;
}

std::vector<RowId> add_generator_block(ModelArtifacts& model, const SystemInstance& instance,
                                       const PolicyOverrides& overrides) {
  RowFactory rows(model);
  auto& lp = model.lp;
  const auto& cat = model.catalog;
  const int hours = model.hours;
  std::vector<RowId> created;

  auto add_ramps = [&](std::size_t g, VarId capacity, ConstraintTag up_tag,
                       ConstraintTag down_tag, std::string_view up_prefix,
                       std::string_view down_prefix) {
    const auto& gen = instance.generators[g];
    for (int t = 1; t < hours; ++t) {
      created.push_back(rows.make(up_prefix, up_tag, at_asset(gen.id, t),
                                  {{cat.p(g, t), 1.0}, {cat.p(g, t - 1), -1.0},
                                   {capacity, -gen.ramp_up_factor}},
                                  Relation::less_equal, 0.0));
      created.push_back(rows.make(down_prefix, down_tag, at_asset(gen.id, t),
                                  {{cat.p(g, t - 1), 1.0}, {cat.p(g, t), -1.0},
                                   {capacity, -gen.ramp_down_factor}},
                                  Relation::less_equal, 0.0));
    }
  };

  for (const auto g : model.sets.gen_firm_fixed) {
    const auto& gen = instance.generators[g];
    const bool provider = cat.r_up.contains(g);
    const VarId p_rem = cat.p_rem[g];
    for (int t = 0; t < hours; ++t) {
      SparseRow output{{cat.p(g, t), 1.0}};
      if (provider) output.push_back({cat.r_up(g, t), 1.0});
      output.push_back({p_rem, -1.0});
      created.push_back(rows.make("FFO", ConstraintTag::firm_fixed_output, at_asset(gen.id, t),
                                  std::move(output), Relation::less_equal, 0.0));
      if (provider) {
        created.push_back(rows.make("FFR", ConstraintTag::firm_fixed_reserve,
                                    at_asset(gen.id, t),
                                    {{cat.r_up(g, t), 1.0}, {p_rem, -gen.reserve_factor}},
                                    Relation::less_equal, 0.0));
      }
    }
    add_ramps(g, p_rem, ConstraintTag::ramp_up_fixed, ConstraintTag::ramp_down_fixed, "RUF", "RDF");
    created.push_back(rows.make("REM", ConstraintTag::remaining_capacity, gen.id,
                                {{p_rem, 1.0}, {cat.x_ret_gen[g], 1.0}}, Relation::equal,
                                gen.capacity_mw));
    const auto window = effective_retirement(gen, overrides);
    lp.set_bounds(cat.x_ret_gen[g], window.min_frac * gen.capacity_mw,
                  window.max_frac * gen.capacity_mw);
  }

  for (const auto g : model.sets.gen_renew_fixed) {
    const auto& gen = instance.generators[g];
    for (int t = 0; t < hours; ++t) {
      const double available = gen.capacity_mw * gen.availability[t];
      if (!cat.r_up.contains(g)) {
        lp.set_bounds(cat.p(g, t), 0.0, available);
        continue;
      }
      created.push_back(rows.make("RFO", ConstraintTag::renewable_fixed_output,
                                  at_asset(gen.id, t),
                                  {{cat.p(g, t), 1.0}, {cat.r_up(g, t), 1.0}},
                                  Relation::less_equal, available));
      lp.set_bounds(cat.r_up(g, t), 0.0, available * gen.reserve_factor);
    }
  }

  for (const auto g : model.sets.gen_candidate) {
    const auto& gen = instance.generators[g];
    const bool provider = cat.r_up.contains(g);
    const VarId x_inv = cat.x_inv_gen[g];
    for (int t = 0; t < hours; ++t) {
      const double f = gen.is_firm() ? 1.0 : gen.availability[t];
      SparseRow output{{cat.p(g, t), 1.0}};
      if (provider) output.push_back({cat.r_up(g, t), 1.0});
      output.push_back({x_inv, -f});
      created.push_back(rows.make(gen.is_firm() ? "FCO" : "RCO",
                                  gen.is_firm() ? ConstraintTag::firm_candidate_output
                                                : ConstraintTag::renewable_candidate_output,
                                  at_asset(gen.id, t), std::move(output), Relation::less_equal,
                                  0.0));
      if (provider) {
        created.push_back(rows.make(gen.is_firm() ? "FCR" : "RCR",
                                    gen.is_firm() ? ConstraintTag::firm_candidate_reserve
                                                  : ConstraintTag::renewable_candidate_reserve,
                                    at_asset(gen.id, t),
                                    {{cat.r_up(g, t), 1.0}, {x_inv, -f * gen.reserve_factor}},
                                    Relation::less_equal, 0.0));
      }
    }
    if (gen.is_firm()) {
      add_ramps(g, x_inv, ConstraintTag::ramp_up_candidate, ConstraintTag::ramp_down_candidate,
                "RUC", "RDC");
    }
    lp.set_bounds(x_inv, 0.0, effective_invest_cap(gen, overrides));
  }
  return created;
}

}  // namespace ldes::capacity
