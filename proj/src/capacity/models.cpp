#include <algorithm>
#include <cmath>

#include "ldes/capacity_model.hpp"
#include "naming.hpp"

namespace ldes::capacity {

double LinearExpression::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double value = constant;
  for (const auto& t : terms) value += t.coef * x[t.var.index];
  return value;
}

LinearExpression system_cost_expression(const ModelArtifacts& model,
                                        const SystemInstance& instance) {
  const auto& cat = model.catalog;
  const auto& sets = model.sets;
  LinearExpression cost;
  auto add = [&cost](VarId var, double coef) {
    if (coef != 0.0) cost.terms.push_back({var, coef});
  };

  for (const auto g : sets.gen_candidate) {
    const auto& gen = instance.generators[g];
    add(cat.x_inv_gen[g], gen.invest_cost_per_mw_yr + gen.fom_cost_per_mw_yr);
  }
  for (const auto h : sets.storage_short_candidate) {
    const auto& s = instance.storages[h];
    add(cat.x_st_energy[h], s.invest_cost_energy_per_mwh_yr);
    add(cat.x_st_power[h], s.invest_cost_power_per_mw_yr);
  }

  for (std::size_t g = 0; g < instance.generators.size(); ++g) {
    const auto& gen = instance.generators[g];
    const bool provider = cat.r_up.contains(g);
    for (int t = 0; t < model.hours; ++t) {
      add(cat.p(g, t), gen.gen_cost_per_mwh[t]);
      if (provider) add(cat.r_up(g, t), gen.reserve_cost_per_mw[t]);
    }
  }
  for (int t = 0; t < model.hours; ++t) {
    const auto i = static_cast<std::size_t>(t);
    add(cat.delta_neg[i], instance.imbalance_cost);
    add(cat.delta_pos[i], instance.imbalance_cost);
    add(cat.delta_res_short[i], instance.reserve_short_cost);
  }

  for (const auto g : sets.gen_firm_fixed) add(cat.p_rem[g], instance.generators[g].fom_cost_per_mw_yr);
  for (const auto g : sets.gen_renew_fixed) {
    const auto& gen = instance.generators[g];
    cost.constant += gen.fom_cost_per_mw_yr * gen.capacity_mw;
  }
  for (const auto h : sets.storage_fixed) {
    const auto& s = instance.storages[h];
    cost.constant += s.fom_cost_per_mw_yr * s.power_mw;
  }
  for (const auto h : sets.storage_candidate) {
    const auto& s = instance.storages[h];
    cost.constant += s.fom_cost_per_mw_yr * s.power_mw;
    add(cat.x_st_power[h], s.fom_cost_per_mw_yr);
  }
  return cost;
}

double max_cost_coefficient(const SystemInstance& instance) {
  double m = std::max({1.0, instance.imbalance_cost, instance.reserve_short_cost});
  for (const auto& g : instance.generators) {
    m = std::max({m, g.invest_cost_per_mw_yr, g.fom_cost_per_mw_yr});
    if (g.gen_cost_per_mwh.size() > 0) m = std::max(m, g.gen_cost_per_mwh.maxCoeff());
    if (g.reserve_cost_per_mw.size() > 0) m = std::max(m, g.reserve_cost_per_mw.maxCoeff());
  }
  for (const auto& s : instance.storages) {
    m = std::max({m, s.fom_cost_per_mw_yr, s.invest_cost_energy_per_mwh_yr,
                  s.invest_cost_power_per_mw_yr});
  }
  return m;
}

namespace {

void check_overrides(const SystemInstance& instance, const PolicyOverrides& overrides) {
  auto find_storage = [&](const std::string& id) -> const StorageSpec* {
    for (const auto& s : instance.storages) {
      if (s.id == id) return &s;
    }
    return nullptr;
  };
  auto find_generator = [&](const std::string& id) -> const GeneratorSpec* {
    for (const auto& g : instance.generators) {
      if (g.id == id) return &g;
    }
    return nullptr;
  };

  for (const auto& [id, power] : overrides.ldes_fixed_power_mw) {
    const auto* s = find_storage(id);
    if (s == nullptr || !s->is_long() || !s->is_candidate()) {
      throw std::invalid_argument("fixed LDES power given for '" + id +
                                  "', which is not a long-duration candidate");
    }
    if (!(power >= 0.0) || !std::isfinite(power)) {
      throw std::invalid_argument("fixed LDES power for '" + id + "' must be finite and >= 0");
    }
  }
  for (const auto& [id, cap] : overrides.generation_invest_cap_mw) {
    const auto* g = find_generator(id);
    if (g == nullptr || !g->is_candidate()) {
      throw std::invalid_argument("investment cap override for non-candidate generator '" + id + "'");
    }
    if (!(cap >= 0.0)) throw std::invalid_argument("investment cap for '" + id + "' must be >= 0");
  }
  for (const auto& [id, window] : overrides.retirement) {
    const auto* g = find_generator(id);
    if (g == nullptr || !g->is_firm() || g->is_candidate()) {
      throw std::invalid_argument("retirement override for non-firm-fixed generator '" + id + "'");
    }
    if (!(0.0 <= window.min_frac && window.min_frac <= window.max_frac && window.max_frac <= 1.0)) {
      throw std::invalid_argument("retirement window for '" + id + "' must satisfy 0<=min<=max<=1");
    }
  }
  for (const auto& [id, cap] : overrides.storage_invest_cap) {
    const auto* s = find_storage(id);
    if (s == nullptr || !s->is_candidate()) {
      throw std::invalid_argument("storage cap override for non-candidate storage '" + id + "'");
    }
    if (cap.power_mw.value_or(0.0) < 0.0 || cap.energy_mwh.value_or(0.0) < 0.0) {
      throw std::invalid_argument("storage cap override for '" + id + "' must be >= 0");
    }
  }
  if (overrides.overrun_penalty && !(*overrides.overrun_penalty > 0.0)) {
    throw std::invalid_argument("overrun penalty must be > 0");
  }
}

ModelArtifacts build_common(const SystemInstance& instance, const PolicyOverrides& overrides,
                            ModelKind kind) {
  require_valid(instance);
  check_overrides(instance, overrides);
  ModelArtifacts model;
  model.kind = kind;
  model.lp.set_name(kind == ModelKind::baseline ? "BASELINE" : "OPPVAL");
  create_variables(model, instance);
  add_balance_block(model, instance);
  add_reserve_block(model, instance);
  add_storage_block(model, instance, overrides);
  add_generator_block(model, instance, overrides);
  return model;
}

}  // namespace

ModelArtifacts build_baseline_model(const SystemInstance& instance,
                                    const PolicyOverrides& overrides) {
  ModelArtifacts model = build_common(instance, overrides, ModelKind::baseline);
  const auto cost = system_cost_expression(model, instance);
  model.lp.set_sense(lp::Sense::minimize);
  for (const auto& t : cost.terms) model.lp.add_objective_term(t.var, t.coef);
  model.lp.set_objective_constant(cost.constant);
  return model;
}

ModelArtifacts build_opportunity_model(const SystemInstance& instance,
                                       const PolicyOverrides& overrides, double q_star) {
  if (!std::isfinite(q_star)) throw std::invalid_argument("cost bound q* must be finite");

  double ldes_power = 0.0;
  for (const auto& s : instance.storages) {
    if (!s.is_long() || !s.is_candidate()) continue;
    if (const auto it = overrides.ldes_fixed_power_mw.find(s.id);
        it != overrides.ldes_fixed_power_mw.end()) {
      ldes_power += it->second;
    }
  }
  if (!(ldes_power > 0.0)) throw UnboundedBoundaryCost();

  ModelArtifacts model = build_common(instance, overrides, ModelKind::opportunity);
  model.q_star = q_star;
  model.ldes_power_mw = ldes_power;
  model.overrun_penalty = overrides.overrun_penalty.value_or(kDefaultOverrunPenaltyFactor *
                                                              max_cost_coefficient(instance));
  // One unit of overrun buys 1/ldes_power of boundary cost; a cheaper
  // overrun makes the maximization unbounded.
  if (model.overrun_penalty * ldes_power <= 1.0) {
    throw std::invalid_argument("overrun penalty too small for the LDES quantity: boundary cost "
                                "would be unbounded");
  }

  ColumnFactory columns(model);
  const VarId c_bc = columns.make("CBC", "c_bc", "", 0, -lp::kInfinity, lp::kInfinity);
  const VarId q_over = columns.make("QOV", "q_over", "", 0, 0.0, lp::kInfinity);
  model.catalog.c_bc = c_bc;
  model.catalog.q_over = q_over;

  const auto cost = system_cost_expression(model, instance);
  lp::SparseRow budget{{c_bc, ldes_power}};
  budget.insert(budget.end(), cost.terms.begin(), cost.terms.end());
  budget.push_back({q_over, -1.0});
  RowFactory rows(model);
  model.budget_row = rows.make("BUD", ConstraintTag::cost_budget, "budget", std::move(budget),
                               lp::Relation::less_equal, q_star - cost.constant);

  model.lp.set_sense(lp::Sense::maximize);
  model.lp.add_objective_term(c_bc, 1.0);
  model.lp.add_objective_term(q_over, -model.overrun_penalty);
  return model;
}

std::vector<SimultaneousFlow> find_simultaneous_charge(const ModelArtifacts& model,
                                                       const SystemInstance& instance,
                                                       const Eigen::VectorXd& primal, double tol) {
  std::vector<SimultaneousFlow> flows;
  const auto& cat = model.catalog;
  for (std::size_t h = 0; h < instance.storages.size(); ++h) {
    for (int t = 0; t < model.hours; ++t) {
      const double ch = primal[cat.p_ch(h, t).index];
      const double dis = primal[cat.p_dis(h, t).index];
      if (ch > tol && dis > tol) flows.push_back({instance.storages[h].id, t + 1, ch, dis});
    }
  }
  return flows;
}

}  // namespace ldes::capacity
