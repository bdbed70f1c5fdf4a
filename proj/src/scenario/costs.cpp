#include <map>

#include "ldes/scenario.hpp"

namespace ldes::scenario {

double CostBreakdown::total() const {
  double sum = 0.0;
  for (const auto& item : items) sum += item.value;
  return sum;
}

double CostBreakdown::category_total(std::string_view category) const {
  double sum = 0.0;
  for (const auto& item : items) {
    if (item.category == category) sum += item.value;
  }
  return sum;
}

double CostBreakdown::value(std::string_view category, std::string_view label) const {
  double sum = 0.0;
  for (const auto& item : items) {
    if (item.category == category && item.label == label) sum += item.value;
  }
  return sum;
}

namespace {

// Accumulates by (category, label) while keeping first-seen order.
class Ledger {
 public:
  void add(const std::string& category, const std::string& label, double value) {
    const auto key = category + '\x1f' + label;
    const auto [it, fresh] = slot_.emplace(key, items_.size());
    if (fresh) {
      items_.push_back({category, label, value});
    } else {
      items_[it->second].value += value;
    }
  }
  std::vector<CostItem> take() { return std::move(items_); }

 private:
  std::vector<CostItem> items_;
  std::map<std::string, std::size_t> slot_;
};

}  // namespace

CostBreakdown decompose_costs(const capacity::ModelArtifacts& model, const SystemInstance& instance,
                              const Eigen::VectorXd& x) {
  const auto& cat = model.catalog;
  const auto& sets = model.sets;
  auto val = [&x](lp::VarId v) { return x[v.index]; };
  Ledger ledger;

  for (std::size_t g = 0; g < instance.generators.size(); ++g) {
    const auto& gen = instance.generators[g];
    double energy = 0.0;
    double reserve = 0.0;
    for (int t = 0; t < model.hours; ++t) {
      energy += gen.gen_cost_per_mwh[t] * val(cat.p(g, t));
      if (cat.r_up.contains(g)) reserve += gen.reserve_cost_per_mw[t] * val(cat.r_up(g, t));
    }
    ledger.add("generation", gen.technology, energy);
    if (cat.r_up.contains(g)) ledger.add("reserve", gen.technology, reserve);
  }

  double imbalance = 0.0;
  double shortage = 0.0;
  for (int t = 0; t < model.hours; ++t) {
    const auto i = static_cast<std::size_t>(t);
    imbalance += instance.imbalance_cost * (val(cat.delta_neg[i]) + val(cat.delta_pos[i]));
    shortage += instance.reserve_short_cost * val(cat.delta_res_short[i]);
  }
  ledger.add("imbalance", "", imbalance);
  ledger.add("reserve_shortage", "", shortage);

  for (const auto g : sets.gen_firm_fixed) {
    const auto& gen = instance.generators[g];
    ledger.add("fom_fixed_generators", gen.technology, gen.fom_cost_per_mw_yr * val(cat.p_rem[g]));
  }
  for (const auto g : sets.gen_renew_fixed) {
    const auto& gen = instance.generators[g];
    ledger.add("fom_fixed_generators", gen.technology, gen.fom_cost_per_mw_yr * gen.capacity_mw);
  }
  for (const auto g : sets.gen_candidate) {
    const auto& gen = instance.generators[g];
    const double built = val(cat.x_inv_gen[g]);
    ledger.add("fom_candidate_generators", gen.technology, gen.fom_cost_per_mw_yr * built);
    ledger.add("investment_generators", gen.technology, gen.invest_cost_per_mw_yr * built);
  }
  for (const auto h : sets.storage_fixed) {
    const auto& s = instance.storages[h];
    ledger.add("fom_fixed_storage", s.technology, s.fom_cost_per_mw_yr * s.power_mw);
  }
  for (const auto h : sets.storage_candidate) {
    const auto& s = instance.storages[h];
    ledger.add("fom_candidate_storage", s.technology,
               s.fom_cost_per_mw_yr * (s.power_mw + val(cat.x_st_power[h])));
  }
  for (const auto h : sets.storage_short_candidate) {
    const auto& s = instance.storages[h];
    ledger.add("investment_sdes_energy", s.technology,
               s.invest_cost_energy_per_mwh_yr * val(cat.x_st_energy[h]));
    ledger.add("investment_sdes_power", s.technology,
               s.invest_cost_power_per_mw_yr * val(cat.x_st_power[h]));
  }
  if (model.kind == capacity::ModelKind::opportunity && cat.c_bc) {
    ledger.add("ldes_opportunity_value", "", val(*cat.c_bc) * model.ldes_power_mw);
  }
  return CostBreakdown{ledger.take()};
}

}  // namespace ldes::scenario
