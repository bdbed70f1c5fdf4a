#include <array>
#include <utility>

#include "ldes/capacity_model.hpp"
#include "naming.hpp"

namespace ldes::capacity {

VarGrid::VarGrid(std::size_t assets, int hours) : rows_(assets), hours_(hours) {}

VarId VarGrid::operator()(std::size_t asset, int t) const {
  const auto& r = rows_.at(asset);
  if (r.empty()) throw std::out_of_range("asset has no variables in this family");
  return r.at(static_cast<std::size_t>(t));
}

void VarGrid::assign(std::size_t asset, std::vector<VarId> handles) {
  rows_.at(asset) = std::move(handles);
}

std::size_t VarGrid::size() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void ConstraintRegistry::record(RowId row, ConstraintTag tag, std::string description) {
  if (static_cast<std::size_t>(row.index) != entries_.size()) {
    throw std::logic_error("constraint registry must record rows in creation order");
  }
  entries_.push_back({tag, std::move(description)});
}

std::vector<RowId> ConstraintRegistry::rows_with(ConstraintTag tag) const {
  std::vector<RowId> rows;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].tag == tag) rows.push_back(RowId{static_cast<std::int32_t>(i)});
  }
  return rows;
}

namespace {

constexpr std::array<std::pair<ConstraintTag, const char*>, 24> kTagNames{{
    {ConstraintTag::power_balance, "power_balance"},
    {ConstraintTag::reserve_margin, "reserve_margin"},
    {ConstraintTag::soc_first_period, "soc_first_period"},
    {ConstraintTag::soc_recursion, "soc_recursion"},
    {ConstraintTag::soc_cyclic, "soc_cyclic"},
    {ConstraintTag::soc_capacity_candidate, "soc_capacity_candidate"},
    {ConstraintTag::storage_discharge_fixed, "storage_discharge_fixed"},
    {ConstraintTag::storage_charge_candidate, "storage_charge_candidate"},
    {ConstraintTag::storage_discharge_candidate, "storage_discharge_candidate"},
    {ConstraintTag::storage_reserve_headroom, "storage_reserve_headroom"},
    {ConstraintTag::storage_duration, "storage_duration"},
    {ConstraintTag::firm_fixed_output, "firm_fixed_output"},
    {ConstraintTag::renewable_fixed_output, "renewable_fixed_output"},
    {ConstraintTag::firm_fixed_reserve, "firm_fixed_reserve"},
    {ConstraintTag::firm_candidate_output, "firm_candidate_output"},
    {ConstraintTag::renewable_candidate_output, "renewable_candidate_output"},
    {ConstraintTag::firm_candidate_reserve, "firm_candidate_reserve"},
    {ConstraintTag::renewable_candidate_reserve, "renewable_candidate_reserve"},
    {ConstraintTag::ramp_up_fixed, "ramp_up_fixed"},
    {ConstraintTag::ramp_down_fixed, "ramp_down_fixed"},
    {ConstraintTag::ramp_up_candidate, "ramp_up_candidate"},
    {ConstraintTag::ramp_down_candidate, "ramp_down_candidate"},
    {ConstraintTag::remaining_capacity, "remaining_capacity"},
    {ConstraintTag::cost_budget, "cost_budget"},
}};

}  // namespace

std::string to_string(ConstraintTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "unknown";
}

std::optional<ConstraintTag> parse_constraint_tag(const std::string& text) {
  for (const auto& [t, name] : kTagNames) {
    if (text == name) return t;
  }
  return std::nullopt;
}

std::string short_name(std::string_view prefix, std::size_t ordinal) {
  // Uppercase prefixes and lowercase base-36 digits cannot collide.
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string digits;
  do {
    digits.insert(digits.begin(), kDigits[ordinal % 36]);
    ordinal /= 36;
  } while (ordinal > 0);
  return std::string(prefix) + digits;
}

VarId ColumnFactory::make(std::string_view prefix, std::string_view family, const std::string& asset,
                          int hour, double lower, double upper) {
  const auto ordinal = counters_[std::string(prefix)]++;
  const VarId id = model_.lp.add_variable(short_name(prefix, ordinal), lower, upper);
  model_.catalog.columns.push_back({std::string(family), asset, hour});
  return id;
}

std::vector<VarId> ColumnFactory::series(std::string_view prefix, std::string_view family,
                                         const std::string& asset, int hours) {
  std::vector<VarId> handles;
  handles.reserve(static_cast<std::size_t>(hours));
  for (int t = 0; t < hours; ++t) {
    handles.push_back(make(prefix, family, asset, t + 1, 0.0, lp::kInfinity));
  }
  return handles;
}

RowId RowFactory::make(std::string_view prefix, ConstraintTag tag, std::string description,
                       lp::SparseRow row, lp::Relation relation, double rhs) {
  const auto ordinal = counters_[std::string(prefix)]++;
  const RowId id =
      model_.lp.add_constraint(short_name(prefix, ordinal), std::move(row), relation, rhs);
  model_.registry.record(id, tag, std::move(description));
  return id;
}

void create_variables(ModelArtifacts& model, const SystemInstance& instance) {
  const int hours = instance.horizon_hours;
  const auto n_gen = instance.generators.size();
  const auto n_st = instance.storages.size();
  auto& cat = model.catalog;
  ColumnFactory columns(model);

  model.hours = hours;
  model.sets = classify_assets(instance);

  cat.p = VarGrid(n_gen, hours);
  cat.r_up = VarGrid(n_gen, hours);
  for (std::size_t g = 0; g < n_gen; ++g) {
    cat.p.assign(g, columns.series("P", "p", instance.generators[g].id, hours));
  }
  for (const auto g : model.sets.gen_reserve_providers) {
    cat.r_up.assign(g, columns.series("RU", "r_up", instance.generators[g].id, hours));
  }

  cat.p_ch = VarGrid(n_st, hours);
  cat.p_dis = VarGrid(n_st, hours);
  cat.r_st_up = VarGrid(n_st, hours);
  cat.v = VarGrid(n_st, hours);
  cat.v_ini.assign(n_st, VarId{});
  for (std::size_t h = 0; h < n_st; ++h) {
    const auto& id = instance.storages[h].id;
    cat.p_ch.assign(h, columns.series("CH", "p_ch", id, hours));
    cat.p_dis.assign(h, columns.series("DS", "p_dis", id, hours));
    cat.r_st_up.assign(h, columns.series("RS", "r_st_up", id, hours));
    cat.v.assign(h, columns.series("V", "v", id, hours));
    cat.v_ini[h] = columns.make("VI", "v_ini", id, 0, 0.0, lp::kInfinity);
  }

  for (int t = 0; t < hours; ++t) {
    cat.delta_neg.push_back(columns.make("DN", "delta_neg", "", t + 1, 0.0, lp::kInfinity));
  }
  for (int t = 0; t < hours; ++t) {
    cat.delta_pos.push_back(columns.make("DP", "delta_pos", "", t + 1, 0.0, lp::kInfinity));
  }
  for (int t = 0; t < hours; ++t) {
    cat.delta_res_short.push_back(
        columns.make("SH", "delta_res_short", "", t + 1, 0.0, lp::kInfinity));
  }

  cat.p_rem.assign(n_gen, VarId{});
  cat.x_ret_gen.assign(n_gen, VarId{});
  cat.x_inv_gen.assign(n_gen, VarId{});
  for (const auto g : model.sets.gen_firm_fixed) {
    cat.p_rem[g] = columns.make("RM", "p_rem", instance.generators[g].id, 0, 0.0, lp::kInfinity);
  }
  for (const auto g : model.sets.gen_firm_fixed) {
    cat.x_ret_gen[g] = columns.make("XR", "x_ret_gen", instance.generators[g].id, 0, 0.0, 0.0);
  }
  for (const auto g : model.sets.gen_candidate) {
    cat.x_inv_gen[g] = columns.make("XG", "x_inv_gen", instance.generators[g].id, 0, 0.0, 0.0);
  }

  cat.x_st_energy.assign(n_st, VarId{});
  cat.x_st_power.assign(n_st, VarId{});
  for (const auto h : model.sets.storage_candidate) {
    const auto& id = instance.storages[h].id;
    cat.x_st_energy[h] = columns.make("XE", "x_st_energy", id, 0, 0.0, 0.0);
    cat.x_st_power[h] = columns.make("XP", "x_st_power", id, 0, 0.0, 0.0);
  }
}

}  // namespace ldes::capacity
