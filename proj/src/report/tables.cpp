#include <algorithm>
#include <charconv>
#include <cmath>

#include "ldes/report.hpp"

namespace ldes::report {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string status_text(scenario::PointStatus s) {
  return s == scenario::PointStatus::solved ? "solved" : "failed";
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += quote(fields[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Table cost_breakdown_table(const scenario::CostBreakdown& breakdown) {
  Table t{{"category", "label", "value_usd"}, {}};
  for (const auto& item : breakdown.items) {
    t.rows.push_back({item.category, item.label, format_number(item.value)});
  }
  return t;
}

Table boundary_curve_table(const std::vector<scenario::BoundaryCurvePoint>& points) {
  Table t{{"capacity_mw", "capacity_gw", "boundary_cost_usd_per_mw", "boundary_cost_usd_per_kw",
           "viable", "q_over", "status", "diagnostics"},
          {}};
  for (const auto& p : points) {
    const bool ok = p.status == scenario::PointStatus::solved;
    t.rows.push_back({format_number(p.ldes_power_mw), format_number(p.ldes_power_gw()),
                      ok ? format_number(p.boundary_cost_per_mw) : "",
                      ok ? format_number(p.boundary_cost_per_kw()) : "", bool_text(p.viable),
                      ok ? format_number(p.budget_overrun) : "", status_text(p.status),
                      p.diagnostics});
  }
  return t;
}

Table investment_mix_table(const std::vector<scenario::BoundaryCurvePoint>& points) {
  Table t{{"capacity_mw", "asset_id", "technology", "asset_class", "power_mw", "energy_mwh"}, {}};
  for (const auto& p : points) {
    for (const auto& item : p.investment_plan) {
      t.rows.push_back({format_number(p.ldes_power_mw), item.asset_id, item.technology,
                        item.asset_class, format_number(item.power_mw),
                        format_number(item.energy_mwh)});
    }
  }
  return t;
}

Table cost_reduction_table(const std::vector<scenario::BoundaryCurvePoint>& points) {
  Table t{{"capacity_mw", "q_star_usd", "system_cost_usd", "net_cost_reduction_usd",
           "opportunity_value_usd", "budget_lhs_usd", "status"},
          {}};
  for (const auto& p : points) {
    if (p.status != scenario::PointStatus::solved) {
      t.rows.push_back({format_number(p.ldes_power_mw), format_number(p.q_star), "", "", "", "",
                        status_text(p.status)});
      continue;
    }
    const double opportunity = p.breakdown.category_total("ldes_opportunity_value");
    t.rows.push_back({format_number(p.ldes_power_mw), format_number(p.q_star),
                      format_number(p.budget_lhs - opportunity), format_number(p.net_cost_reduction),
                      format_number(opportunity), format_number(p.budget_lhs), status_text(p.status)});
  }
  return t;
}

Table decomposition_table(const std::vector<scenario::BoundaryCurvePoint>& points) {
  Table t{{"capacity_mw", "category", "label", "value_usd"}, {}};
  for (const auto& p : points) {
    for (const auto& item : p.breakdown.items) {
      t.rows.push_back(
          {format_number(p.ldes_power_mw), item.category, item.label, format_number(item.value)});
    }
  }
  return t;
}

Table soc_series_table(const std::vector<scenario::BoundaryCurvePoint>& points,
                       const std::vector<double>& selected_mw) {
  Table t{{"capacity_mw", "storage_id", "duration_class", "hour", "soc_mwh"}, {}};
  for (const auto& p : points) {
    const bool wanted = selected_mw.empty() ||
                        std::find(selected_mw.begin(), selected_mw.end(), p.ldes_power_mw) !=
                            selected_mw.end();
    if (!wanted) continue;
    for (const auto& traj : p.storage_soc) {
      for (Eigen::Index h = 0; h < traj.soc_mwh.size(); ++h) {
        t.rows.push_back({format_number(p.ldes_power_mw), traj.storage_id,
                          traj.long_duration ? "long" : "short", std::to_string(h + 1),
                          format_number(traj.soc_mwh[h])});
      }
    }
  }
  return t;
}

Table dispatch_table(const capacity::ModelArtifacts& model, const SystemInstance& instance,
                     const Eigen::VectorXd& x) {
  Table t{{"asset_id", "variable", "hour", "value"}, {}};
  const auto& cat = model.catalog;
  auto emit = [&](const std::string& asset, const char* family, const capacity::VarGrid& grid,
                  std::size_t index) {
    if (!grid.contains(index)) return;
    for (int h = 0; h < model.hours; ++h) {
      t.rows.push_back(
          {asset, family, std::to_string(h + 1), format_number(x[grid(index, h).index])});
    }
  };
  for (std::size_t g = 0; g < instance.generators.size(); ++g) {
    const auto& id = instance.generators[g].id;
    emit(id, "p", cat.p, g);
    emit(id, "r_up", cat.r_up, g);
  }
  for (std::size_t h = 0; h < instance.storages.size(); ++h) {
    const auto& id = instance.storages[h].id;
    emit(id, "p_ch", cat.p_ch, h);
    emit(id, "p_dis", cat.p_dis, h);
    emit(id, "r_st_up", cat.r_st_up, h);
    emit(id, "v", cat.v, h);
  }
  auto system = [&](const char* family, const std::vector<lp::VarId>& vars) {
    for (std::size_t h = 0; h < vars.size(); ++h) {
      t.rows.push_back({"system", family, std::to_string(h + 1), format_number(x[vars[h].index])});
    }
  };
  system("delta_neg", cat.delta_neg);
  system("delta_pos", cat.delta_pos);
  system("delta_res_short", cat.delta_res_short);
  return t;
}

Table solution_table(const capacity::ModelArtifacts& model, const Eigen::VectorXd& x) {
  Table t{{"column", "family", "asset_id", "hour", "value"}, {}};
  for (Eigen::Index j = 0; j < model.lp.num_variables(); ++j) {
    const auto& info = model.catalog.columns[static_cast<std::size_t>(j)];
    t.rows.push_back({model.lp.variable(lp::VarId{static_cast<std::int32_t>(j)}).name, info.family,
                      info.asset, std::to_string(info.hour), format_number(x[j])});
  }
  return t;
}

Table registry_table(const capacity::ModelArtifacts& model) {
  Table t{{"row", "tag", "description"}, {}};
  for (Eigen::Index i = 0; i < model.lp.num_constraints(); ++i) {
    const lp::RowId id{static_cast<std::int32_t>(i)};
    const auto& entry = model.registry.at(id);
    t.rows.push_back({model.lp.constraint(id).name, capacity::to_string(entry.tag), entry.description});
  }
  return t;
}

Table columns_table(const capacity::ModelArtifacts& model) {
  Table t{{"column", "family", "asset_id", "hour", "lower", "upper"}, {}};
  for (Eigen::Index j = 0; j < model.lp.num_variables(); ++j) {
    const auto& var = model.lp.variable(lp::VarId{static_cast<std::int32_t>(j)});
    const auto& info = model.catalog.columns[static_cast<std::size_t>(j)];
    t.rows.push_back({var.name, info.family, info.asset, std::to_string(info.hour),
                      format_number(var.lower), format_number(var.upper)});
  }
  return t;
}

Eigen::VectorXd read_solution(const std::filesystem::path& path, const lp::LinearProgram& lp) {
  const auto table = data::read_csv(path);
  const auto name_col = table.column("column");
  const auto value_col = table.column("value");
  Eigen::VectorXd x = Eigen::VectorXd::Constant(lp.num_variables(), std::nan(""));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& name = table.rows[i][name_col];
    const auto var = lp.find_variable(name);
    if (!var) throw data::InputError(table.source, table.lines[i], "unknown column '" + name + "'");
    const auto& text = table.rows[i][value_col];
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw data::InputError(table.source, table.lines[i], "non-numeric value '" + text + "'");
    }
    x[var->index] = v;
  }
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::isnan(x[j])) {
      throw data::InputError(table.source, 0,
                             "no value for column '" +
                                 lp.variable(lp::VarId{static_cast<std::int32_t>(j)}).name + "'");
    }
  }
  return x;
}

}  // namespace ldes::report
