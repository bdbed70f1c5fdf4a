#include <json.hpp>

#include "ldes/data_pipeline.hpp"

namespace ldes::data {

namespace {

using Json = nlohmann::ordered_json;

Json series_json(const Series& s) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i) a.push_back(s[i]);
  return a;
}

Series series_from(const Json& a) {
  Series s(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) s[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return s;
}

template <class E>
E parse_enum(const Json& j, std::optional<E> (*parse)(const std::string&), const char* what) {
  const auto v = parse(j.get<std::string>());
  if (!v) throw std::invalid_argument(std::string("snapshot: bad ") + what);
  return *v;
}

}  // namespace

std::string snapshot_json(const SystemInstance& inst) {
  Json doc;
  doc["format"] = "ldes-system-instance";
  doc["version"] = 1;
  doc["horizon_hours"] = inst.horizon_hours;
  doc["imbalance_cost"] = inst.imbalance_cost;
  doc["reserve_short_cost"] = inst.reserve_short_cost;
  doc["demand_mw"] = series_json(inst.demand_mw);
  doc["reserve_req_mw"] = series_json(inst.reserve_req_mw);

  Json gens = Json::array();
  for (const auto& g : inst.generators) {
    gens.push_back({{"id", g.id},
                    {"technology", g.technology},
                    {"region", g.region},
                    {"kind", to_string(g.kind)},
                    {"status", to_string(g.status)},
                    {"is_gas", g.is_gas},
                    {"provides_reserve", g.provides_reserve},
                    {"capacity_mw", g.capacity_mw},
                    {"invest_cost_per_mw_yr", g.invest_cost_per_mw_yr},
                    {"fom_cost_per_mw_yr", g.fom_cost_per_mw_yr},
                    {"gen_cost_per_mwh", series_json(g.gen_cost_per_mwh)},
                    {"reserve_cost_per_mw", series_json(g.reserve_cost_per_mw)},
                    {"availability", series_json(g.availability)},
                    {"reserve_factor", g.reserve_factor},
                    {"ramp_up_factor", g.ramp_up_factor},
                    {"ramp_down_factor", g.ramp_down_factor},
                    {"invest_limit_mw", g.invest_limit_mw},
                    {"retire_min_frac", g.retire_min_frac},
                    {"retire_max_frac", g.retire_max_frac}});
  }
  doc["generators"] = std::move(gens);

  Json stores = Json::array();
  for (const auto& s : inst.storages) {
    stores.push_back({{"id", s.id},
                      {"technology", s.technology},
                      {"region", s.region},
                      {"duration_class", to_string(s.duration_class)},
                      {"status", to_string(s.status)},
                      {"power_mw", s.power_mw},
                      {"duration_h", s.duration_h},
                      {"rte", s.rte},
                      {"soc_min_mwh", s.soc_min_mwh},
                      {"soc_max_mwh", s.soc_max_mwh},
                      {"fom_cost_per_mw_yr", s.fom_cost_per_mw_yr},
                      {"invest_cost_energy_per_mwh_yr", s.invest_cost_energy_per_mwh_yr},
                      {"invest_cost_power_per_mw_yr", s.invest_cost_power_per_mw_yr},
                      {"invest_limit_power_mw", s.invest_limit_power_mw},
                      {"invest_limit_energy_mwh", s.invest_limit_energy_mwh}});
  }
  doc["storages"] = std::move(stores);
  return doc.dump(1) + "\n";
}

SystemInstance instance_from_json(const std::string& text) {
  const Json doc = Json::parse(text);
  if (doc.value("format", "") != "ldes-system-instance") {
    throw std::invalid_argument("snapshot: not a system instance document");
  }
  SystemInstance inst;
  inst.horizon_hours = doc.at("horizon_hours").get<int>();
  inst.imbalance_cost = doc.at("imbalance_cost").get<double>();
  inst.reserve_short_cost = doc.at("reserve_short_cost").get<double>();
  inst.demand_mw = series_from(doc.at("demand_mw"));
  inst.reserve_req_mw = series_from(doc.at("reserve_req_mw"));

  for (const auto& j : doc.at("generators")) {
    GeneratorSpec g;
    g.id = j.at("id").get<std::string>();
    g.technology = j.at("technology").get<std::string>();
    g.region = j.at("region").get<std::string>();
    g.kind = parse_enum(j.at("kind"), parse_generator_kind, "generator kind");
    g.status = parse_enum(j.at("status"), parse_asset_status, "asset status");
    g.is_gas = j.at("is_gas").get<bool>();
    g.provides_reserve = j.at("provides_reserve").get<bool>();
    g.capacity_mw = j.at("capacity_mw").get<double>();
    g.invest_cost_per_mw_yr = j.at("invest_cost_per_mw_yr").get<double>();
    g.fom_cost_per_mw_yr = j.at("fom_cost_per_mw_yr").get<double>();
    g.gen_cost_per_mwh = series_from(j.at("gen_cost_per_mwh"));
    g.reserve_cost_per_mw = series_from(j.at("reserve_cost_per_mw"));
    g.availability = series_from(j.at("availability"));
    g.reserve_factor = j.at("reserve_factor").get<double>();
    g.ramp_up_factor = j.at("ramp_up_factor").get<double>();
    g.ramp_down_factor = j.at("ramp_down_factor").get<double>();
    g.invest_limit_mw = j.at("invest_limit_mw").get<double>();
    g.retire_min_frac = j.at("retire_min_frac").get<double>();
    g.retire_max_frac = j.at("retire_max_frac").get<double>();
    inst.generators.push_back(std::move(g));
  }
  for (const auto& j : doc.at("storages")) {
    StorageSpec s;
    s.id = j.at("id").get<std::string>();
    s.technology = j.at("technology").get<std::string>();
    s.region = j.at("region").get<std::string>();
    s.duration_class = parse_enum(j.at("duration_class"), parse_duration_class, "duration class");
    s.status = parse_enum(j.at("status"), parse_asset_status, "asset status");
    s.power_mw = j.at("power_mw").get<double>();
    s.duration_h = j.at("duration_h").get<double>();
    s.rte = j.at("rte").get<double>();
    s.soc_min_mwh = j.at("soc_min_mwh").get<double>();
    s.soc_max_mwh = j.at("soc_max_mwh").get<double>();
    s.fom_cost_per_mw_yr = j.at("fom_cost_per_mw_yr").get<double>();
    s.invest_cost_energy_per_mwh_yr = j.at("invest_cost_energy_per_mwh_yr").get<double>();
    s.invest_cost_power_per_mw_yr = j.at("invest_cost_power_per_mw_yr").get<double>();
    s.invest_limit_power_mw = j.at("invest_limit_power_mw").get<double>();
    s.invest_limit_energy_mwh = j.at("invest_limit_energy_mwh").get<double>();
    inst.storages.push_back(std::move(s));
  }
  return inst;
}

}  // namespace ldes::data
