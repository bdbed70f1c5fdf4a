#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ldes/report.hpp"

namespace ldes::report {

namespace {

using Json = nlohmann::json;

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const Json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::optional<double> get_opt(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return obj.at(key).get<double>();
}

std::vector<double> numbers(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return {};
  const auto& a = obj.at(key);
  if (!a.is_array()) throw ConfigError(where + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

data::CandidateStorageOptions storage_candidate(const Json& j, const std::string& where,
                                                data::CandidateStorageOptions c) {
  only_keys(j, where,
            {"id", "technology", "region", "duration_h", "rte", "invest_limit_power_mw",
             "invest_limit_energy_mwh", "invest_cost_energy_per_mwh_yr",
             "invest_cost_power_per_mw_yr", "fom_cost_per_mw_yr"});
  c.id = get(j, "id", where, c.id);
  c.technology = get(j, "technology", where, c.technology);
  c.region = get(j, "region", where, c.region);
  c.duration_h = get(j, "duration_h", where, c.duration_h);
  c.rte = get(j, "rte", where, c.rte);
  c.invest_limit_power_mw = get(j, "invest_limit_power_mw", where, c.invest_limit_power_mw);
  if (const auto e = get_opt(j, "invest_limit_energy_mwh", where)) c.invest_limit_energy_mwh = e;
  c.invest_cost_energy_per_mwh_yr =
      get(j, "invest_cost_energy_per_mwh_yr", where, c.invest_cost_energy_per_mwh_yr);
  c.invest_cost_power_per_mw_yr =
      get(j, "invest_cost_power_per_mw_yr", where, c.invest_cost_power_per_mw_yr);
  c.fom_cost_per_mw_yr = get(j, "fom_cost_per_mw_yr", where, c.fom_cost_per_mw_yr);
  if (c.id.empty()) throw ConfigError(where + ".id: must not be empty");
  return c;
}

void read_assembly(const Json& j, data::AssemblyOptions& a) {
  const std::string where = "assembly";
  only_keys(j, where,
            {"preset", "reserve_fraction", "cluster", "k_per_group", "mirror_renewables",
             "renewable_limit_mw", "sdes_candidate", "ldes_candidate"});
  const auto preset = get<std::string>(j, "preset", where, "none");
  if (preset == "full") {
    a = data::AssemblyOptions::full_system_defaults();
  } else if (preset == "none") {
    a.cluster = false;
    a.mirror_renewables = false;
  } else {
    throw ConfigError(where + ".preset: expected 'full' or 'none'");
  }
  a.reserve_fraction = get(j, "reserve_fraction", where, a.reserve_fraction);
  a.cluster = get(j, "cluster", where, a.cluster);
  a.k_per_group = get(j, "k_per_group", where, a.k_per_group);
  a.mirror_renewables = get(j, "mirror_renewables", where, a.mirror_renewables);
  if (j.contains("renewable_limit_mw")) {
    try {
      a.renewable_limit_mw = j.at("renewable_limit_mw").get<std::map<std::string, double>>();
    } catch (const Json::exception&) {
      throw ConfigError(where + ".renewable_limit_mw: expected technology -> MW");
    }
  }
  for (const auto& [key, slot] : {std::pair{"sdes_candidate", &a.sdes_candidate},
                                  std::pair{"ldes_candidate", &a.ldes_candidate}}) {
    if (!j.contains(key)) continue;
    if (j.at(key).is_null()) {
      slot->reset();
    } else {
      *slot = storage_candidate(j.at(key), where + "." + key, slot->value_or(data::CandidateStorageOptions{}));
    }
  }
  if (!(a.reserve_fraction >= 0.0)) throw ConfigError("assembly.reserve_fraction: must be >= 0");
  if (a.k_per_group < 1) throw ConfigError("assembly.k_per_group: must be >= 1");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "config",
            {"data_dir", "inputs", "snapshot", "assembly", "sweep", "solver", "engine", "out_dir"});

  RunConfig cfg;
  cfg.text = text;
  if (doc.contains("data_dir")) {
    cfg.inputs = data::InputFiles::in_directory(resolve(base_dir, get<std::string>(doc, "data_dir", "config", "")));
  }
  if (doc.contains("inputs")) {
    const auto& in = doc.at("inputs");
    only_keys(in, "inputs",
              {"generators", "storages", "demand", "availability", "costs", "hourly_costs"});
    auto set = [&](const char* key, std::filesystem::path& slot) {
      if (in.contains(key)) slot = resolve(base_dir, get<std::string>(in, key, "inputs", ""));
    };
    set("generators", cfg.inputs.generators);
    set("storages", cfg.inputs.storages);
    set("demand", cfg.inputs.demand);
    set("availability", cfg.inputs.availability);
    set("costs", cfg.inputs.costs);
    set("hourly_costs", cfg.inputs.hourly_costs);
  }
  if (doc.contains("snapshot")) cfg.snapshot = resolve(base_dir, get<std::string>(doc, "snapshot", "config", ""));
  if (!cfg.snapshot && cfg.inputs.generators.empty()) {
    throw ConfigError("config needs 'data_dir', 'inputs' or 'snapshot'");
  }

  cfg.assembly.cluster = false;
  cfg.assembly.mirror_renewables = false;
  if (doc.contains("assembly")) read_assembly(doc.at("assembly"), cfg.assembly);

  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    only_keys(s, "sweep", {"capacities_mw", "soc_capacities_mw", "bisection_tol_mw"});
    cfg.sweep_capacities_mw = numbers(s, "capacities_mw", "sweep");
    cfg.soc_capacities_mw = numbers(s, "soc_capacities_mw", "sweep");
    cfg.bisection_tol_mw = get_opt(s, "bisection_tol_mw", "sweep");
  }

  auto& solver = cfg.engine.solver;
  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    only_keys(s, "solver",
              {"backend", "feasibility_tol", "optimality_tol", "time_limit_s", "threads", "seed"});
    solver.backend = get(s, "backend", "solver", solver.backend);
    solver.feasibility_tol = get(s, "feasibility_tol", "solver", solver.feasibility_tol);
    solver.optimality_tol = get(s, "optimality_tol", "solver", solver.optimality_tol);
    solver.time_limit_s = get(s, "time_limit_s", "solver", solver.time_limit_s);
    solver.threads = get(s, "threads", "solver", solver.threads);
    solver.seed = get(s, "seed", "solver", solver.seed);
  }
  if (doc.contains("engine")) {
    const auto& e = doc.at("engine");
    only_keys(e, "engine", {"workers", "overrun_penalty"});
    cfg.engine.workers = get(e, "workers", "engine", cfg.engine.workers);
    cfg.engine.overrun_penalty = get_opt(e, "overrun_penalty", "engine");
  }
  if (doc.contains("out_dir")) cfg.out_dir = resolve(base_dir, get<std::string>(doc, "out_dir", "config", ""));
  if (cfg.engine.workers < 1) throw ConfigError("engine.workers: must be >= 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  RunConfig cfg = parse_config(buffer.str(), base);
  cfg.path = path;
  return cfg;
}

LoadedInstance load_instance(const RunConfig& config) {
  LoadedInstance out;
  if (config.snapshot) {
    std::ifstream in(*config.snapshot, std::ios::binary);
    if (!in) throw data::InputError(config.snapshot->string(), 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      out.instance = data::instance_from_json(buffer.str());
    } catch (const std::exception& e) {
      throw data::InputError(config.snapshot->string(), 0, e.what());
    }
    require_valid(out.instance);
    out.sources.push_back(*config.snapshot);
    return out;
  }
  const auto raw = data::load_system(config.inputs);
  out.instance = data::assemble_instance(raw, config.assembly);
  out.sources = config.inputs.existing();
  return out;
}

std::vector<double> parse_capacity_list(const std::string& spec) {
  std::string text = spec;
  if (std::error_code ec; std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    const auto first = token.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      token.clear();
      return;
    }
    const auto last = token.find_last_not_of(" \t\r");
    const std::string t = token.substr(first, last - first + 1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
      throw UsageError("capacity '" + t + "' is not a number");
    }
    out.push_back(v);
    token.clear();
  };
  for (const char c : text) {
    if (c == ',' || c == '\n') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

}  // namespace ldes::report
