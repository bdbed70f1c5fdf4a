#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "ldes/data_pipeline.hpp"

namespace ldes::data {

namespace {

// Row cursor with typed, range-checked accessors that cite file and line.
class Record {
 public:
  Record(const CsvTable& table, std::size_t row) : table_(table), row_(row) {}

  std::size_t line() const { return table_.lines[row_]; }

  bool has(const std::string& column) const {
    const auto i = table_.find_column(column);
    return i && !table_.rows[row_][*i].empty();
  }

  std::string text(const std::string& column) const {
    const auto& v = table_.rows[row_][table_.column(column)];
    if (v.empty()) fail(column, "empty value");
    return v;
  }

  std::string text_or(const std::string& column, const std::string& fallback) const {
    return has(column) ? table_.rows[row_][*table_.find_column(column)] : fallback;
  }

  double number(const std::string& column) const {
    const std::string v = text(column);
    double out = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(out)) {
      fail(column, "non-numeric value '" + v + "'");
    }
    return out;
  }

  double number_or(const std::string& column, double fallback) const {
    return has(column) ? number(column) : fallback;
  }

  double non_negative(const std::string& column, std::optional<double> fallback = {}) const {
    const double v = fallback ? number_or(column, *fallback) : number(column);
    if (v < 0.0) fail(column, "value " + std::to_string(v) + " must be >= 0");
    return v;
  }

  double fraction(const std::string& column, std::optional<double> fallback = {}) const {
    const double v = fallback ? number_or(column, *fallback) : number(column);
    if (v < 0.0 || v > 1.0) fail(column, "value " + format(v) + " outside [0,1]");
    return v;
  }

  int hour(const std::string& column) const {
    const double v = number(column);
    if (v < 1.0 || v != std::floor(v) || v > 1e9) fail(column, "hour must be a positive integer");
    return static_cast<int>(v);
  }

  bool flag(const std::string& column, bool fallback) const {
    if (!has(column)) return fallback;
    const std::string v = text(column);
    if (v == "1" || v == "true" || v == "yes" || v == "TRUE" || v == "True") return true;
    if (v == "0" || v == "false" || v == "no" || v == "FALSE" || v == "False") return false;
    fail(column, "expected a boolean, found '" + v + "'");
  }

  [[noreturn]] void fail(const std::string& column, const std::string& message) const {
    throw InputError(table_.source, line(), column + ": " + message);
  }

 private:
  static std::string format(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  }

  const CsvTable& table_;
  std::size_t row_;
};

bool usable(const std::filesystem::path& p) { return !p.empty() && std::filesystem::exists(p); }

// Collects (hour, value) pairs for one series and checks they cover 1..T.
class SeriesBuilder {
 public:
  void put(const Record& rec, int hour, double value) {
    if (!values_.emplace(hour, value).second) rec.fail("hour", "duplicate hour " + std::to_string(hour));
    lines_.emplace(hour, rec.line());
  }

  Series finish(const std::string& source, const std::string& what) const {
    if (values_.empty()) throw InputError(source, 0, what + ": no rows");
    int expected = 1;
    for (const auto& [hour, value] : values_) {
      if (hour != expected) {
        throw InputError(source, lines_.at(hour),
                         what + ": hour index not dense, expected " + std::to_string(expected) +
                             " but found " + std::to_string(hour));
      }
      ++expected;
    }
    Series s(static_cast<Eigen::Index>(values_.size()));
    Eigen::Index i = 0;
    for (const auto& [hour, value] : values_) s[i++] = value;
    return s;
  }

 private:
  std::map<int, double> values_;
  std::map<int, std::size_t> lines_;
};

RawGenerator read_generator(const Record& r, const std::string& source) {
  RawGenerator g;
  g.source = source;
  g.line = r.line();
  auto& s = g.spec;
  s.id = r.text("id");
  s.technology = r.text("technology");
  s.region = r.text_or("region", "");
  const auto kind = parse_generator_kind(r.text("kind"));
  if (!kind) r.fail("kind", "expected firm or renewable");
  s.kind = *kind;
  const auto status = parse_asset_status(r.text("status"));
  if (!status) r.fail("status", "expected fixed or candidate");
  s.status = *status;
  s.is_gas = r.flag("is_gas", false);
  s.provides_reserve = r.flag("provides_reserve", false);
  s.capacity_mw = r.non_negative("capacity_mw");
  s.invest_cost_per_mw_yr = r.non_negative("invest_cost_per_mw_yr", 0.0);
  s.fom_cost_per_mw_yr = r.non_negative("fom_cost_per_mw_yr", 0.0);
  g.gen_cost_per_mwh = r.non_negative("gen_cost_per_mwh");
  g.reserve_cost_per_mw = r.non_negative("reserve_cost_per_mw", 0.0);
  s.reserve_factor = r.fraction("reserve_factor", 0.0);
  s.ramp_up_factor = r.fraction("ramp_up_factor", 1.0);
  s.ramp_down_factor = r.fraction("ramp_down_factor", 1.0);
  s.invest_limit_mw = r.non_negative("invest_limit_mw", 0.0);
  s.retire_min_frac = r.fraction("retire_min_frac", 0.0);
  s.retire_max_frac = r.fraction("retire_max_frac", 0.0);
  if (s.retire_min_frac > s.retire_max_frac) r.fail("retire_min_frac", "exceeds retire_max_frac");
  g.availability_id = r.text_or("availability_id", "");
  if (!s.is_firm() && g.availability_id.empty()) {
    r.fail("availability_id", "renewable unit needs an availability series");
  }
  return g;
}

RawStorage read_storage(const Record& r, const std::string& source) {
  RawStorage out;
  out.source = source;
  out.line = r.line();
  auto& s = out.spec;
  s.id = r.text("id");
  s.technology = r.text("technology");
  s.region = r.text_or("region", "");
  const auto dc = parse_duration_class(r.text("duration_class"));
  if (!dc) r.fail("duration_class", "expected short or long");
  s.duration_class = *dc;
  const auto status = parse_asset_status(r.text("status"));
  if (!status) r.fail("status", "expected fixed or candidate");
  s.status = *status;
  s.power_mw = r.non_negative("power_mw");
  s.duration_h = r.number("duration_h");
  if (!(s.duration_h > 0.0)) r.fail("duration_h", "must be > 0");
  s.rte = r.number("rte");
  if (!(s.rte > 0.0 && s.rte <= 1.0)) r.fail("rte", "outside (0,1]");
  s.soc_min_mwh = r.non_negative("soc_min_mwh", 0.0);
  s.soc_max_mwh = r.non_negative("soc_max_mwh", s.power_mw * s.duration_h);
  if (s.soc_min_mwh > s.soc_max_mwh) r.fail("soc_min_mwh", "exceeds soc_max_mwh");
  s.fom_cost_per_mw_yr = r.non_negative("fom_cost_per_mw_yr", 0.0);
  s.invest_cost_energy_per_mwh_yr = r.non_negative("invest_cost_energy_per_mwh_yr", 0.0);
  s.invest_cost_power_per_mw_yr = r.non_negative("invest_cost_power_per_mw_yr", 0.0);
  s.invest_limit_power_mw = r.non_negative("invest_limit_power_mw", 0.0);
  s.invest_limit_energy_mwh =
      r.non_negative("invest_limit_energy_mwh", s.invest_limit_power_mw * s.duration_h);
  return out;
}

}  // namespace

InputFiles InputFiles::in_directory(const std::filesystem::path& dir) {
  return {dir / "generators.csv", dir / "storages.csv",  dir / "demand.csv",
          dir / "availability.csv", dir / "costs.csv", dir / "hourly_costs.csv"};
}

std::vector<std::filesystem::path> InputFiles::existing() const {
  std::vector<std::filesystem::path> out;
  for (const auto* p : {&generators, &storages, &demand, &availability, &costs, &hourly_costs}) {
    if (usable(*p)) out.push_back(*p);
  }
  return out;
}

RawTables load_system(const InputFiles& files) {
  RawTables raw;

  {
    const auto table = read_csv(files.demand);
    table.column("hour");
    table.column("mw");
    SeriesBuilder demand;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      demand.put(r, r.hour("hour"), r.non_negative("mw"));
    }
    raw.demand_mw = demand.finish(table.source, "demand");
    raw.hours = static_cast<int>(raw.demand_mw.size());
  }

  std::map<std::string, std::size_t> series_first_line;
  if (usable(files.availability)) {
    const auto table = read_csv(files.availability);
    table.column("asset_id");
    table.column("hour");
    table.column("factor");
    std::map<std::string, SeriesBuilder> builders;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      const auto id = r.text("asset_id");
      series_first_line.emplace(id, r.line());
      builders[id].put(r, r.hour("hour"), r.fraction("factor"));
    }
    for (const auto& [id, b] : builders) {
      Series s = b.finish(table.source, "availability '" + id + "'");
      if (s.size() != raw.hours) {
        throw InputError(table.source, series_first_line[id],
                         "availability '" + id + "' has " + std::to_string(s.size()) +
                             " hours, demand has " + std::to_string(raw.hours));
      }
      raw.availability.emplace(id, std::move(s));
    }
  }

  {
    const auto table = read_csv(files.generators);
    for (const auto* c : {"id", "technology", "kind", "status", "capacity_mw", "gen_cost_per_mwh"}) {
      table.column(c);
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      auto g = read_generator(r, table.source);
      if (!ids.insert(g.spec.id).second) r.fail("id", "duplicate generator id '" + g.spec.id + "'");
      if (!g.availability_id.empty() && !raw.availability.contains(g.availability_id)) {
        r.fail("availability_id", "unknown availability series '" + g.availability_id + "'");
      }
      raw.generators.push_back(std::move(g));
    }
  }

  if (usable(files.storages)) {
    const auto table = read_csv(files.storages);
    for (const auto* c : {"id", "technology", "duration_class", "status", "power_mw", "duration_h", "rte"}) {
      table.column(c);
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      auto s = read_storage(r, table.source);
      if (!ids.insert(s.spec.id).second) r.fail("id", "duplicate storage id '" + s.spec.id + "'");
      raw.storages.push_back(std::move(s));
    }
  }

  {
    const auto table = read_csv(files.costs);
    table.column("parameter");
    table.column("value");
    bool have_imbalance = false;
    bool have_shortage = false;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      const auto name = r.text("parameter");
      if (name == "imbalance_cost") {
        raw.imbalance_cost = r.non_negative("value");
        have_imbalance = true;
      } else if (name == "reserve_short_cost") {
        raw.reserve_short_cost = r.non_negative("value");
        have_shortage = true;
      } else {
        r.fail("parameter", "unknown cost parameter '" + name + "'");
      }
    }
    if (!have_imbalance) throw InputError(table.source, 0, "missing parameter 'imbalance_cost'");
    if (!have_shortage) throw InputError(table.source, 0, "missing parameter 'reserve_short_cost'");
  }

  if (usable(files.hourly_costs)) {
    const auto table = read_csv(files.hourly_costs);
    for (const auto* c : {"asset_id", "hour", "gen_cost_per_mwh", "reserve_cost_per_mw"}) table.column(c);
    std::map<std::string, std::pair<SeriesBuilder, SeriesBuilder>> builders;
    std::map<std::string, std::size_t> first_line;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const Record r(table, i);
      const auto id = r.text("asset_id");
      const bool known = std::any_of(raw.generators.begin(), raw.generators.end(),
                                     [&](const RawGenerator& g) { return g.spec.id == id; });
      if (!known) r.fail("asset_id", "unknown generator '" + id + "'");
      first_line.emplace(id, r.line());
      const int hour = r.hour("hour");
      builders[id].first.put(r, hour, r.non_negative("gen_cost_per_mwh"));
      builders[id].second.put(r, hour, r.non_negative("reserve_cost_per_mw"));
    }
    for (const auto& [id, b] : builders) {
      HourlyCost hc{b.first.finish(table.source, "hourly costs '" + id + "'"),
                    b.second.finish(table.source, "hourly costs '" + id + "'")};
      if (hc.gen_cost_per_mwh.size() != raw.hours) {
        throw InputError(table.source, first_line[id],
                         "hourly costs '" + id + "' do not cover the demand horizon");
      }
      raw.hourly_costs.emplace(id, std::move(hc));
    }
  }
  return raw;
}

}  // namespace ldes::data
