#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldes/domain.hpp"

namespace ldes::data {

/// Error raised while reading an input table; carries the file and the
/// 1-based line of the offending record (0 when the file itself is at fault).
class InputError : public std::runtime_error {
 public:
  InputError(std::string file, std::size_t line, const std::string& message);
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// A parsed CSV file. Fields are trimmed; quoting follows RFC 4180.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // source line of each row

  std::size_t column(const std::string& name) const;  // throws InputError
  std::optional<std::size_t> find_column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source);
CsvTable read_csv(const std::filesystem::path& path);

struct RawGenerator {
  GeneratorSpec spec;               // series left empty until assembly
  double gen_cost_per_mwh = 0.0;    // time-constant unless overridden hourly
  double reserve_cost_per_mw = 0.0;
  std::string availability_id;      // empty for firm units
  std::string source;
  std::size_t line = 0;
};

struct RawStorage {
  StorageSpec spec;
  std::string source;
  std::size_t line = 0;
};

struct HourlyCost {
  Series gen_cost_per_mwh;
  Series reserve_cost_per_mw;
};

struct RawTables {
  int hours = 0;
  std::vector<RawGenerator> generators;
  std::vector<RawStorage> storages;
  Series demand_mw;
  std::map<std::string, Series> availability;     // by series id
  std::map<std::string, HourlyCost> hourly_costs; // by generator id
  double imbalance_cost = 0.0;
  double reserve_short_cost = 0.0;
};

struct InputFiles {
  std::filesystem::path generators;
  std::filesystem::path storages;  // optional: empty or missing means none
  std::filesystem::path demand;
  std::filesystem::path availability;
  std::filesystem::path costs;
  std::filesystem::path hourly_costs;  // optional

  /// Default file names inside `dir`.
  static InputFiles in_directory(const std::filesystem::path& dir);
  std::vector<std::filesystem::path> existing() const;
};

RawTables load_system(const InputFiles& files);

/// Optimal 1-D k-means on weighted points: minimizes the weighted
/// within-cluster sum of squares. Returns the cluster of each point
/// (clusters numbered by ascending centroid). Equal values always share a
/// cluster, so fewer than k clusters come back when there are fewer distinct
/// values.
std::vector<int> kmeans_1d(const std::vector<double>& values, const std::vector<double>& weights,
                           int k);

/// Clusters fixed generators within (technology, region, kind, is_gas,
/// provides_reserve) groups on time-averaged generation cost. Candidates
/// pass through unchanged.
std::vector<GeneratorSpec> cluster_generators(const std::vector<GeneratorSpec>& generators,
                                              int k_per_group);

Series derive_reserve_requirement(const Series& demand_mw, double fraction);

/// A zero-capacity candidate clone of every fixed renewable unit. The
/// investment limit defaults to the source capacity; a per-technology limit
/// is split across that technology's clones in proportion to capacity.
std::vector<GeneratorSpec> mirror_candidates(
    const std::vector<GeneratorSpec>& generators,
    const std::map<std::string, double>& technology_limit_mw = {});

struct CandidateStorageOptions {
  std::string id;
  std::string technology;
  std::string region;
  double duration_h = 4.0;
  double rte = 0.85;
  double invest_limit_power_mw = 0.0;
  std::optional<double> invest_limit_energy_mwh;  // default: duration x power limit
  double invest_cost_energy_per_mwh_yr = 0.0;
  double invest_cost_power_per_mw_yr = 0.0;
  double fom_cost_per_mw_yr = 0.0;
};

struct AssemblyOptions {
  double reserve_fraction = 0.15;
  bool cluster = true;
  int k_per_group = 3;
  bool mirror_renewables = true;
  std::map<std::string, double> renewable_limit_mw;  // per technology
  std::optional<CandidateStorageOptions> sdes_candidate;
  std::optional<CandidateStorageOptions> ldes_candidate;

  /// 15% reserve, three clusters per group, mirrored renewables, a 4 h
  /// battery candidate (43 GW, 85% round trip) and a 100 h LDES candidate
  /// (42.5% round trip).
  static AssemblyOptions full_system_defaults();
};

SystemInstance assemble_instance(const RawTables& raw, const AssemblyOptions& options);

/// Self-describing JSON snapshot; identical instances give identical text.
std::string snapshot_json(const SystemInstance& instance);
SystemInstance instance_from_json(const std::string& text);

}  // namespace ldes::data
