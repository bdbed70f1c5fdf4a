#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldes/capacity_model.hpp"
#include "ldes/data_pipeline.hpp"
#include "ldes/scenario.hpp"

namespace ldes::report {

inline constexpr const char* kEngineVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitSolverError = 3,
  kExitSweepFailed = 4,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- config

/// Run configuration, read from a JSON file. Relative paths resolve against
/// the directory holding the config file.
struct RunConfig {
  std::filesystem::path path;
  std::string text;  // raw bytes, hashed into the manifest

  data::InputFiles inputs;
  std::optional<std::filesystem::path> snapshot;  // instance JSON instead of CSVs
  data::AssemblyOptions assembly;

  std::vector<double> sweep_capacities_mw;
  std::vector<double> soc_capacities_mw;  // empty: every swept point
  std::optional<double> bisection_tol_mw;

  scenario::EngineOptions engine;
  std::filesystem::path out_dir = "out";
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// The instance plus every file it was read from.
struct LoadedInstance {
  SystemInstance instance;
  std::vector<std::filesystem::path> sources;
};

LoadedInstance load_instance(const RunConfig& config);

/// Reads capacities from a comma-separated list or, when `spec` names an
/// existing file, from that file (one value per line or comma-separated).
std::vector<double> parse_capacity_list(const std::string& spec);

// ---------------------------------------------------------------- tables

/// In-memory CSV table with a fixed header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

/// Shortest text that reads back to the same double.
std::string format_number(double v);

Table cost_breakdown_table(const scenario::CostBreakdown& breakdown);
Table boundary_curve_table(const std::vector<scenario::BoundaryCurvePoint>& points);
Table investment_mix_table(const std::vector<scenario::BoundaryCurvePoint>& points);
Table cost_reduction_table(const std::vector<scenario::BoundaryCurvePoint>& points);
Table decomposition_table(const std::vector<scenario::BoundaryCurvePoint>& points);
Table soc_series_table(const std::vector<scenario::BoundaryCurvePoint>& points,
                       const std::vector<double>& selected_mw);
/// Hourly p, r_up, p_ch, p_dis, r_st_up and v per asset plus system slacks.
Table dispatch_table(const capacity::ModelArtifacts& model, const SystemInstance& instance,
                     const Eigen::VectorXd& primal);
Table solution_table(const capacity::ModelArtifacts& model, const Eigen::VectorXd& primal);
Table registry_table(const capacity::ModelArtifacts& model);
Table columns_table(const capacity::ModelArtifacts& model);

/// Parses a solution table back into a primal vector for `lp`.
Eigen::VectorXd read_solution(const std::filesystem::path& path, const lp::LinearProgram& lp);

// ---------------------------------------------------------------- output

/// Writes via a temporary file in the same directory followed by a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunManifest {
  std::string command;
  std::string config_sha256;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs;  // file name, digest
  lp::SolverConfig solver;
  int workers = 1;
  std::string started_utc;
  std::string finished_utc;
  std::vector<StageTiming> timings;

  std::string to_json() const;
};

std::string utc_timestamp(std::chrono::system_clock::time_point t);

/// Collects output files, writes them atomically and records their digests.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void add(const std::string& name, std::string contents);
  /// Creates the directory and writes every file; returns (name, digest).
  std::vector<std::pair<std::string, std::string>> commit() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// ---------------------------------------------------------------- commands

struct GlobalOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::string> solver;
  std::optional<int> seed;
  std::optional<int> workers;
  std::optional<double> tol;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::filesystem::path out_dir;
  std::vector<std::string> files;
  std::string summary;  // one human-readable line
};

/// Applies environment overrides (LDES_SOLVER, LDES_OUT_DIR) and then flags.
RunConfig resolve_config(const GlobalOptions& options);

CommandResult cmd_baseline(const GlobalOptions& options);
CommandResult cmd_opportunity(const GlobalOptions& options, double ldes_power_mw);
CommandResult cmd_sweep(const GlobalOptions& options, std::optional<std::string> capacities);
CommandResult cmd_emit_model(const GlobalOptions& options, const std::string& mode,
                             std::optional<double> ldes_power_mw);
CommandResult cmd_check(const GlobalOptions& options, const std::filesystem::path& solution,
                        const std::string& mode, std::optional<double> ldes_power_mw,
                        std::optional<double> q_star);

/// Machine-readable error document for stderr.
std::string error_json(int exit_code, const std::string& kind, const std::string& message);

/// Full CLI entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace ldes::report
