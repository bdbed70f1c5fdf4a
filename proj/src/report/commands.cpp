#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldes/report.hpp"

namespace ldes::report {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& stage, F&& f) {
    const auto start = Clock::now();
    struct Record {
      std::vector<StageTiming>& sink;
      std::string stage;
      Clock::time_point start;
      ~Record() {
        sink.push_back({stage, std::chrono::duration<double>(Clock::now() - start).count()});
      }
    } record{sink_, stage, start};
    return f();
  }

 private:
  std::vector<StageTiming>& sink_;
};

// Shared scaffolding: config, instance, timings and the output set.
struct Run {
  std::string command;
  RunConfig config;
  LoadedInstance loaded;
  std::vector<StageTiming> timings;
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
  OutputSet outputs;

  Run(std::string name, const GlobalOptions& options)
      : command(std::move(name)), config(resolve_config(options)), outputs(config.out_dir) {
    Stopwatch(timings).time("load", [&] {
      loaded = load_instance(config);
      return 0;
    });
  }

  const SystemInstance& instance() const { return loaded.instance; }

  CommandResult finish(int exit_code, std::string summary) {
    RunManifest manifest;
    manifest.command = command;
    manifest.config_sha256 = sha256_hex(config.text);
    for (const auto& p : loaded.sources) manifest.inputs.emplace_back(p.string(), sha256_file(p));
    manifest.solver = config.engine.solver;
    manifest.workers = config.engine.workers;
    manifest.started_utc = utc_timestamp(started);
    manifest.outputs = outputs.commit();
    manifest.finished_utc = utc_timestamp(std::chrono::system_clock::now());
    manifest.timings = timings;
    write_atomic(outputs.dir() / "manifest.json", manifest.to_json());

    CommandResult result;
    result.exit_code = exit_code;
    result.out_dir = outputs.dir();
    for (const auto& [name, digest] : manifest.outputs) result.files.push_back(name);
    result.files.push_back("manifest.json");
    result.summary = std::move(summary);
    return result;
  }
};

Json breakdown_json(const scenario::CostBreakdown& b) {
  Json items = Json::array();
  for (const auto& item : b.items) {
    items.push_back({{"category", item.category}, {"label", item.label}, {"value", item.value}});
  }
  return items;
}

Json point_json(const scenario::BoundaryCurvePoint& p) {
  Json j;
  j["ldes_power_mw"] = p.ldes_power_mw;
  j["status"] = p.status == scenario::PointStatus::solved ? "solved" : "failed";
  j["diagnostics"] = p.diagnostics;
  if (p.status == scenario::PointStatus::solved) {
    j["boundary_cost_usd_per_mw"] = p.boundary_cost_per_mw;
    j["boundary_cost_usd_per_kw"] = p.boundary_cost_per_kw();
    j["q_over"] = p.budget_overrun;
    j["viable"] = p.viable;
    j["net_cost_reduction_usd"] = p.net_cost_reduction;
    j["budget_lhs_usd"] = p.budget_lhs;
  }
  return j;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

RunConfig resolve_config(const GlobalOptions& options) {
  if (options.config.empty()) throw UsageError("--config is required");
  RunConfig cfg = load_config(options.config);
  if (const char* env = std::getenv("LDES_SOLVER"); env && *env) cfg.engine.solver.backend = env;
  if (const char* env = std::getenv("LDES_OUT_DIR"); env && *env) cfg.out_dir = env;
  if (options.solver) cfg.engine.solver.backend = *options.solver;
  if (options.out_dir) cfg.out_dir = *options.out_dir;
  if (options.seed) {
    if (*options.seed < 0) throw UsageError("--seed must be >= 0");
    cfg.engine.solver.seed = static_cast<std::uint64_t>(*options.seed);
  }
  if (options.workers) {
    if (*options.workers < 1) throw UsageError("--workers must be >= 1");
    cfg.engine.workers = *options.workers;
  }
  if (options.tol) {
    if (!(*options.tol > 0.0)) throw UsageError("--tol must be > 0");
    cfg.engine.solver.feasibility_tol = *options.tol;
    cfg.engine.solver.optimality_tol = *options.tol;
  }
  const auto backends = lp::available_backends();
  if (std::find(backends.begin(), backends.end(), cfg.engine.solver.backend) == backends.end()) {
    throw UsageError("unknown solver backend '" + cfg.engine.solver.backend + "'");
  }
  return cfg;
}

CommandResult cmd_baseline(const GlobalOptions& options) {
  Run run("baseline", options);
  const auto baseline = Stopwatch(run.timings).time(
      "baseline", [&] { return scenario::run_baseline(run.instance(), run.config.engine); });
  const auto& sol = *baseline.solution;

  Json doc;
  doc["command"] = "baseline";
  doc["status"] = lp::to_string(sol.outcome.status);
  doc["objective"] = baseline.q_star;
  doc["hours"] = run.instance().horizon_hours;
  doc["variables"] = sol.model.lp.num_variables();
  doc["constraints"] = sol.model.lp.num_constraints();
  doc["breakdown"] = breakdown_json(baseline.breakdown);

  run.outputs.add("baseline_result.json", doc.dump(2) + "\n");
  run.outputs.add("cost_breakdown.csv", cost_breakdown_table(baseline.breakdown).to_csv());
  run.outputs.add("dispatch.csv", dispatch_table(sol.model, run.instance(), sol.outcome.primal).to_csv());
  run.outputs.add("solution.csv", solution_table(sol.model, sol.outcome.primal).to_csv());
  run.outputs.add("instance.json", data::snapshot_json(run.instance()));
  return run.finish(kExitOk, "baseline q* = " + format_number(baseline.q_star) + " $");
}

CommandResult cmd_opportunity(const GlobalOptions& options, double ldes_power_mw) {
  Run run("opportunity", options);
  if (!(ldes_power_mw > 0.0)) throw capacity::UnboundedBoundaryCost();
  const auto baseline = Stopwatch(run.timings).time(
      "baseline", [&] { return scenario::run_baseline(run.instance(), run.config.engine); });
  auto engine = run.config.engine;
  engine.keep_dispatch = true;
  const auto point = Stopwatch(run.timings).time("opportunity", [&] {
    return scenario::run_opportunity(run.instance(), baseline.q_star, ldes_power_mw, engine);
  });
  const auto& sol = *point.solution;
  const std::vector<scenario::BoundaryCurvePoint> points{point};

  Json doc;
  doc["command"] = "opportunity";
  doc["q_star"] = baseline.q_star;
  doc["point"] = point_json(point);
  doc["breakdown"] = breakdown_json(point.breakdown);

  run.outputs.add("opportunity_result.json", doc.dump(2) + "\n");
  run.outputs.add("investment_mix.csv", investment_mix_table(points).to_csv());
  run.outputs.add("cost_reduction.csv", cost_reduction_table(points).to_csv());
  run.outputs.add("decomposition.csv", decomposition_table(points).to_csv());
  run.outputs.add("soc_series.csv", soc_series_table(points, {}).to_csv());
  run.outputs.add("dispatch.csv", dispatch_table(sol.model, run.instance(), sol.outcome.primal).to_csv());
  run.outputs.add("solution.csv", solution_table(sol.model, sol.outcome.primal).to_csv());
  return run.finish(kExitOk, "boundary cost at " + format_number(ldes_power_mw) + " MW = " +
                                 format_number(point.boundary_cost_per_mw) + " $/MW (" +
                                 fixed(point.boundary_cost_per_kw(), 4) + " $/kW), " +
                                 (point.viable ? "viable" : "not viable"));
}

CommandResult cmd_sweep(const GlobalOptions& options, std::optional<std::string> capacities) {
  Run run("sweep", options);
  const auto list = capacities ? parse_capacity_list(*capacities) : run.config.sweep_capacities_mw;
  if (list.empty()) throw UsageError("sweep needs at least one LDES capacity");
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!(list[i] > 0.0)) throw UsageError("LDES capacities must be > 0");
    if (i > 0 && list[i] < list[i - 1]) throw UsageError("LDES capacities must be sorted ascending");
  }

  const auto baseline = Stopwatch(run.timings).time(
      "baseline", [&] { return scenario::run_baseline(run.instance(), run.config.engine); });
  const auto points = Stopwatch(run.timings).time("sweep", [&] {
    return scenario::sweep_boundary_curve(run.instance(), baseline.q_star, list, run.config.engine);
  });
  const auto minimum = scenario::minimum_viable_capacity(points);
  std::optional<double> refined;
  if (run.config.bisection_tol_mw && minimum) {
    refined = Stopwatch(run.timings).time("bisection", [&] {
      return scenario::refine_minimum_viable_capacity(run.instance(), baseline.q_star, points,
                                                      *run.config.bisection_tol_mw, run.config.engine);
    });
  }

  std::size_t failed = 0;
  Json rows = Json::array();
  for (const auto& p : points) {
    if (p.status != scenario::PointStatus::solved) ++failed;
    rows.push_back(point_json(p));
  }
  Json doc;
  doc["command"] = "sweep";
  doc["q_star"] = baseline.q_star;
  doc["points"] = std::move(rows);
  doc["failed_points"] = failed;
  doc["minimum_viable_capacity_mw"] = minimum ? Json(*minimum) : Json(nullptr);
  doc["refined_minimum_viable_capacity_mw"] = refined ? Json(*refined) : Json(nullptr);

  run.outputs.add("sweep_result.json", doc.dump(2) + "\n");
  run.outputs.add("boundary_curve.csv", boundary_curve_table(points).to_csv());
  run.outputs.add("investment_mix.csv", investment_mix_table(points).to_csv());
  run.outputs.add("cost_reduction.csv", cost_reduction_table(points).to_csv());
  run.outputs.add("decomposition.csv", decomposition_table(points).to_csv());
  run.outputs.add("soc_series.csv", soc_series_table(points, run.config.soc_capacities_mw).to_csv());
  run.outputs.add("cost_breakdown.csv", cost_breakdown_table(baseline.breakdown).to_csv());

  const int code = failed == points.size() ? kExitSweepFailed : kExitOk;
  return run.finish(code, std::to_string(points.size() - failed) + "/" +
                              std::to_string(points.size()) + " points solved; q* = " +
                              format_number(baseline.q_star) + " $");
}

CommandResult cmd_emit_model(const GlobalOptions& options, const std::string& mode,
                             std::optional<double> ldes_power_mw) {
  if (mode != "baseline" && mode != "opportunity") {
    throw UsageError("--mode must be 'baseline' or 'opportunity'");
  }
  Run run("emit-model", options);
  capacity::ModelArtifacts model;
  if (mode == "baseline") {
    model = capacity::build_baseline_model(run.instance(), scenario::baseline_overrides(run.instance()));
  } else {
    const double power = ldes_power_mw.value_or(0.0);
    if (!(power > 0.0)) throw capacity::UnboundedBoundaryCost();
    const auto baseline = Stopwatch(run.timings).time(
        "baseline", [&] { return scenario::run_baseline(run.instance(), run.config.engine); });
    model = capacity::build_opportunity_model(
        run.instance(),
        scenario::opportunity_overrides(run.instance(), power, run.config.engine.overrun_penalty),
        baseline.q_star);
  }
  run.outputs.add(mode + ".mps", lp::emit_standard_form(model.lp));
  run.outputs.add("registry.csv", registry_table(model).to_csv());
  run.outputs.add("columns.csv", columns_table(model).to_csv());
  return run.finish(kExitOk, mode + " model: " + std::to_string(model.lp.num_variables()) +
                                 " columns, " + std::to_string(model.lp.num_constraints()) + " rows");
}

CommandResult cmd_check(const GlobalOptions& options, const std::filesystem::path& solution,
                        const std::string& mode, std::optional<double> ldes_power_mw,
                        std::optional<double> q_star) {
  if (mode != "baseline" && mode != "opportunity") {
    throw UsageError("--mode must be 'baseline' or 'opportunity'");
  }
  Run run("check", options);
  capacity::ModelArtifacts model;
  if (mode == "baseline") {
    model = capacity::build_baseline_model(run.instance(), scenario::baseline_overrides(run.instance()));
  } else {
    const double power = ldes_power_mw.value_or(0.0);
    if (!(power > 0.0)) throw capacity::UnboundedBoundaryCost();
    const double bound = q_star ? *q_star : scenario::run_baseline(run.instance(), run.config.engine).q_star;
    model = capacity::build_opportunity_model(
        run.instance(),
        scenario::opportunity_overrides(run.instance(), power, run.config.engine.overrun_penalty), bound);
  }

  lp::SolveOutcome candidate;
  candidate.status = lp::SolveStatus::optimal;
  candidate.primal = read_solution(solution, model.lp);
  candidate.objective = model.lp.evaluate_objective(candidate.primal);
  const double tol = run.config.engine.solver.feasibility_tol;
  const auto report = lp::check_solution(model.lp, candidate, std::max(tol, 1e-6));

  Json doc;
  doc["command"] = "check";
  doc["mode"] = mode;
  doc["passed"] = report.passed();
  doc["objective"] = candidate.objective;
  doc["tolerance"] = report.tolerance;
  doc["max_bound_violation"] = report.max_bound_violation;
  doc["worst_variable"] = report.worst_variable.valid()
                              ? Json(model.lp.variable(report.worst_variable).name)
                              : Json(nullptr);
  doc["max_constraint_violation"] = report.max_constraint_violation;
  doc["worst_constraint"] =
      report.worst_constraint.valid()
          ? Json(model.lp.constraint(report.worst_constraint).name + " (" +
                 capacity::to_string(model.registry.at(report.worst_constraint).tag) + ")")
          : Json(nullptr);
  doc["simultaneous_charge_hours"] =
      capacity::find_simultaneous_charge(model, run.instance(), candidate.primal, tol).size();
  run.outputs.add("check_report.json", doc.dump(2) + "\n");
  return run.finish(report.passed() ? kExitOk : kExitSolverError,
                    std::string("solution ") + (report.passed() ? "passes" : "FAILS") +
                        " (max bound violation " + format_number(report.max_bound_violation) +
                        ", max row violation " + format_number(report.max_constraint_violation) + ")");
}

std::string error_json(int exit_code, const std::string& kind, const std::string& message) {
  Json doc;
  doc["error"] = {{"exit_code", exit_code}, {"kind", kind}, {"message", message}};
  return doc.dump();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Boundary-cost analysis for long-duration energy storage"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::string config;
  std::string out_dir;
  std::string solver;
  int seed = 0;
  int workers = 1;
  double tol = 0.0;
  auto* o_config = app.add_option("--config", config, "Run configuration (JSON)");
  auto* o_out = app.add_option("--out-dir", out_dir, "Output directory");
  auto* o_solver = app.add_option("--solver", solver, "LP backend: highs or highs-ipm");
  auto* o_seed = app.add_option("--seed", seed, "Solver random seed");
  auto* o_workers = app.add_option("--workers", workers, "Parallel sweep workers");
  auto* o_tol = app.add_option("--tol", tol, "Feasibility and optimality tolerance");

  auto* baseline = app.add_subcommand("baseline", "Solve the gas-inclusive baseline model");
  auto* opportunity = app.add_subcommand("opportunity", "Boundary cost at one LDES capacity");
  double ldes_power = 0.0;
  opportunity->add_option("--ldes-power-mw", ldes_power, "LDES power capacity (MW)")->required();
  auto* sweep = app.add_subcommand("sweep", "Boundary-cost curve over LDES capacities");
  std::string capacities;
  auto* o_caps = sweep->add_option("--capacities", capacities,
                                   "Comma-separated MW values or a file of values");
  auto* emit = app.add_subcommand("emit-model", "Write the LP as fixed MPS plus row registry");
  std::string emit_mode = "baseline";
  double emit_power = 0.0;
  emit->add_option("--mode", emit_mode, "baseline or opportunity")->required();
  auto* o_emit_power = emit->add_option("--ldes-power-mw", emit_power, "LDES power for opportunity mode");
  auto* check = app.add_subcommand("check", "Verify a solution file against the model");
  std::string solution_path;
  std::string check_mode = "baseline";
  double check_power = 0.0;
  double check_q = 0.0;
  check->add_option("--solution", solution_path, "solution.csv from a previous run")->required();
  check->add_option("--mode", check_mode, "baseline or opportunity");
  auto* o_check_power = check->add_option("--ldes-power-mw", check_power, "LDES power for opportunity mode");
  auto* o_check_q = check->add_option("--q-star", check_q, "Cost bound (default: solve baseline)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json(kExitInputError, "usage_error", e.what()) << "\n";
    return kExitInputError;
  }

  g.config = config;
  if (*o_out) g.out_dir = out_dir;
  if (*o_solver) g.solver = solver;
  if (*o_seed) g.seed = seed;
  if (*o_workers) g.workers = workers;
  if (*o_tol) g.tol = tol;
  (void)o_config;

  try {
    CommandResult result;
    if (*baseline) {
      result = cmd_baseline(g);
    } else if (*opportunity) {
      result = cmd_opportunity(g, ldes_power);
    } else if (*sweep) {
      result = cmd_sweep(g, *o_caps ? std::optional<std::string>(capacities) : std::nullopt);
    } else if (*emit) {
      result = cmd_emit_model(g, emit_mode, *o_emit_power ? std::optional<double>(emit_power) : std::nullopt);
    } else if (*check) {
      result = cmd_check(g, solution_path, check_mode,
                         *o_check_power ? std::optional<double>(check_power) : std::nullopt,
                         *o_check_q ? std::optional<double>(check_q) : std::nullopt);
    }
    std::cout << result.summary << "\n";
    std::cout << "outputs: " << result.out_dir.string() << "\n";
    if (result.exit_code == kExitSweepFailed) {
      std::cerr << error_json(kExitSweepFailed, "sweep_failed", "no sweep point solved") << "\n";
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    std::cerr << error_json(kExitInputError, "usage_error", e.what()) << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    std::cerr << error_json(kExitInputError, "config_error", e.what()) << "\n";
    return kExitInputError;
  } catch (const data::InputError& e) {
    std::cerr << error_json(kExitInputError, "input_error", e.what()) << "\n";
    return kExitInputError;
  } catch (const scenario::SolverFailure& e) {
    std::cerr << error_json(kExitSolverError, "solver_error", e.what()) << "\n";
    return kExitSolverError;
  } catch (const lp::SolverUnavailable& e) {
    std::cerr << error_json(kExitSolverError, "solver_error", e.what()) << "\n";
    return kExitSolverError;
  } catch (const std::invalid_argument& e) {
    std::cerr << error_json(kExitInputError, "input_error", e.what()) << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << error_json(kExitSolverError, "internal_error", e.what()) << "\n";
    return kExitSolverError;
  }
}

}  // namespace ldes::report
