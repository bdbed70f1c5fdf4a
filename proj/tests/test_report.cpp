#include <doctest.h>

#include <json.hpp>

#include "cli_runner.hpp"
#include "ldes/report.hpp"
#include "toy_instances.hpp"

using namespace ldes;
using namespace ldes::report;
using ldes::testing::ScratchDir;
using ldes::testing::slurp;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const fs::path kData = fs::path(LDES_SOURCE_DIR) / "data";

testing::CliRun cli(const std::string& args, const ScratchDir& scratch, const std::string& env = "") {
  return testing::run_cli_process(LDES_CLI_PATH, args, scratch, env);
}

std::string config_arg(const std::string& dataset) {
  return "--config '" + (kData / dataset / "config.json").string() + "'";
}

}  // namespace

TEST_CASE("number formatting round trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(154.5) == "154.5");
  CHECK(format_number(1e-7) == "1e-07");
  for (const double v : {1.0 / 3.0, 2.0 / 7.0, 123456.789, -9.87654321e-5}) {
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("CSV tables quote only when needed") {
  Table t{{"a", "b"}, {{"x,y", "plain"}, {"say \"hi\"", ""}}};
  CHECK(t.to_csv() == "a,b\n\"x,y\",plain\n\"say \"\"hi\"\"\",\n");
}

TEST_CASE("digests and atomic writes") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  ScratchDir dir("atomic");
  write_atomic(dir / "f.txt", "one");
  write_atomic(dir / "f.txt", "two");
  CHECK(slurp(dir / "f.txt") == "two");
  CHECK(sha256_file(dir / "f.txt") == sha256_hex("two"));
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++entries;
  CHECK(entries == 1);  // no temporary left behind
}

TEST_CASE("config parsing") {
  ScratchDir dir("config");
  const auto cfg = parse_config(R"({"data_dir": "tables", "sweep": {"capacities_mw": [5, 10], "bisection_tol_mw": 0.5},
                                    "engine": {"workers": 2}, "solver": {"backend": "highs-ipm", "seed": 7}})",
                                dir.path());
  CHECK(cfg.inputs.generators == dir.path() / "tables" / "generators.csv");
  CHECK(cfg.sweep_capacities_mw == std::vector<double>{5, 10});
  CHECK(cfg.bisection_tol_mw == 0.5);
  CHECK(cfg.engine.workers == 2);
  CHECK(cfg.engine.solver.backend == "highs-ipm");
  CHECK(cfg.engine.solver.seed == 7u);
  CHECK_FALSE(cfg.assembly.cluster);

  CHECK_THROWS_AS(parse_config(R"({"data_dir": ".", "mystery": 1})", dir.path()), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"data_dir": ".", "solver": {"backend": 3}})", dir.path()), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json", dir.path()), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"data_dir": ".", "assembly": {"preset": "huge"}})", dir.path()), ConfigError);
  const auto full = parse_config(R"({"data_dir": ".", "assembly": {"preset": "full"}})", dir.path());
  CHECK(full.assembly.cluster);
  CHECK(full.assembly.ldes_candidate.has_value());
  CHECK_THROWS_AS(parse_config(R"({"engine": {"workers": 2}})", dir.path()), ConfigError);
}

TEST_CASE("capacity lists") {
  CHECK(parse_capacity_list("10, 20,40") == std::vector<double>{10, 20, 40});
  ScratchDir dir("caps");
  dir.write("caps.txt", "5\n7.5\n\n10\n");
  CHECK(parse_capacity_list((dir / "caps.txt").string()) == std::vector<double>{5, 7.5, 10});
  CHECK_THROWS(parse_capacity_list("10,abc"));
}

TEST_CASE("solution table reads back") {
  const auto s = testing::toy_a();
  const auto base = scenario::run_baseline(s);
  const auto& sol = *base.solution;
  ScratchDir dir("solution");
  write_atomic(dir / "solution.csv", solution_table(sol.model, sol.outcome.primal).to_csv());
  const auto x = read_solution(dir / "solution.csv", sol.model.lp);
  CHECK((x.array() == sol.outcome.primal.array()).all());
  CHECK(registry_table(sol.model).rows.size() == static_cast<std::size_t>(sol.model.lp.num_constraints()));
  CHECK(columns_table(sol.model).rows.size() == static_cast<std::size_t>(sol.model.lp.num_variables()));
}

TEST_CASE("CLI: baseline writes results and a manifest") {
  ScratchDir scratch("cli");
  const auto out = scratch / "out";
  const auto r = cli(config_arg("toy_a") + " --out-dir '" + out.string() + "' baseline", scratch);
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto doc = Json::parse(slurp(out / "baseline_result.json"));
  CHECK(doc["objective"].get<double>() == doctest::Approx(154.5));
  CHECK(doc["variables"] == 17);
  const auto manifest = Json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["command"] == "baseline");
  CHECK(manifest["engine_version"] == kEngineVersion);
  CHECK(manifest["inputs"].size() >= 4);
  for (const auto& name : {"baseline_result.json", "cost_breakdown.csv", "dispatch.csv", "solution.csv",
                           "instance.json"}) {
    CHECK(fs::exists(out / name));
  }
  CHECK(r.out.find("154.5") != std::string::npos);
}

TEST_CASE("CLI: exit codes and error documents") {
  ScratchDir scratch("cli");
  const auto out = (scratch / "out").string();

  SUBCASE("missing config") {
    const auto r = cli("--out-dir '" + out + "' baseline", scratch);
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.err)["error"]["kind"] == "usage_error");
  }
  SUBCASE("unknown subcommand option") {
    CHECK(cli(config_arg("toy_a") + " baseline --bogus", scratch).exit_code == 2);
  }
  SUBCASE("malformed input table names the file and line") {
    for (const auto& e : fs::directory_iterator(kData / "toy_b")) fs::copy_file(e.path(), scratch / e.path().filename().string());
    scratch.write("availability.csv", "asset_id,hour,factor\nsolar,1,1\nsolar,2,x\nsolar,3,0\n");
    const auto r = cli("--config '" + (scratch / "config.json").string() + "' --out-dir '" + out + "' baseline", scratch);
    CHECK(r.exit_code == 2);
    const auto err = Json::parse(r.err);
    CHECK(err["error"]["kind"] == "input_error");
    CHECK(err["error"]["message"].get<std::string>().find("availability.csv:3") != std::string::npos);
    CHECK_FALSE(fs::exists(out));  // nothing written on failure
  }
  SUBCASE("descending sweep capacities") {
    CHECK(cli(config_arg("toy_b") + " --out-dir '" + out + "' sweep --capacities 20,10", scratch).exit_code == 2);
  }
  SUBCASE("every sweep point failing") {
    for (const auto& e : fs::directory_iterator(kData / "toy_b")) fs::copy_file(e.path(), scratch / e.path().filename().string());
    scratch.write("config.json", R"({"data_dir": ".", "assembly": {"reserve_fraction": 0}, "engine": {"overrun_penalty": 0.01}})");
    const auto cfg = "--config '" + (scratch / "config.json").string() + "' --out-dir '" + out + "'";
    const auto all_fail = cli(cfg + " sweep --capacities 10,20", scratch);
    CHECK(all_fail.exit_code == 4);
    CHECK(Json::parse(all_fail.err)["error"]["kind"] == "sweep_failed");
    // 0.01 $ per unit overrun is enough once 200 MW share the cost.
    const auto partial = cli(cfg + " sweep --capacities 10,200", scratch);
    CHECK(partial.exit_code == 0);
    const auto doc = Json::parse(slurp(fs::path(out) / "sweep_result.json"));
    CHECK(doc["failed_points"] == 1);
  }
  SUBCASE("unknown solver via the environment, overridden by the flag") {
    CHECK(cli(config_arg("toy_a") + " --out-dir '" + out + "' baseline", scratch, "LDES_SOLVER=nope").exit_code == 2);
    CHECK(cli(config_arg("toy_a") + " --solver highs-ipm --out-dir '" + out + "' baseline", scratch,
              "LDES_SOLVER=nope")
              .exit_code == 0);
  }
  SUBCASE("output directory from the environment") {
    const auto r = cli(config_arg("toy_a") + " baseline", scratch, "LDES_OUT_DIR='" + out + "'");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(fs::path(out) / "manifest.json"));
  }
  SUBCASE("opportunity at zero capacity") {
    const auto r = cli(config_arg("toy_b") + " --out-dir '" + out + "' opportunity --ldes-power-mw 0", scratch);
    CHECK(r.exit_code == 2);
    CHECK(Json::parse(r.err)["error"]["message"].get<std::string>().find("unbounded boundary cost") !=
          std::string::npos);
  }
}

TEST_CASE("CLI: emit-model and check") {
  ScratchDir scratch("cli");
  const auto out = scratch / "out";
  const auto base = config_arg("toy_b") + " --out-dir '" + out.string() + "' ";
  REQUIRE(cli(base + "emit-model --mode opportunity --ldes-power-mw 10", scratch).exit_code == 0);
  const auto mps = slurp(out / "opportunity.mps");
  CHECK(lp::emit_standard_form(lp::parse_standard_form(mps)) == mps);
  CHECK(slurp(out / "registry.csv").find("cost_budget") != std::string::npos);

  REQUIRE(cli(base + "opportunity --ldes-power-mw 10", scratch).exit_code == 0);
  const auto doc = Json::parse(slurp(out / "opportunity_result.json"));
  CHECK(doc["point"]["boundary_cost_usd_per_mw"].get<double>() == doctest::Approx(12.0));
  fs::copy_file(out / "solution.csv", scratch / "solution.csv");

  const auto good = cli(base + "check --mode opportunity --ldes-power-mw 10 --solution '" +
                            (scratch / "solution.csv").string() + "'",
                        scratch);
  CHECK(good.exit_code == 0);
  CHECK(Json::parse(slurp(out / "check_report.json"))["passed"] == true);

  // Drop all solar output: the balance rows break.
  auto text = slurp(scratch / "solution.csv");
  std::string broken;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.find(",p,solar_cand,") != std::string::npos) line = line.substr(0, line.rfind(',') + 1) + "0";
    broken += line + "\n";
  }
  REQUIRE(broken != text);
  scratch.write("solution.csv", broken);
  const auto bad = cli(base + "check --mode opportunity --ldes-power-mw 10 --solution '" +
                           (scratch / "solution.csv").string() + "'",
                       scratch);
  CHECK(bad.exit_code == 3);
  const auto report = Json::parse(slurp(out / "check_report.json"));
  CHECK(report["passed"] == false);
  CHECK(report["max_constraint_violation"].get<double>() > 1.0);
}

TEST_CASE("CLI: repeated runs give identical result files") {
  ScratchDir scratch("cli");
  const auto a = scratch / "a";
  const auto b = scratch / "b";
  for (const auto& dir : {a, b}) {
    REQUIRE(cli(config_arg("toy_b") + " --seed 3 --workers 2 --out-dir '" + dir.string() + "' sweep --capacities 5,10,20",
                scratch)
                .exit_code == 0);
  }
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename().string();
    if (name == "manifest.json") continue;
    CHECK_MESSAGE(slurp(e.path()) == slurp(b / name), name);
    ++compared;
  }
  CHECK(compared == 7);
  auto ma = Json::parse(slurp(a / "manifest.json"));
  auto mb = Json::parse(slurp(b / "manifest.json"));
  CHECK(ma["outputs"] == mb["outputs"]);
}
