#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "dense_simplex.hpp"
#include "ldes/lp.hpp"

using namespace ldes::lp;
using ldes::testing::DenseSimplex;
using ldes::testing::DenseStatus;

namespace {

struct HandLp {
  std::string label;
  std::function<LinearProgram()> build;
  SolveStatus status;
  double objective;  // meaningful when optimal
};

LinearProgram make(Sense sense) {
  LinearProgram lp("HAND");
  lp.set_sense(sense);
  return lp;
}

// Each optimum is worked out by hand in the comment next to it.
std::vector<HandLp> hand_library() {
  std::vector<HandLp> lib;
  lib.push_back({"symmetric minimum",
                 [] {  // x + y >= 2 -> 2
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", 0, kInfinity);
                   auto y = lp.add_variable("y", 0, kInfinity);
                   lp.add_objective_term(x, 1);
                   lp.add_objective_term(y, 1);
                   lp.add_constraint("c1", {{x, 1}, {y, 1}}, Relation::greater_equal, 2);
                   return lp;
                 },
                 SolveStatus::optimal, 2.0});
  lib.push_back({"bound binding maximum",
                 [] {  // max c, c <= 5 -> 5
                   auto lp = make(Sense::maximize);
                   auto c = lp.add_variable("c", -kInfinity, kInfinity);
                   lp.add_objective_term(c, 1);
                   lp.add_constraint("cap", {{c, 1}}, Relation::less_equal, 5);
                   return lp;
                 },
                 SolveStatus::optimal, 5.0});
  lib.push_back({"two-row production plan",
                 [] {  // vertex (3,1): 3*3 + 2*1 = 11
                   auto lp = make(Sense::maximize);
                   auto x = lp.add_variable("x", 0, 3);
                   auto y = lp.add_variable("y", 0, kInfinity);
                   lp.add_objective_term(x, 3);
                   lp.add_objective_term(y, 2);
                   lp.add_constraint("r1", {{x, 1}, {y, 1}}, Relation::less_equal, 4);
                   lp.add_constraint("r2", {{x, 1}, {y, 3}}, Relation::less_equal, 6);
                   return lp;
                 },
                 SolveStatus::optimal, 11.0});
  lib.push_back({"equality with upper bound",
                 [] {  // x + y = 10, x <= 6 -> x=6, y=4 -> 24
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", 0, 6);
                   auto y = lp.add_variable("y", 0, kInfinity);
                   lp.add_objective_term(x, 2);
                   lp.add_objective_term(y, 3);
                   lp.add_constraint("sum", {{x, 1}, {y, 1}}, Relation::equal, 10);
                   return lp;
                 },
                 SolveStatus::optimal, 24.0});
  lib.push_back({"free variable pushed to a row",
                 [] {  // min x, x >= -7 -> -7
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", -kInfinity, kInfinity);
                   lp.add_objective_term(x, 1);
                   lp.add_constraint("floor", {{x, 1}}, Relation::greater_equal, -7);
                   return lp;
                 },
                 SolveStatus::optimal, -7.0});
  lib.push_back({"negative lower bounds",
                 [] {  // x in [-3,5], y >= -2, x + y >= -4 -> -4
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", -3, 5);
                   auto y = lp.add_variable("y", -2, kInfinity);
                   lp.add_objective_term(x, 1);
                   lp.add_objective_term(y, 1);
                   lp.add_constraint("c", {{x, 1}, {y, 1}}, Relation::greater_equal, -4);
                   return lp;
                 },
                 SolveStatus::optimal, -4.0});
  lib.push_back({"upper bound only",
                 [] {  // max x, x <= 8 via MI bound -> 8
                   auto lp = make(Sense::maximize);
                   auto x = lp.add_variable("x", -kInfinity, 8);
                   auto y = lp.add_variable("y", 0, 1);
                   lp.add_objective_term(x, 1);
                   lp.add_constraint("link", {{x, 1}, {y, -1}}, Relation::less_equal, 100);
                   return lp;
                 },
                 SolveStatus::optimal, 8.0});
  lib.push_back({"objective constant",
                 [] {  // min x + 100, x >= 1 -> 101
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", 1, kInfinity);
                   lp.add_objective_term(x, 1);
                   lp.set_objective_constant(100);
                   return lp;
                 },
                 SolveStatus::optimal, 101.0});
  lib.push_back({"degenerate cycling example",
                 [] {  // Beale: optimum -5/4 at x4 = 1, x6 = 1
                   auto lp = make(Sense::minimize);
                   auto x4 = lp.add_variable("x4", 0, kInfinity);
                   auto x5 = lp.add_variable("x5", 0, kInfinity);
                   auto x6 = lp.add_variable("x6", 0, kInfinity);
                   auto x7 = lp.add_variable("x7", 0, kInfinity);
                   lp.add_objective_term(x4, -0.75);
                   lp.add_objective_term(x5, 20);
                   lp.add_objective_term(x6, -0.5);
                   lp.add_objective_term(x7, 6);
                   lp.add_constraint("r1", {{x4, 0.25}, {x5, -8}, {x6, -1}, {x7, 9}}, Relation::less_equal, 0);
                   lp.add_constraint("r2", {{x4, 0.5}, {x5, -12}, {x6, -0.5}, {x7, 3}}, Relation::less_equal, 0);
                   lp.add_constraint("r3", {{x6, 1}}, Relation::less_equal, 1);
                   return lp;
                 },
                 SolveStatus::optimal, -1.25});
  lib.push_back({"balanced transportation",
                 [] {  // supply 20/30, demand 10/25/15; row 1 ships 20 to the
                       // column it saves most on (6 $): 120 + 90 + 60 + 195 = 465
                   auto lp = make(Sense::minimize);
                   const double cost[2][3] = {{8, 6, 10}, {9, 12, 13}};
                   const double supply[2] = {20, 30};
                   const double demand[3] = {10, 25, 15};
                   VarId x[2][3];
                   for (int i = 0; i < 2; ++i) {
                     for (int j = 0; j < 3; ++j) {
                       x[i][j] = lp.add_variable("x" + std::to_string(i) + std::to_string(j), 0, kInfinity);
                       lp.add_objective_term(x[i][j], cost[i][j]);
                     }
                   }
                   for (int i = 0; i < 2; ++i) {
                     lp.add_constraint("s" + std::to_string(i), {{x[i][0], 1}, {x[i][1], 1}, {x[i][2], 1}},
                                       Relation::less_equal, supply[i]);
                   }
                   for (int j = 0; j < 3; ++j) {
                     lp.add_constraint("d" + std::to_string(j), {{x[0][j], 1}, {x[1][j], 1}},
                                       Relation::greater_equal, demand[j]);
                   }
                   return lp;
                 },
                 SolveStatus::optimal, 465.0});
  lib.push_back({"fixed variable",
                 [] {  // x fixed at 3, y >= 2x -> min y = 6
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", 3, 3);
                   auto y = lp.add_variable("y", 0, kInfinity);
                   lp.add_objective_term(y, 1);
                   lp.add_constraint("c", {{y, 1}, {x, -2}}, Relation::greater_equal, 0);
                   return lp;
                 },
                 SolveStatus::optimal, 6.0});
  lib.push_back({"empty constraint set",
                 [] {  // min 0
                   auto lp = make(Sense::minimize);
                   lp.add_variable("x", 0, kInfinity);
                   return lp;
                 },
                 SolveStatus::optimal, 0.0});
  lib.push_back({"infeasible",
                 [] {
                   auto lp = make(Sense::minimize);
                   auto x = lp.add_variable("x", 0, 2);
                   lp.add_objective_term(x, 1);
                   lp.add_constraint("c", {{x, 1}}, Relation::greater_equal, 3);
                   return lp;
                 },
                 SolveStatus::infeasible, 0.0});
  lib.push_back({"unbounded",
                 [] {
                   auto lp = make(Sense::maximize);
                   auto x = lp.add_variable("x", 0, kInfinity);
                   auto y = lp.add_variable("y", 0, kInfinity);
                   lp.add_objective_term(x, 1);
                   lp.add_constraint("c", {{x, 1}, {y, -1}}, Relation::less_equal, 1);
                   return lp;
                 },
                 SolveStatus::unbounded, 0.0});
  return lib;
}

// `boxed` replaces infinite bounds by +-50 so most draws have an optimum.
LinearProgram random_lp(std::mt19937_64& rng, bool nice_numbers, bool boxed = false) {
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_int_distribution<int> n_dist(1, 12);
  std::uniform_int_distribution<int> kind(0, 5);
  auto value = [&] { return nice_numbers ? std::round(u(rng) * 4) / 4 : u(rng) * std::pow(10.0, kind(rng) - 2); };

  LinearProgram lp("RAND");
  lp.set_sense(kind(rng) % 2 == 0 ? Sense::minimize : Sense::maximize);
  const int n = n_dist(rng);
  std::vector<VarId> vars;
  for (int j = 0; j < n; ++j) {
    double lo = 0;
    double up = kInfinity;
    switch (kind(rng)) {
      case 0: lo = -kInfinity; break;
      case 1: lo = -kInfinity; up = std::abs(value()) ; break;
      case 2: up = std::abs(value()) + 1; break;
      case 3: lo = -std::abs(value()); up = lo + 3; break;
      case 4: lo = up = value(); break;
      default: lo = std::abs(value()); break;
    }
    if (boxed) {
      if (!std::isfinite(lo)) lo = std::min(-50.0, up);
      if (!std::isfinite(up)) up = std::max(50.0, lo);
    }
    vars.push_back(lp.add_variable("V" + std::to_string(j), lo, up));
    if (kind(rng) < 4) lp.add_objective_term(vars.back(), value());
  }
  if (kind(rng) == 0) lp.set_objective_constant(value());
  const int m = n_dist(rng) - 1;
  for (int i = 0; i < m; ++i) {
    SparseRow row;
    for (int j = 0; j < n; ++j) {
      if (kind(rng) < 2) row.push_back({vars[static_cast<std::size_t>(j)], value()});
    }
    lp.add_constraint("R" + std::to_string(i), row, static_cast<Relation>(kind(rng) % 3), value());
  }
  return lp;
}

}  // namespace

TEST_CASE("hand-solvable LP library: HiGHS simplex, interior point and dense oracle agree with hand optima") {
  const auto lib = hand_library();
  REQUIRE(lib.size() >= 10);
  for (const auto& entry : lib) {
    CAPTURE(entry.label);
    const auto lp = entry.build();
    for (const std::string backend : {"highs", "highs-ipm"}) {
      CAPTURE(backend);
      SolverConfig cfg;
      cfg.backend = backend;
      const auto out = solve(lp, cfg);
      if (entry.status == SolveStatus::unbounded && out.status == SolveStatus::infeasible) {
        FAIL("unbounded LP reported as infeasible");
      }
      // Interior point may only tell that the LP has no finite optimum.
      if (backend == "highs-ipm" && entry.status != SolveStatus::optimal) {
        CHECK(out.status != SolveStatus::optimal);
        continue;
      }
      REQUIRE(out.status == entry.status);
      if (entry.status == SolveStatus::optimal) {
        CHECK(out.objective == doctest::Approx(entry.objective).epsilon(1e-9));
        const auto report = check_solution(lp, out, 1e-6);
        CHECK_MESSAGE(report.passed(), "bound " << report.max_bound_violation << " row "
                                                << report.max_constraint_violation);
      }
    }
    const auto dense = DenseSimplex<double>().solve(lp);
    switch (entry.status) {
      case SolveStatus::optimal:
        REQUIRE(dense.status == DenseStatus::optimal);
        CHECK(dense.objective == doctest::Approx(entry.objective).epsilon(1e-9));
        break;
      case SolveStatus::infeasible: CHECK(dense.status == DenseStatus::infeasible); break;
      case SolveStatus::unbounded: CHECK(dense.status == DenseStatus::unbounded); break;
      default: break;
    }
  }
}

TEST_CASE("dense oracle in extended precision agrees with HiGHS on random LPs") {
  std::mt19937_64 rng(42);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto lp = random_lp(rng, true, true);
    const auto highs = solve(lp);
    const auto dense = DenseSimplex<long double>(1e-12L).solve(lp);
    if (highs.status == SolveStatus::optimal) {
      REQUIRE(dense.status == DenseStatus::optimal);
      CHECK(static_cast<double>(dense.objective) ==
            doctest::Approx(highs.objective).epsilon(1e-7).scale(1.0));
      ++compared;
    } else if (highs.status == SolveStatus::infeasible) {
      CHECK(dense.status == DenseStatus::infeasible);
    }
  }
  CHECK(compared > 40);
}

TEST_CASE("emit/parse round trip on random sparse LPs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const bool nice = trial % 2 == 0;
    const auto lp = random_lp(rng, nice);
    const std::string text = emit_standard_form(lp);
    const auto parsed = parse_standard_form(text);
    // Twelve-character fields keep at least six significant digits.
    CHECK_MESSAGE(structurally_equal(lp, parsed, nice ? 0.0 : 1e-6), text);
    CHECK(emit_standard_form(parsed) == text);
    CHECK(emit_standard_form(lp) == text);  // deterministic
  }
}

TEST_CASE("MPS documents for small cases") {
  SUBCASE("lower bound 1 lands in BOUNDS") {
    LinearProgram lp("ONE");
    auto x = lp.add_variable("x", 1, kInfinity);
    lp.add_objective_term(x, 1);
    const auto text = emit_standard_form(lp);
    CHECK(text.find(" LO BND       x         1") != std::string::npos);
    CHECK(parse_standard_form(text).variable(x).lower == 1.0);
  }
  SUBCASE("empty constraint set") {
    LinearProgram lp("EMPTY");
    lp.add_variable("x", 0, kInfinity);
    const auto text = emit_standard_form(lp);
    CHECK(text.find("ROWS\n N  COST\nCOLUMNS") != std::string::npos);
    CHECK(parse_standard_form(text).num_constraints() == 0);
  }
  SUBCASE("maximization and constant survive") {
    LinearProgram lp("MAXC");
    lp.set_sense(Sense::maximize);
    auto x = lp.add_variable("x", -kInfinity, 4);
    lp.add_objective_term(x, 2);
    lp.set_objective_constant(-3.5);
    const auto back = parse_standard_form(emit_standard_form(lp));
    CHECK(back.objective().sense == Sense::maximize);
    CHECK(back.objective().constant == -3.5);
    CHECK(back.variable(x).lower == -kInfinity);
    CHECK(back.variable(x).upper == 4);
  }
  SUBCASE("long names are rejected with the offending name") {
    LinearProgram lp("LONG");
    lp.add_variable("toolongname", 0, 1);
    try {
      (void)emit_standard_form(lp);
      FAIL("expected an error");
    } catch (const MpsFormatError& e) {
      CHECK(std::string(e.what()).find("toolongname") != std::string::npos);
    }
  }
}

TEST_CASE("MPS parse errors carry line numbers") {
  LinearProgram lp("ERR");
  auto x = lp.add_variable("x", 0, 5);
  lp.add_objective_term(x, 1);
  lp.add_constraint("c1", {{x, 1}}, Relation::greater_equal, 1);
  const std::string text = emit_standard_form(lp);

  SUBCASE("missing ENDATA reported at the final line") {
    const std::string truncated = text.substr(0, text.find("ENDATA"));
    const auto lines = static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), '\n'));
    try {
      (void)parse_standard_form(truncated);
      FAIL("expected an error");
    } catch (const MpsParseError& e) {
      CHECK(e.line() == lines);
      CHECK(std::string(e.what()).find("ENDATA") != std::string::npos);
    }
  }
  SUBCASE("RHS entry for unknown row names the row") {
    std::string bad = text;
    const auto pos = bad.find("    RHS       c1");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 16, "    RHS       zz");
    try {
      (void)parse_standard_form(bad);
      FAIL("expected an error");
    } catch (const MpsParseError& e) {
      CHECK(std::string(e.what()).find("zz") != std::string::npos);
      CHECK(e.line() > 0);
    }
  }
}

TEST_CASE("check_solution residuals") {
  SUBCASE("all-zero primal on x >= 1 reports bound violation 1") {
    LinearProgram lp;
    auto x = lp.add_variable("x", 1, kInfinity);
    lp.add_objective_term(x, 1);
    SolveOutcome out;
    out.status = SolveStatus::optimal;
    out.primal = Eigen::VectorXd::Zero(1);
    out.objective = 0;
    const auto r = check_solution(lp, out, 1e-6);
    CHECK(r.max_bound_violation == doctest::Approx(1.0));
    CHECK(r.worst_variable == x);
    CHECK_FALSE(r.passed());
  }
  SUBCASE("perturbing a variable on an equality row shows coefficient times one") {
    LinearProgram lp;
    auto x = lp.add_variable("x", 0, kInfinity);
    auto y = lp.add_variable("y", 0, kInfinity);
    lp.add_objective_term(x, 1);
    lp.add_objective_term(y, 1);
    const auto row = lp.add_constraint("eq", {{x, 3}, {y, 1}}, Relation::equal, 6);
    auto out = solve(lp);
    REQUIRE(out.optimal());
    CHECK(check_solution(lp, out, 1e-9).passed());
    out.primal[y.index] += 1.0;
    out.objective = lp.evaluate_objective(out.primal);
    const auto r = check_solution(lp, out, 1e-6);
    CHECK(r.max_constraint_violation == doctest::Approx(1.0));
    CHECK(r.worst_constraint == row);
    CHECK(r.row_residual[row.index] == doctest::Approx(1.0));
  }
  SUBCASE("objective mismatch is reported") {
    LinearProgram lp;
    auto x = lp.add_variable("x", 0, 1);
    lp.add_objective_term(x, 1);
    SolveOutcome out;
    out.status = SolveStatus::optimal;
    out.primal = Eigen::VectorXd::Zero(1);
    out.objective = 5;
    CHECK_FALSE(check_solution(lp, out, 1e-6).passed());
  }
}

TEST_CASE("LinearProgram construction rules") {
  LinearProgram lp;
  auto x = lp.add_variable("x", 0, 1);
  CHECK_THROWS_AS(lp.add_variable("x", 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lp.add_constraint("r", {{VarId{5}, 1}}, Relation::equal, 0), std::invalid_argument);
  CHECK_THROWS_AS(lp.add_constraint("r", {{x, std::nan("")}}, Relation::equal, 0), std::invalid_argument);
  const auto r = lp.add_constraint("r", {{x, 1}, {x, 2}}, Relation::equal, 0);
  REQUIRE(lp.constraint(r).row.size() == 1);
  CHECK(lp.constraint(r).row[0].coef == 3.0);
  CHECK_THROWS_AS(lp.add_constraint("r", {{x, 1}}, Relation::equal, 0), std::invalid_argument);
  CHECK(lp.validate().empty());
}

TEST_CASE("objective scaling property on random LPs") {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto lp = random_lp(rng, true, true);
    const auto base = solve(lp);
    if (!base.optimal()) continue;
    LinearProgram scaled = lp;
    for (const auto& t : lp.objective().coefficients) scaled.add_objective_term(t.var, 2.5 * t.coef);
    scaled.set_objective_constant(3.5 * lp.objective().constant);
    const auto s = solve(scaled);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3.5 * base.objective).epsilon(1e-7).scale(1.0));
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("unknown backend is reported as unavailable") {
  LinearProgram lp;
  lp.add_variable("x", 0, 1);
  SolverConfig cfg;
  cfg.backend = "nope";
  CHECK_THROWS_AS(solve(lp, cfg), SolverUnavailable);
  const auto names = available_backends();
  CHECK(std::find(names.begin(), names.end(), "highs") != names.end());
}
