#include <doctest.h>

#include <set>

#include "dense_simplex.hpp"
#include "ldes/capacity_model.hpp"
#include "ldes/scenario.hpp"
#include "random_instance.hpp"
#include "toy_instances.hpp"

using namespace ldes;
using namespace ldes::capacity;

namespace {

PolicyOverrides toy_b_opportunity(double power_mw) {
  PolicyOverrides o;
  o.retirement["gas"] = {1.0, 1.0};
  o.ldes_fixed_power_mw["ldes_cand"] = power_mw;
  return o;
}

double value(const lp::SolveOutcome& out, VarId v) { return out.primal[v.index]; }

// All-lower-bound point with the slacks absorbing demand and reserve.
Eigen::VectorXd trivial_point(const ModelArtifacts& m, const SystemInstance& s) {
  const auto& lp = m.lp;
  Eigen::VectorXd x(lp.num_variables());
  for (Eigen::Index j = 0; j < lp.num_variables(); ++j) {
    const double lo = lp.variables()[static_cast<std::size_t>(j)].lower;
    x[j] = std::isfinite(lo) ? lo : 0.0;
  }
  for (const auto g : m.sets.gen_firm_fixed) {
    x[m.catalog.p_rem[g].index] = s.generators[g].capacity_mw - lp.variable(m.catalog.x_ret_gen[g]).lower;
  }
  for (int t = 0; t < m.hours; ++t) {
    x[m.catalog.delta_neg[static_cast<std::size_t>(t)].index] = s.demand_mw[t];
    x[m.catalog.delta_res_short[static_cast<std::size_t>(t)].index] = s.reserve_req_mw[t];
  }
  return x;
}

}  // namespace

TEST_CASE("TOY-A baseline: size and optimum") {
  const auto s = testing::toy_a();
  const auto m = build_baseline_model(s, scenario::baseline_overrides(s));
  // p, r_up, three slacks per hour, remaining capacity and retirement.
  CHECK(m.lp.num_variables() == 3 * 5 + 2);
  // balance, reserve, output, reserve cap per hour, two ramp pairs, remaining capacity.
  CHECK(m.lp.num_constraints() == 3 * 4 + 4 + 1);
  const auto out = lp::solve(m.lp);
  REQUIRE(out.optimal());
  // 10 MW x 5 $/MWh x 3 h of energy plus 1.5 MW x 1 $/MW x 3 h of reserve.
  CHECK(out.objective == doctest::Approx(154.5).epsilon(1e-9));
  for (int t = 0; t < 3; ++t) {
    CHECK(value(out, m.catalog.p(0, t)) == doctest::Approx(10.0));
    CHECK(value(out, m.catalog.r_up(0, t)) == doctest::Approx(1.5));
  }
  CHECK(lp::check_solution(m.lp, out, 1e-7).passed());
}

TEST_CASE("TOY-A with an unattainable reserve requirement pays the shortage") {
  auto s = testing::toy_a();
  s.reserve_req_mw = constant_series(3, 11.0);
  const auto m = build_baseline_model(s, scenario::baseline_overrides(s));
  const auto out = lp::solve(m.lp);
  REQUIRE(out.optimal());
  // Reserve is capped at half of 20 MW: 1 MW short every hour.
  CHECK(out.objective == doctest::Approx(150.0 + 30.0 + 3 * 500.0));
  for (int t = 0; t < 3; ++t) CHECK(value(out, m.catalog.delta_res_short[t]) == doctest::Approx(1.0));
}

TEST_CASE("TOY-B opportunity values") {
  const auto s = testing::toy_b();
  const auto base = build_baseline_model(s, scenario::baseline_overrides(s));
  const auto bout = lp::solve(base.lp);
  REQUIRE(bout.optimal());
  CHECK(bout.objective == doctest::Approx(150.0));

  // Solar has to cover hours 1-2 and recharge the store for hour 3:
  // build = demand + stored energy / 2 charging hours.
  auto oracle = [](double q_star, double solar_cost, bool sunny_hour3) {
    const double build = sunny_hour3 ? 10.0 : 10.0 + 10.0 / 2.0;
    return (q_star - solar_cost * build) / 10.0;
  };

  struct Case {
    const char* label;
    double q_star;
    double solar_cost;
    bool sunny;
    double expected;
  };
  for (const Case c : {Case{"base", 150, 2, false, 12}, Case{"costly solar", 150, 16, false, -9},
                       Case{"sunny third hour", 150, 2, true, 13}, Case{"tight budget", 20, 2, false, -1}}) {
    CAPTURE(std::string(c.label));
    auto inst = s;
    inst.generators[1].invest_cost_per_mw_yr = c.solar_cost;
    if (c.sunny) inst.generators[1].availability = constant_series(3, 1.0);
    const auto m = build_opportunity_model(inst, toy_b_opportunity(10.0), c.q_star);
    const auto out = lp::solve(m.lp);
    REQUIRE(out.optimal());
    CHECK(oracle(c.q_star, c.solar_cost, c.sunny) == doctest::Approx(c.expected));
    CHECK(value(out, *m.catalog.c_bc) == doctest::Approx(c.expected).epsilon(1e-9));
    CHECK(value(out, *m.catalog.q_over) == doctest::Approx(0.0));
    CHECK(value(out, m.catalog.x_st_power[0]) == doctest::Approx(10.0));
    CHECK(value(out, m.catalog.x_st_energy[0]) == doctest::Approx(20.0));

    const auto dense = testing::DenseSimplex<long double>(1e-12L).solve(m.lp);
    REQUIRE(dense.status == testing::DenseStatus::optimal);
    CHECK(static_cast<double>(dense.x[m.catalog.c_bc->index]) == doctest::Approx(c.expected).epsilon(1e-9));
  }
}

TEST_CASE("opportunity model guards") {
  const auto s = testing::toy_b();
  CHECK_THROWS_AS(build_opportunity_model(s, toy_b_opportunity(0.0), 150), UnboundedBoundaryCost);
  auto o = toy_b_opportunity(10.0);
  o.overrun_penalty = 0.05;  // 0.05 x 10 MW <= 1
  CHECK_THROWS_AS(build_opportunity_model(s, o, 150), std::invalid_argument);
  o.overrun_penalty = 0.2;
  CHECK_NOTHROW(build_opportunity_model(s, o, 150));
  CHECK_THROWS_AS(build_opportunity_model(s, toy_b_opportunity(10.0), std::nan("")), std::invalid_argument);

  PolicyOverrides bad;
  bad.ldes_fixed_power_mw["gas"] = 5;
  CHECK_THROWS_AS(build_opportunity_model(s, bad, 150), std::invalid_argument);
  PolicyOverrides bad_window;
  bad_window.retirement["gas"] = {0.8, 0.2};
  CHECK_THROWS_AS(build_baseline_model(s, bad_window), std::invalid_argument);
}

TEST_CASE("default overrun penalty follows the largest cost coefficient") {
  const auto s = testing::toy_b();
  const auto m = build_opportunity_model(s, toy_b_opportunity(10.0), 150);
  CHECK(m.overrun_penalty == doctest::Approx(kDefaultOverrunPenaltyFactor * 1000.0));
  CHECK(m.ldes_power_mw == 10.0);
  REQUIRE(m.budget_row.has_value());
  CHECK(m.registry.at(*m.budget_row).tag == ConstraintTag::cost_budget);
}

TEST_CASE("structural invariants on random instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CAPTURE(seed);
    const auto s = testing::random_instance(seed);
    const auto base = build_baseline_model(s, scenario::baseline_overrides(s));
    const auto opp = build_opportunity_model(s, scenario::opportunity_overrides(s, 5.0), 1e5);
    for (const auto* m : {&base, &opp}) {
      CHECK(m->registry.covers(m->lp));
      CHECK(m->catalog.columns.size() == static_cast<std::size_t>(m->lp.num_variables()));
      CHECK(m->lp.validate().empty());
      std::set<std::string> names;
      for (const auto& v : m->lp.variables()) {
        CHECK(v.name.size() <= lp::kMpsNameLimit);
        names.insert(v.name);
      }
      for (const auto& c : m->lp.constraints()) {
        CHECK(c.name.size() <= lp::kMpsNameLimit);
        names.insert(c.name);
      }
      CHECK(names.size() == static_cast<std::size_t>(m->lp.num_variables() + m->lp.num_constraints()));
      CHECK_NOTHROW((void)lp::emit_standard_form(m->lp));
    }
    CHECK(opp.lp.num_variables() == base.lp.num_variables() + 2);
    CHECK(opp.lp.num_constraints() == base.lp.num_constraints() + 1);
  }
}

TEST_CASE("all-lower-bound point is feasible for the baseline model") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    const auto s = testing::random_instance(seed);
    const auto m = build_baseline_model(s, scenario::baseline_overrides(s));
    lp::SolveOutcome point;
    point.status = lp::SolveStatus::optimal;
    point.primal = trivial_point(m, s);
    point.objective = m.lp.evaluate_objective(point.primal);
    const auto r = lp::check_solution(m.lp, point, 1e-9);
    CHECK_MESSAGE(r.passed(), "bound " << r.max_bound_violation << " row " << r.max_constraint_violation);
  }
}

TEST_CASE("baseline optimum is feasible, agrees with the oracle and scales with costs") {
  testing::RandomInstanceLimits small;
  small.max_hours = 6;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const auto s = testing::random_instance(seed, small);
    const auto m = build_baseline_model(s, scenario::baseline_overrides(s));
    const auto out = lp::solve(m.lp);
    REQUIRE(out.optimal());
    CHECK(lp::check_solution(m.lp, out, 1e-6).passed());
    const auto cost = system_cost_expression(m, s);
    CHECK(cost.evaluate(out.primal) == doctest::Approx(out.objective).epsilon(1e-9));

    const auto dense = testing::DenseSimplex<long double>(1e-12L).solve(m.lp);
    REQUIRE(dense.status == testing::DenseStatus::optimal);
    CHECK(static_cast<double>(dense.objective) == doctest::Approx(out.objective).epsilon(1e-7));

    for (const double alpha : {0.5, 3.0}) {
      const auto scaled = testing::scale_costs(s, alpha);
      const auto sm = build_baseline_model(scaled, scenario::baseline_overrides(scaled));
      const auto so = lp::solve(sm.lp);
      REQUIRE(so.optimal());
      CHECK(so.objective == doctest::Approx(alpha * out.objective).epsilon(1e-7));
    }
  }
}

TEST_CASE("opportunity budget row is tight and moves one for one with q*") {
  testing::RandomInstanceLimits small;
  small.max_hours = 8;
  int viable = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const auto s = testing::random_instance(seed, small);
    const auto bm = build_baseline_model(s, scenario::baseline_overrides(s));
    const auto bo = lp::solve(bm.lp);
    REQUIRE(bo.optimal());
    const double power = 10.0;
    const auto overrides = scenario::opportunity_overrides(s, power);
    const auto m1 = build_opportunity_model(s, overrides, bo.objective);
    const auto o1 = lp::solve(m1.lp);
    REQUIRE(o1.optimal());
    const double c1 = value(o1, *m1.catalog.c_bc);
    if (c1 > 0) ++viable;
    CHECK(value(o1, *m1.catalog.q_over) == doctest::Approx(0.0).epsilon(1e-9));
    const auto cost = system_cost_expression(m1, s);
    CHECK(power * c1 + cost.evaluate(o1.primal) == doctest::Approx(bo.objective).epsilon(1e-8));

    const double shift = 0.25 * std::abs(bo.objective) + 10;
    const auto m2 = build_opportunity_model(s, overrides, bo.objective + shift);
    const auto o2 = lp::solve(m2.lp);
    REQUIRE(o2.optimal());
    CHECK(value(o2, *m2.catalog.c_bc) - c1 == doctest::Approx(shift / power).epsilon(1e-7));
  }
  MESSAGE(viable << " of 25 random instances viable at 10 MW");
}

TEST_CASE("simultaneous charge detection reads the primal") {
  const auto s = testing::toy_b();
  const auto m = build_opportunity_model(s, toy_b_opportunity(10.0), 150);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m.lp.num_variables());
  x[m.catalog.p_ch(0, 1).index] = 2.0;
  x[m.catalog.p_dis(0, 1).index] = 1.0;
  x[m.catalog.p_dis(0, 2).index] = 3.0;
  const auto flows = find_simultaneous_charge(m, s, x, 1e-9);
  REQUIRE(flows.size() == 1);
  CHECK(flows[0].storage_id == "ldes_cand");
  CHECK(flows[0].hour == 2);
}

TEST_CASE("constraint tags round trip") {
  for (int i = 0; i <= static_cast<int>(ConstraintTag::cost_budget); ++i) {
    const auto tag = static_cast<ConstraintTag>(i);
    CHECK(parse_constraint_tag(to_string(tag)) == tag);
  }
}
