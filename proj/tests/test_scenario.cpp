#include <doctest.h>

#include "ldes/scenario.hpp"
#include "random_instance.hpp"
#include "toy_instances.hpp"

using namespace ldes;
using namespace ldes::scenario;

namespace {

// TOY-B boundary cost as a function of LDES power P, worked out by hand.
// Below 10 MW the store cannot cover hour 3 and the remainder is unserved
// at 1000 $/MWh; solar is sized for demand plus the recharge of P MWh over
// two hours. Above 10 MW the store only needs to move 10 MWh.
double toy_b_boundary_cost(double p) {
  if (p < 10.0) return (150.0 - 2.0 * (10.0 + p / 2.0) - 1000.0 * (10.0 - p)) / p;
  return (150.0 - 2.0 * 15.0) / p;
}

const InvestmentItem* find_item(const BoundaryCurvePoint& p, const std::string& id) {
  for (const auto& item : p.investment_plan) {
    if (item.asset_id == id) return &item;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("baseline breakdown sums to the optimum") {
  const auto r = run_baseline(testing::toy_a());
  CHECK(r.q_star == doctest::Approx(154.5));
  CHECK(r.breakdown.total() == doctest::Approx(154.5));
  CHECK(r.breakdown.value("generation", "gas_cc") == doctest::Approx(150.0));
  CHECK(r.breakdown.value("reserve", "gas_cc") == doctest::Approx(4.5));
  CHECK(r.breakdown.category_total("imbalance") == doctest::Approx(0.0));
  REQUIRE(r.solution);
  CHECK(r.solution->outcome.optimal());

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = testing::random_instance(seed);
    const auto b = run_baseline(s);
    CHECK(b.breakdown.total() == doctest::Approx(b.q_star).epsilon(1e-9));
    CHECK(b.breakdown.category_total("ldes_opportunity_value") == 0.0);
  }
}

TEST_CASE("TOY-B opportunity point") {
  const auto s = testing::toy_b();
  const auto base = run_baseline(s);
  REQUIRE(base.q_star == doctest::Approx(150.0));
  const auto p = run_opportunity(s, base.q_star, 10.0);
  REQUIRE(p.status == PointStatus::solved);
  CHECK(p.boundary_cost_per_mw == doctest::Approx(12.0));
  CHECK(p.boundary_cost_per_kw() == doctest::Approx(0.012));
  CHECK(p.ldes_power_gw() == doctest::Approx(0.01));
  CHECK(p.viable);
  CHECK(p.budget_overrun == doctest::Approx(0.0));
  CHECK(p.budget_lhs == doctest::Approx(150.0));
  CHECK(p.net_cost_reduction == doctest::Approx(120.0));
  CHECK(p.breakdown.value("investment_generators", "solar") == doctest::Approx(30.0));
  CHECK(p.breakdown.category_total("ldes_opportunity_value") == doctest::Approx(120.0));
  CHECK(p.breakdown.value("generation", "gas_cc") == doctest::Approx(0.0));

  const auto* solar = find_item(p, "solar_cand");
  const auto* ldes = find_item(p, "ldes_cand");
  REQUIRE(solar);
  REQUIRE(ldes);
  CHECK(solar->asset_class == "generator");
  CHECK(solar->power_mw == doctest::Approx(15.0));
  CHECK(ldes->asset_class == "ldes");
  CHECK(ldes->power_mw == doctest::Approx(10.0));
  CHECK(ldes->energy_mwh == doctest::Approx(20.0));

  REQUIRE(p.storage_soc.size() == 1);
  CHECK(p.storage_soc[0].long_duration);
  // Cyclic: what hour 3 discharges must have been stored in hours 1-2.
  CHECK(p.storage_soc[0].soc_mwh[1] - p.storage_soc[0].soc_mwh[2] == doctest::Approx(10.0));
  CHECK(p.solution == nullptr);
}

TEST_CASE("a negative boundary cost is not viable") {
  auto s = testing::toy_b();
  s.generators[1].invest_cost_per_mw_yr = 16.0;
  const auto p = run_opportunity(s, 150.0, 10.0);
  CHECK(p.boundary_cost_per_mw == doctest::Approx(-9.0));
  CHECK_FALSE(p.viable);
}

TEST_CASE("sweep follows the hand-derived curve and keeps input order") {
  const auto s = testing::toy_b();
  const std::vector<double> caps{2.0, 5.0, 9.5, 10.0, 10.0, 20.0, 40.0};
  EngineOptions opts;
  opts.workers = 3;
  const auto points = sweep_boundary_curve(s, caps, opts);
  REQUIRE(points.size() == caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    CAPTURE(caps[i]);
    CHECK(points[i].ldes_power_mw == caps[i]);
    REQUIRE(points[i].status == PointStatus::solved);
    CHECK(points[i].boundary_cost_per_mw == doctest::Approx(toy_b_boundary_cost(caps[i])).epsilon(1e-9));
    CHECK(points[i].viable == (toy_b_boundary_cost(caps[i]) > 0));
  }
  CHECK(minimum_viable_capacity(points) == 10.0);
}

TEST_CASE("bisection brackets the viability threshold") {
  const auto s = testing::toy_b();
  const auto points = sweep_boundary_curve(s, 150.0, {5.0, 20.0});
  const auto refined = refine_minimum_viable_capacity(s, 150.0, points, 0.01);
  REQUIRE(refined.has_value());
  // toy_b_boundary_cost crosses zero at 9870 / 999.
  const double threshold = 9870.0 / 999.0;
  CHECK(*refined >= threshold);
  CHECK(*refined <= threshold + 0.01);
  CHECK_FALSE(refine_minimum_viable_capacity(s, 150.0, sweep_boundary_curve(s, 150.0, {2.0, 5.0}), 0.01));
  CHECK_THROWS_AS(refine_minimum_viable_capacity(s, 150.0, points, 0.0), std::invalid_argument);
}

TEST_CASE("capacity lists are validated") {
  const auto s = testing::toy_b();
  CHECK_THROWS_AS(sweep_boundary_curve(s, 150.0, {10.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_boundary_curve(s, 150.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_boundary_curve(s, 150.0, {-1.0}), std::invalid_argument);
  CHECK_NOTHROW(sweep_boundary_curve(s, 150.0, {10.0, 10.0}));
  CHECK(sweep_boundary_curve(s, 150.0, {}).empty());
}

TEST_CASE("a failing point is recorded without aborting the sweep") {
  const auto s = testing::toy_b();
  EngineOptions opts;
  opts.overrun_penalty = 0.05;  // too small below 20 MW
  opts.workers = 2;
  const auto points = sweep_boundary_curve(s, 150.0, {10.0, 40.0}, opts);
  CHECK(points[0].status == PointStatus::failed);
  CHECK(points[0].diagnostics.find("overrun penalty") != std::string::npos);
  CHECK(points[1].status == PointStatus::solved);
}

TEST_CASE("no LDES candidate fails every point") {
  auto s = testing::toy_b();
  s.storages.clear();
  const auto points = sweep_boundary_curve(s, 150.0, {10.0, 20.0});
  for (const auto& p : points) {
    CHECK(p.status == PointStatus::failed);
    CHECK(p.diagnostics.find("unbounded boundary cost") != std::string::npos);
  }
  CHECK_THROWS_AS(run_opportunity(s, 150.0, 10.0), capacity::UnboundedBoundaryCost);
}

TEST_CASE("parallel sweep matches the sequential sweep exactly") {
  const std::vector<double> caps{1, 2, 4, 8, 16, 32, 64};
  for (std::uint64_t seed : {3u, 11u, 17u}) {
    const auto s = testing::random_instance(seed);
    EngineOptions one;
    EngineOptions four;
    four.workers = 4;
    const auto a = sweep_boundary_curve(s, caps, one);
    const auto b = sweep_boundary_curve(s, caps, four);
    for (std::size_t i = 0; i < caps.size(); ++i) {
      CHECK(a[i].status == b[i].status);
      CHECK(a[i].boundary_cost_per_mw == b[i].boundary_cost_per_mw);
      CHECK(a[i].budget_lhs == b[i].budget_lhs);
    }
  }
}

TEST_CASE("net cost reduction equals the opportunity value when the budget holds") {
  int viable = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    const auto s = testing::random_instance(seed);
    const auto base = run_baseline(s);
    const auto p = run_opportunity(s, base.q_star, 10.0);
    REQUIRE(p.status == PointStatus::solved);
    CHECK(p.budget_overrun == doctest::Approx(0.0));
    CHECK(p.net_cost_reduction ==
          doctest::Approx(p.boundary_cost_per_mw * p.ldes_power_mw).epsilon(1e-7).scale(base.q_star));
    CHECK(p.budget_lhs == doctest::Approx(base.q_star).epsilon(1e-8));
    if (p.viable) ++viable;
    for (const auto& item : p.investment_plan) {
      if (item.asset_class == "ldes") CHECK(item.power_mw == doctest::Approx(10.0));
    }
  }
  MESSAGE(viable << " of 30 random instances viable at 10 MW");
}

TEST_CASE("LDES quantity is split evenly across long-duration candidates") {
  auto s = testing::toy_b();
  auto second = s.storages[0];
  second.id = "ldes_b";
  s.storages.push_back(second);
  const auto o = opportunity_overrides(s, 10.0);
  CHECK(o.ldes_fixed_power_mw.at("ldes_cand") == 5.0);
  CHECK(o.ldes_fixed_power_mw.at("ldes_b") == 5.0);
  CHECK(o.retirement.at("gas").min_frac == 1.0);
  const auto p = run_opportunity(s, 150.0, 10.0);
  CHECK(p.boundary_cost_per_mw == doctest::Approx(12.0));
}

TEST_CASE("keep_dispatch retains the solved model") {
  EngineOptions opts;
  opts.keep_dispatch = true;
  const auto p = run_opportunity(testing::toy_b(), 150.0, 10.0, opts);
  REQUIRE(p.solution);
  CHECK(p.solution->model.kind == capacity::ModelKind::opportunity);
  CHECK(lp::check_solution(p.solution->model.lp, p.solution->outcome, 1e-7).passed());
}
