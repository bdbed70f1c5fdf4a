#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ldes/domain.hpp"
#include "random_instance.hpp"
#include "toy_instances.hpp"

using namespace ldes;

namespace {

bool has_violation(const ValidationReport& r, const std::string& asset, const std::string& field) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.asset_id == asset && v.field == field; });
}

}  // namespace

TEST_CASE("toy instances validate") {
  CHECK(validate_instance(testing::toy_a()).ok());
  CHECK(validate_instance(testing::toy_b()).ok());
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CAPTURE(seed);
    CHECK(validate_instance(testing::random_instance(seed)).ok());
  }
}

TEST_CASE("rte outside (0,1] names the asset and field") {
  auto s = testing::toy_b();
  s.storages[0].rte = 1.2;
  const auto r = validate_instance(s);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, "ldes_cand", "rte"));
  CHECK(r.summary().find("rte out of (0,1]") != std::string::npos);
  s.storages[0].rte = 0.0;
  CHECK(has_violation(validate_instance(s), "ldes_cand", "rte"));
  CHECK_THROWS_AS(require_valid(s), std::invalid_argument);
}

TEST_CASE("series length must match the horizon") {
  auto s = testing::toy_a();
  s.generators[0].availability = constant_series(2, 1.0);
  s.reserve_req_mw = constant_series(4, 0.0);
  const auto r = validate_instance(s);
  CHECK(has_violation(r, "gas", "availability"));
  CHECK(has_violation(r, "", "reserve_req_mw"));
}

TEST_CASE("numeric field checks") {
  auto s = testing::toy_b();
  s.generators[0].capacity_mw = -1;
  s.generators[1].availability[0] = 1.5;
  s.generators[0].ramp_up_factor = std::nan("");
  s.imbalance_cost = std::numeric_limits<double>::infinity();
  s.storages[0].duration_h = 0;
  s.storages[0].soc_min_mwh = 5;
  const auto r = validate_instance(s);
  CHECK(has_violation(r, "gas", "capacity_mw"));
  CHECK(has_violation(r, "solar_cand", "availability"));
  CHECK(has_violation(r, "gas", "ramp_up_factor"));
  CHECK(has_violation(r, "", "imbalance_cost"));
  CHECK(has_violation(r, "ldes_cand", "duration_h"));
  CHECK(has_violation(r, "ldes_cand", "soc_min_mwh"));
}

TEST_CASE("duplicate ids across generators and storages") {
  auto s = testing::toy_b();
  s.storages[0].id = "gas";
  CHECK(has_violation(validate_instance(s), "gas", "id"));
}

TEST_CASE("gas units must be firm fixed") {
  auto s = testing::toy_b();
  s.generators[1].is_gas = true;
  CHECK(has_violation(validate_instance(s), "solar_cand", "is_gas"));
}

TEST_CASE("retirement window ordering") {
  auto s = testing::toy_a();
  s.generators[0].retire_min_frac = 0.6;
  s.generators[0].retire_max_frac = 0.4;
  CHECK(has_violation(validate_instance(s), "gas", "retire_min_frac"));
}

TEST_CASE("index sets partition the assets") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto s = testing::random_instance(seed);
    const auto sets = classify_assets(s);
    const auto n = s.generators.size();
    CHECK(sets.gen_candidate.size() + sets.gen_fixed.size() == n);
    CHECK(sets.gen_firm_fixed.size() + sets.gen_renew_fixed.size() == sets.gen_fixed.size());
    CHECK(sets.gen_firm_candidate.size() + sets.gen_renew_candidate.size() == sets.gen_candidate.size());
    CHECK(sets.storage_fixed.size() + sets.storage_candidate.size() == s.storages.size());
    CHECK(sets.storage_short_fixed.size() + sets.storage_long_fixed.size() == sets.storage_fixed.size());
    CHECK(sets.storage_short_candidate.size() + sets.storage_long_candidate.size() ==
          sets.storage_candidate.size());
    for (auto i : sets.gen_gas_fixed) {
      CHECK(std::find(sets.gen_firm_fixed.begin(), sets.gen_firm_fixed.end(), i) != sets.gen_firm_fixed.end());
    }
    CHECK(classify_assets(s) == sets);
  }
}

TEST_CASE("enum text round trips") {
  for (auto k : {GeneratorKind::firm, GeneratorKind::renewable}) CHECK(parse_generator_kind(to_string(k)) == k);
  for (auto k : {AssetStatus::fixed, AssetStatus::candidate}) CHECK(parse_asset_status(to_string(k)) == k);
  for (auto k : {DurationClass::short_duration, DurationClass::long_duration}) {
    CHECK(parse_duration_class(to_string(k)) == k);
  }
  CHECK_FALSE(parse_generator_kind("nuclear").has_value());
}
