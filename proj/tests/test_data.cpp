#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>

#include <unistd.h>

#include "ldes/data_pipeline.hpp"
#include "random_instance.hpp"
#include "toy_instances.hpp"

using namespace ldes;
using namespace ldes::data;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = fs::path(LDES_SOURCE_DIR) / "data";

class TempDir {
 public:
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ldes_data_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  fs::path path_;
};

// A copy of a shipped dataset that individual tests then corrupt.
void copy_into(const TempDir& dir, const std::string& dataset) {
  for (const auto& entry : fs::directory_iterator(kDataDir / dataset)) {
    fs::copy_file(entry.path(), dir.path() / entry.path().filename());
  }
}

double weighted_sse(const std::vector<double>& v, const std::vector<double>& w, const std::vector<int>& label) {
  std::map<int, std::pair<double, double>> acc;  // label -> (sum w, sum w v)
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc[label[i]].first += w[i];
    acc[label[i]].second += w[i] * v[i];
  }
  double sse = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& [sw, swv] = acc[label[i]];
    const double mean = swv / sw;
    sse += w[i] * (v[i] - mean) * (v[i] - mean);
  }
  return sse;
}

// Exhaustive search over every labelling with at most k labels.
double brute_force_sse(const std::vector<double>& v, const std::vector<double>& w, int k) {
  const std::size_t n = v.size();
  std::vector<int> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    best = std::min(best, weighted_sse(v, w, label));
    std::size_t i = 0;
    while (i < n && label[i] == k - 1) label[i++] = 0;
    if (i == n) break;
    ++label[i];
  }
  return best;
}

GeneratorSpec fixed_unit(const std::string& id, const std::string& tech, double cap, double cost) {
  GeneratorSpec g;
  g.id = id;
  g.technology = tech;
  g.capacity_mw = cap;
  g.gen_cost_per_mwh = constant_series(4, cost);
  g.reserve_cost_per_mw = constant_series(4, 1.0);
  g.availability = constant_series(4, 1.0);
  g.reserve_factor = 0.2;
  return g;
}

}  // namespace

TEST_CASE("CSV parsing") {
  const auto t = parse_csv("# comment\na, b ,c\n\n1,\"x, y\",\"say \"\"hi\"\"\"\n2,\"multi\nline\",3\n", "t.csv");
  REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "x, y");
  CHECK(t.rows[0][2] == "say \"hi\"");
  CHECK(t.rows[1][1] == "multi\nline");
  CHECK(t.lines == std::vector<std::size_t>{4, 5});
  CHECK(t.column("c") == 2);
  CHECK_FALSE(t.find_column("d").has_value());
  CHECK_THROWS_AS((void)t.column("d"), InputError);

  try {
    (void)parse_csv("a,b\n1,2\n3\n", "bad.csv");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.file() == "bad.csv");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).rfind("bad.csv:3:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_csv("a\n\"open\n", "q.csv"), InputError);
  CHECK_THROWS_AS(parse_csv("", "e.csv"), InputError);
}

TEST_CASE("shipped toy tables assemble into the reference instances") {
  AssemblyOptions opts;
  opts.cluster = false;
  opts.mirror_renewables = false;
  opts.reserve_fraction = 0.15;
  const auto a = assemble_instance(load_system(InputFiles::in_directory(kDataDir / "toy_a")), opts);
  CHECK(snapshot_json(a) == snapshot_json(testing::toy_a()));

  opts.reserve_fraction = 0.0;
  const auto b = assemble_instance(load_system(InputFiles::in_directory(kDataDir / "toy_b")), opts);
  CHECK(snapshot_json(b) == snapshot_json(testing::toy_b()));
}

TEST_CASE("input errors name file and line") {
  SUBCASE("availability factor out of range") {
    TempDir dir;
    copy_into(dir, "toy_b");
    dir.write("availability.csv", "asset_id,hour,factor\nsolar,1,1\nsolar,2,1.5\nsolar,3,0\n");
    try {
      (void)load_system(InputFiles::in_directory(dir.path()));
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.line() == 3);
      CHECK(e.file().find("availability.csv") != std::string::npos);
    }
  }
  SUBCASE("non-numeric capacity") {
    TempDir dir;
    copy_into(dir, "toy_a");
    dir.write("generators.csv", "id,technology,kind,status,capacity_mw,gen_cost_per_mwh\ngas,gas_cc,firm,fixed,lots,5\n");
    try {
      (void)load_system(InputFiles::in_directory(dir.path()));
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("capacity_mw") != std::string::npos);
    }
  }
  SUBCASE("gap in the demand hours") {
    TempDir dir;
    copy_into(dir, "toy_a");
    dir.write("demand.csv", "hour,mw\n1,10\n3,10\n");
    CHECK_THROWS_AS(load_system(InputFiles::in_directory(dir.path())), InputError);
  }
  SUBCASE("series length differs from demand") {
    TempDir dir;
    copy_into(dir, "toy_b");
    dir.write("availability.csv", "asset_id,hour,factor\nsolar,1,1\nsolar,2,1\n");
    CHECK_THROWS_AS(load_system(InputFiles::in_directory(dir.path())), InputError);
  }
  SUBCASE("unknown availability series") {
    TempDir dir;
    copy_into(dir, "toy_b");
    dir.write("availability.csv", "asset_id,hour,factor\nwind,1,1\nwind,2,1\nwind,3,0\n");
    try {
      (void)load_system(InputFiles::in_directory(dir.path()));
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("solar") != std::string::npos);
    }
  }
  SUBCASE("duplicate generator id") {
    TempDir dir;
    copy_into(dir, "toy_a");
    dir.write("generators.csv",
              "id,technology,kind,status,capacity_mw,gen_cost_per_mwh\ngas,gas_cc,firm,fixed,20,5\ngas,gas_cc,firm,fixed,20,5\n");
    try {
      (void)load_system(InputFiles::in_directory(dir.path()));
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("storage round trip efficiency") {
    TempDir dir;
    copy_into(dir, "toy_b");
    dir.write("storages.csv", "id,technology,duration_class,status,power_mw,duration_h,rte\nl,ldes,long,candidate,0,2,1.3\n");
    try {
      (void)load_system(InputFiles::in_directory(dir.path()));
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("rte") != std::string::npos);
    }
  }
  SUBCASE("missing cost parameter") {
    TempDir dir;
    copy_into(dir, "toy_a");
    dir.write("costs.csv", "parameter,value\nimbalance_cost,1000\n");
    CHECK_THROWS_AS(load_system(InputFiles::in_directory(dir.path())), InputError);
  }
  SUBCASE("missing file") {
    TempDir dir;
    copy_into(dir, "toy_a");
    fs::remove(dir.path() / "demand.csv");
    CHECK_THROWS_AS(load_system(InputFiles::in_directory(dir.path())), InputError);
  }
}

TEST_CASE("hourly cost overrides") {
  TempDir dir;
    copy_into(dir, "toy_a");
  dir.write("hourly_costs.csv",
            "asset_id,hour,gen_cost_per_mwh,reserve_cost_per_mw\ngas,1,5,1\ngas,2,7,1\ngas,3,9,2\n");
  AssemblyOptions opts;
  opts.cluster = false;
  opts.mirror_renewables = false;
  const auto s = assemble_instance(load_system(InputFiles::in_directory(dir.path())), opts);
  CHECK(s.generators[0].gen_cost_per_mwh[1] == 7.0);
  CHECK(s.generators[0].reserve_cost_per_mw[2] == 2.0);
}

TEST_CASE("weighted 1-D k-means is optimal against exhaustive search") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n_dist(1, 7);
  std::uniform_int_distribution<int> k_dist(1, 3);
  std::uniform_real_distribution<double> val(0, 100);
  std::uniform_real_distribution<double> wt(0.1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_dist(rng);
    const int k = k_dist(rng);
    std::vector<double> v, w;
    for (int i = 0; i < n; ++i) {
      // Some repeated values to exercise ties.
      v.push_back(trial % 3 == 0 ? std::round(val(rng) / 25) : val(rng));
      w.push_back(wt(rng));
    }
    const auto labels = kmeans_1d(v, w, k);
    REQUIRE(labels.size() == v.size());
    CHECK(weighted_sse(v, w, labels) == doctest::Approx(brute_force_sse(v, w, k)).epsilon(1e-9).scale(1.0));
    // Labels are numbered by ascending centroid, so they follow value order.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (v[i] < v[j]) CHECK(labels[i] <= labels[j]);
        if (v[i] == v[j]) CHECK(labels[i] == labels[j]);
      }
    }
  }
  CHECK(kmeans_1d({}, {}, 3).empty());
  CHECK_THROWS_AS(kmeans_1d({1.0}, {1.0}, 0), std::invalid_argument);
}

TEST_CASE("generator clustering conserves capacity within groups") {
  std::vector<GeneratorSpec> gens{
      fixed_unit("a", "coal", 100, 20), fixed_unit("b", "coal", 50, 22), fixed_unit("c", "coal", 80, 60),
      fixed_unit("d", "coal", 10, 61), fixed_unit("e", "hydro", 40, 3)};
  auto cand = fixed_unit("f", "coal", 0, 21);
  cand.status = AssetStatus::candidate;
  cand.invest_limit_mw = 30;
  gens.push_back(cand);

  const auto out = cluster_generators(gens, 2);
  std::map<std::string, double> cap;
  for (const auto& g : out) {
    if (!g.is_candidate()) cap[g.technology] += g.capacity_mw;
  }
  CHECK(cap["coal"] == doctest::Approx(240.0));
  CHECK(cap["hydro"] == doctest::Approx(40.0));
  REQUIRE(out.size() == 4);  // two coal clusters, hydro alone, the candidate
  CHECK(out[0].id == "coal_c1");
  CHECK(out[0].capacity_mw == doctest::Approx(150.0));
  // Capacity-weighted mean cost.
  CHECK(out[0].gen_cost_per_mwh[0] == doctest::Approx((100 * 20 + 50 * 22) / 150.0));
  CHECK(out[1].id == "coal_c2");
  CHECK(out[1].gen_cost_per_mwh[0] == doctest::Approx((80 * 60 + 10 * 61) / 90.0));
  CHECK(out[2].id == "e");  // single-member cluster keeps its identity
  CHECK(out[3].id == "f");
  CHECK(validate_instance([&] {
          SystemInstance s;
          s.horizon_hours = 4;
          s.demand_mw = constant_series(4, 1);
          s.reserve_req_mw = constant_series(4, 0);
          s.generators = out;
          return s;
        }())
            .ok());

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = testing::random_instance(seed);
    const auto c = cluster_generators(s.generators, 1);
    double before = 0, after = 0;
    for (const auto& g : s.generators) before += g.capacity_mw;
    for (const auto& g : c) after += g.capacity_mw;
    CHECK(after == doctest::Approx(before));
  }
}

TEST_CASE("renewable mirrors") {
  auto wind1 = fixed_unit("w1", "wind", 30, 0);
  wind1.kind = GeneratorKind::renewable;
  auto wind2 = fixed_unit("w2", "wind", 10, 0);
  wind2.kind = GeneratorKind::renewable;
  const std::vector<GeneratorSpec> gens{fixed_unit("g", "gas", 50, 40), wind1, wind2};

  const auto plain = mirror_candidates(gens);
  REQUIRE(plain.size() == 2);
  CHECK(plain[0].id == "w1_cand");
  CHECK(plain[0].is_candidate());
  CHECK(plain[0].capacity_mw == 0.0);
  CHECK(plain[0].invest_limit_mw == 30.0);

  const auto limited = mirror_candidates(gens, {{"wind", 100.0}});
  CHECK(limited[0].invest_limit_mw == doctest::Approx(75.0));
  CHECK(limited[1].invest_limit_mw == doctest::Approx(25.0));
}

TEST_CASE("reserve requirement and presets") {
  Series d(3);
  d << 10, 20, 40;
  const auto r = derive_reserve_requirement(d, 0.15);
  CHECK(r[2] == doctest::Approx(6.0));
  CHECK_THROWS_AS(derive_reserve_requirement(d, -0.1), std::invalid_argument);

  const auto p = AssemblyOptions::full_system_defaults();
  CHECK(p.reserve_fraction == 0.15);
  REQUIRE(p.sdes_candidate);
  REQUIRE(p.ldes_candidate);
  CHECK(p.sdes_candidate->duration_h == 4.0);
  CHECK(p.sdes_candidate->rte == 0.85);
  CHECK(p.ldes_candidate->duration_h == 100.0);
  CHECK(p.ldes_candidate->rte == 0.425);
}

TEST_CASE("assembly appends storage candidates") {
  AssemblyOptions opts = AssemblyOptions::full_system_defaults();
  opts.reserve_fraction = 0.1;
  opts.ldes_candidate->id = "ldes_100h";  // toy_b already has an ldes_cand
  const auto s = assemble_instance(load_system(InputFiles::in_directory(kDataDir / "toy_b")), opts);
  const auto sets = classify_assets(s);
  CHECK(sets.storage_long_candidate.size() == 2);
  CHECK(sets.storage_short_candidate.size() == 1);
  CHECK(s.reserve_req_mw[0] == doctest::Approx(1.0));
  CHECK(validate_instance(s).ok());
}

TEST_CASE("snapshot round trip") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto s = testing::random_instance(seed);
    const auto text = snapshot_json(s);
    const auto back = instance_from_json(text);
    CHECK(snapshot_json(back) == text);
    CHECK(back.generators.size() == s.generators.size());
    CHECK((back.demand_mw.array() == s.demand_mw.array()).all());
  }
  CHECK_THROWS(instance_from_json("{\"not\": \"an instance\"}"));
}
