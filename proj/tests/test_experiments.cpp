#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "vepc/experiments.hpp"
#include "vepc/solve.hpp"

using namespace vepc;
using namespace vepc::testing;

namespace fs = std::filesystem;

namespace {

Scenario default_bundle() {
  Scenario s;
  s.topology = load_topology_file(data_path("topology_metro19.json"));
  s.apps = load_app_catalog_file(data_path("applications.json"));
  for (VnfId f : real_vnfs()) s.replica_limits[f] = 2;
  return s;
}

// base for sweep tests: 3 tiny flows so the enumeration engine is instant
Scenario sweep_base() {
  Scenario s = tiny_scenario(2.0);
  s.flows.clear();
  s.nas_table.rows = {{NasProcedure::Attach, {1, 500.0}},
                      {NasProcedure::DedicatedBearer, {0, 250.0}},
                      {NasProcedure::X2Handover, {0, 500.0}},
                      {NasProcedure::S1Handover, {0, 500.0}}};
  s.nas_table.no_nas_flows = 2;
  s.seed = 7;
  return s;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("default flow population matches the configured totals") {
  Scenario s = default_bundle();
  std::vector<TrafficFlow> flows = generate_flows(s);
  REQUIRE(flows.size() == 120);

  double total = 0;
  std::map<std::string, double> per_app;
  std::map<std::string, int> count;
  int uploads = 0;
  for (const TrafficFlow& f : flows) {
    total += f.demand_gbps;
    per_app[f.application] += f.demand_gbps;
    count[f.application] += 1;
    if (f.direction == Direction::Upload) ++uploads;
    CHECK(s.topology.node(f.source_tap).kind == NodeKind::Tap);
    CHECK(f.demand_gbps > 0);
  }
  CHECK(total == doctest::Approx(224.0).epsilon(1e-9));
  // per-application demand follows the traffic shares exactly
  for (const Application& a : s.apps.apps()) {
    CHECK(per_app[a.name] ==
          doctest::Approx(a.traffic_share * 224.0).epsilon(1e-9));
    CHECK(count[a.name] >= 1);
  }
  // roughly one upload per four downloads
  CHECK(uploads >= 20);
  CHECK(uploads <= 28);

  // ids dense, NAS ordering: attach, dedicated, x2, s1, then no-NAS
  for (std::size_t k = 0; k < flows.size(); ++k)
    CHECK(flows[k].id == static_cast<int>(k));
  int idx = 0;
  auto expect = [&](std::optional<NasProcedure> p, int n, double budget) {
    for (int k = 0; k < n; ++k, ++idx) {
      CHECK(flows[idx].nas_procedure == p);
      CHECK(flows[idx].control_latency_budget_ms == budget);
    }
  };
  expect(NasProcedure::Attach, 10, 500.0);
  expect(NasProcedure::DedicatedBearer, 45, 250.0);
  expect(NasProcedure::X2Handover, 5, 500.0);
  expect(NasProcedure::S1Handover, 10, 500.0);
  expect(std::nullopt, 50, 0.0);
}

TEST_CASE("flow generation rejects bad inputs") {
  Scenario s = default_bundle();
  CHECK_THROWS_AS(generate_flows(s.topology, s.apps, s.nas_table, 0.0, 0.2, 1),
                  ValidationError);
  NasFlowTable empty;
  empty.rows = {{NasProcedure::Attach, {0, 500.0}},
                {NasProcedure::DedicatedBearer, {0, 250.0}},
                {NasProcedure::X2Handover, {0, 500.0}},
                {NasProcedure::S1Handover, {0, 500.0}}};
  empty.no_nas_flows = 0;
  CHECK_THROWS_AS(generate_flows(s.topology, s.apps, empty, 224.0, 0.2, 1),
                  ValidationError);
}

TEST_CASE("flow generation is seed-deterministic") {
  Scenario s = default_bundle();
  std::vector<TrafficFlow> a = generate_flows(s);
  std::vector<TrafficFlow> b = generate_flows(s);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].source_tap == b[k].source_tap);
    CHECK(a[k].application == b[k].application);
    CHECK(a[k].direction == b[k].direction);
    CHECK(a[k].demand_gbps == b[k].demand_gbps);
  }
  Scenario other = s;
  other.seed = s.seed + 1;
  std::vector<TrafficFlow> c = generate_flows(other);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].source_tap != c[k].source_tap ||
        a[k].application != c[k].application)
      differs = true;
  CHECK(differs);
}

TEST_CASE("uniform replica sweep aggregates verified runs") {
  Scenario base = sweep_base();
  SweepResult result =
      sweep_vepc_replicas(base, {1, 2}, /*iterations=*/3, Engine::Exhaustive);
  CHECK(result.rows.size() == 6);
  REQUIRE(result.summaries.size() == 2);
  for (const SweepSummary& sum : result.summaries) {
    CHECK(sum.solved == 3);
    CHECK(sum.failed == 0);
    CHECK(sum.mean_objective > 0);
  }
  // seeds are base.seed + iteration and flows are re-sampled per iteration
  for (const SweepRow& row : result.rows) {
    CHECK(row.seed == base.seed + static_cast<std::uint64_t>(row.iteration));
    CHECK(row.verified);
    CHECK(row.status == SolveStatus::Optimal);
  }
  // more allowed replicas can never raise the optimum
  CHECK(result.summaries[1].mean_objective <=
        result.summaries[0].mean_objective + 1e-9);
}

TEST_CASE("per-function configs are applied") {
  Scenario base = sweep_base();
  std::vector<std::pair<std::string, std::map<VnfId, int>>> configs = {
      {"all=1",
       {{VnfId::MME, 1}, {VnfId::HSS, 1}, {VnfId::PCRF, 1},
        {VnfId::SGW, 1}, {VnfId::PGW, 1}}},
  };
  SweepResult r = sweep_vnf_replicas(base, configs, 2, Engine::Exhaustive);
  CHECK(r.rows.size() == 2);
  REQUIRE(r.summaries.size() == 1);
  CHECK(r.summaries[0].config == "all=1");
  CHECK(r.summaries[0].solved == 2);
}

TEST_CASE("emit_results writes the three artifacts") {
  Scenario base = sweep_base();
  SweepResult result =
      sweep_vepc_replicas(base, {1, 2}, 2, Engine::Exhaustive);
  fs::path dir = fs::temp_directory_path() / "vepc_sweep_test";
  fs::remove_all(dir);
  emit_results(result, dir.string());

  std::vector<std::string> rows = read_lines(dir / "sweep.csv");
  REQUIRE(rows.size() == 5);  // header + 4 rows
  CHECK(rows[0] == "config,iteration,seed,objective,status,wall_time_s");
  std::vector<std::string> summary = read_lines(dir / "summary.csv");
  REQUIRE(summary.size() == 3);
  CHECK(summary[0] == "config,solved,failed,mean_objective,stddev_objective");
  CHECK(summary[1].rfind("r=1,", 0) == 0);
  CHECK(summary[2].rfind("r=2,", 0) == 0);

  std::ifstream in(dir / "plotdata.json");
  nlohmann::json j;
  in >> j;
  CHECK(j["x"].size() == 2);
  CHECK(j["mean_bandwidth_gbps_link"].size() == 2);
  CHECK(j["stddev"].size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("sweep outputs are byte-identical across runs without timing") {
  Scenario base = sweep_base();
  fs::path d1 = fs::temp_directory_path() / "vepc_sweep_a";
  fs::path d2 = fs::temp_directory_path() / "vepc_sweep_b";
  fs::remove_all(d1);
  fs::remove_all(d2);
  emit_results(sweep_vepc_replicas(base, {1, 2}, 2, Engine::Exhaustive),
               d1.string(), /*include_timing=*/false);
  emit_results(sweep_vepc_replicas(base, {1, 2}, 2, Engine::Exhaustive),
               d2.string(), /*include_timing=*/false);
  for (const char* name : {"sweep.csv", "summary.csv", "plotdata.json"}) {
    std::vector<std::string> a = read_lines(d1 / name);
    std::vector<std::string> b = read_lines(d2 / name);
    CHECK(a == b);
  }
  CHECK(read_lines(d1 / "sweep.csv")[0] ==
        "config,iteration,seed,objective,status");
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("empty sweep emits headers only") {
  SweepResult empty;
  fs::path dir = fs::temp_directory_path() / "vepc_sweep_empty";
  fs::remove_all(dir);
  emit_results(empty, dir.string());
  CHECK(read_lines(dir / "sweep.csv").size() == 1);
  CHECK(read_lines(dir / "summary.csv").size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("parallel sweep matches the serial result") {
  Scenario base = sweep_base();
  SweepResult serial =
      sweep_vepc_replicas(base, {1, 2}, 3, Engine::Exhaustive, /*jobs=*/1);
  SweepResult parallel =
      sweep_vepc_replicas(base, {1, 2}, 3, Engine::Exhaustive, /*jobs=*/4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t k = 0; k < serial.rows.size(); ++k) {
    CHECK(serial.rows[k].config == parallel.rows[k].config);
    CHECK(serial.rows[k].objective ==
          doctest::Approx(parallel.rows[k].objective));
    CHECK(serial.rows[k].status == parallel.rows[k].status);
  }
}

TEST_CASE("engine names round-trip") {
  for (Engine e : {Engine::External, Engine::Exhaustive, Engine::Greedy})
    CHECK(engine_from_string(to_string(e)) == e);
  CHECK_THROWS_AS(engine_from_string("simplex"), ValidationError);
}
